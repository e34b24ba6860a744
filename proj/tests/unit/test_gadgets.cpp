#include <doctest.h>

#include "fixture_io.hpp"
#include "wmpda/classify.hpp"
#include "wmpda/gadgets.hpp"
#include "wmpda/oracle.hpp"
#include "wmpda/wqo.hpp"

using namespace wmpda;
using namespace wmpda::testing;

namespace {

Configuration nonreg_config(const Mpda& m, bool with_x, std::size_t k, std::size_t l)
{
    std::string text = "q :";
    if (with_x)
        text += " X";
    for (std::size_t i = 0; i < k; ++i)
        text += " A";
    text += " |";
    for (std::size_t i = 0; i < l; ++i)
        text += " B";
    return parse_configuration(m, text);
}

} // namespace

TEST_CASE("the counting automaton")
{
    auto inst = anbncn();
    CHECK(inst.mpda == fixture_mpda("anbncn.mpda"));
    CHECK(serialize_mpda(inst.mpda) == serialize_mpda(fixture_mpda("anbncn.mpda")));
    CHECK(inst.source == parse_configuration(inst.mpda, "q1 : X D |"));
    CHECK(member(inst.target, parse_configuration(inst.mpda, "q2 : |")));
    CHECK(is_weak(inst.mpda).weak);
    CHECK_FALSE(is_strongly_normed(inst.mpda).strongly_normed);
}

TEST_CASE("the doubling family")
{
    for (std::size_t n : {2, 3, 4}) {
        auto inst = expo(n);
        CHECK(is_strongly_normed(inst.mpda).strongly_normed);
        auto target = enumerate_members(inst.mpda, inst.target, 1);
        REQUIRE(target.size() == 1);
        auto len = shortest_path_length(inst.mpda, inst.source, target.front(), {});
        REQUIRE(len.length);
        CHECK(*len.length == (std::size_t{1} << n) - 2);
    }
    CHECK(expo(3).mpda == fixture_mpda("expo3.mpda"));
    CHECK_THROWS_AS(expo(0), error);
}

TEST_CASE("the forward-set gadget")
{
    auto inst = nonreg_forward();
    auto& m = inst.mpda;
    CHECK(m == fixture_mpda("nonreg_forward.mpda"));
    CHECK(is_strongly_normed(m).strongly_normed);
    for (std::size_t k = 0; k <= 5; ++k) {
        for (std::size_t l = 0; k + l <= 5; ++l) {
            CAPTURE(k);
            CAPTURE(l);
            auto with_x = bfs_reach(m, inst.source, nonreg_config(m, true, k, l), {});
            CHECK(with_x.reachable() == (k >= l));
            CHECK(bfs_reach(m, inst.source, nonreg_config(m, false, k, l), {}).reachable());
        }
    }
}

TEST_CASE("counter systems")
{
    auto spec = parse_counter_system(fixture("counters.spec"));
    CHECK(spec.counters == 3);
    auto inst = comm_free_counters(spec);
    CHECK(inst.mpda.state_count() == 1);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(inst.mpda.alphabet(i).size() == 1);
    auto target = enumerate_members(inst.mpda, inst.target, 4);
    REQUIRE(target.size() == 1);
    CHECK(bfs_reach(inst.mpda, inst.source, target.front(), {}).reachable());
    CHECK_THROWS_AS(parse_counter_system("counters: 2\nsource: 1\n"), parse_error);
    CHECK_THROWS_AS(parse_counter_system("source: 1\n"), parse_error);
}

TEST_CASE("grammars")
{
    auto g = parse_grammar(fixture("g_a_star.grammar"));
    CHECK(g.nonterminals == std::vector<std::string>{"S"});
    CHECK(g.productions.size() == 2);
    CHECK_THROWS_AS(parse_grammar("terminals: a\nnonterminals: S\nS -> S a\n"), bad_grammar);
    CHECK_THROWS_AS(parse_grammar("terminals: a\nnonterminals: S\nS -> b\n"), bad_grammar);
    CHECK_THROWS_AS(parse_grammar("terminals: a\nnonterminals: S\nS -> a T\n"), bad_grammar);
}

TEST_CASE("grammar intersection")
{
    auto star = parse_grammar(fixture("g_a_star.grammar"));
    auto one = parse_grammar(fixture("g_a.grammar"));
    auto b = parse_grammar(fixture("g_b.grammar"));

    auto inst = cfg_intersection(star, one);
    auto& m = inst.mpda;
    CHECK(m.stack_count() == 3);
    CHECK(m.state_count() == 1);
    CHECK_FALSE(is_normed(m).normed);
    CHECK(parse_mpda(serialize_mpda(m)) == m);
    auto v = bfs_reach(m, inst.source, [&](const Configuration& c) { return member(inst.target, c); }, {});
    REQUIRE(v.reachable());
    auto final = replay(m, *v.witness);
    CHECK(format_configuration(m, final) == "q : | | a.1 a.2");
    auto t = parse_configuration(m, "q : | | a.1 a.2");
    CHECK(decide_wqo(m, inst.source, t).reachable);

    auto disjoint = cfg_intersection(one, b);
    OracleBudget budget;
    budget.max_config_size = 6;
    auto none = bfs_reach(disjoint.mpda, disjoint.source,
                          [&](const Configuration& c) { return member(disjoint.target, c); }, budget);
    CHECK(none.status == OracleStatus::unreachable_complete);
}

TEST_CASE("family names")
{
    CHECK(generate("anbncn").mpda == anbncn().mpda);
    CHECK(generate("expo:4").mpda == expo(4).mpda);
    CHECK(generate("nonreg-forward").mpda == nonreg_forward().mpda);
    CHECK(generate("commfree:" + fixture_path("counters.spec")).mpda.stack_count() == 3);
    CHECK(generate("cfg:" + fixture_path("g_a.grammar") + ":" + fixture_path("g_b.grammar")).mpda.stack_count() == 3);
    CHECK_THROWS_AS(generate("nope"), error);
    CHECK_THROWS_AS(generate("expo:x"), error);
}
