#include <doctest.h>

#include <algorithm>

#include "fixture_io.hpp"
#include "random_instances.hpp"
#include "wmpda/oracle.hpp"
#include "wmpda/wqo.hpp"

using namespace wmpda;
using namespace wmpda::testing;

namespace {

Mpda split_rule()
{
    return parse_mpda("mpda {\n  states: q p\n  stacks: 2\n  alphabet 1: X A D\n  alphabet 2: B\n"
                      "  rule q X -> q : A | B\n  rule q D -> p : |\n}\n");
}

bool contains(const std::vector<ColoredStep>& steps, const ColoredConfiguration& c)
{
    return std::any_of(steps.begin(), steps.end(), [&](const ColoredStep& s) { return s.result == c; });
}

} // namespace

TEST_CASE("colored order")
{
    auto m = split_rule();
    auto r = [&](const char* text) { return parse_flagged_configuration(m, text); };
    CHECK(colored_leq(r("q : X |"), r("q : ~A X |")));
    CHECK_FALSE(colored_leq(r("q : A X |"), r("q : ~A X |")));
    CHECK_FALSE(colored_leq(r("q : X |"), r("q : A X |")));
    CHECK_FALSE(colored_leq(r("q : X |"), r("p : X |")));
    CHECK(colored_leq(r("q : X | ~B"), r("q : ~A X ~D | ~B ~B")));

    Rng rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        auto c = random_coloring(rng, random_configuration(rng, m, 5));
        CHECK(colored_leq(c, c));
    }
}

TEST_CASE("colored successors")
{
    auto m = split_rule();
    auto r = [&](const char* text) { return parse_flagged_configuration(m, text); };
    auto steps = colored_successors(m, r("q : X |"), 10);
    CHECK(steps.size() == 3);
    CHECK(contains(steps, r("q : A | B")));
    CHECK(contains(steps, r("q : ~A | B")));
    CHECK(contains(steps, r("q : A | ~B")));
    CHECK_FALSE(contains(steps, r("q : ~A | ~B")));

    auto colored = colored_successors(m, r("q : ~X |"), 10);
    REQUIRE(colored.size() == 1);
    CHECK(colored.front().result == r("q : ~A | ~B"));

    auto change = colored_successors(m, r("q : D |"), 10);
    REQUIRE(change.size() == 1);
    CHECK(change.front().result == r("p : |"));

    // The uncolored bound discards results.
    CHECK(colored_successors(m, r("q : X |"), 2).size() == 2);
}

TEST_CASE("empty right-hand sides")
{
    auto m = parse_mpda("mpda {\n  states: q\n  stacks: 1\n  alphabet 1: A\n  rule q A -> q :\n}\n");
    auto r = parse_flagged_configuration(m, "q : A");
    CHECK(colored_successors(m, r, 5).empty());
    WqoOptions vacuous;
    vacuous.allow_empty_uncolored = true;
    CHECK(colored_successors(m, r, 5, vacuous).size() == 1);
    CHECK(colored_successors(m, parse_flagged_configuration(m, "q : ~A"), 5).size() == 1);
}

TEST_CASE("counting example")
{
    auto m = fixture_mpda("anbncn.mpda");
    auto s = parse_configuration(m, "q1 : X D |");
    CHECK(decide_wqo(m, s, parse_configuration(m, "q2 : |")).reachable);
    CHECK_FALSE(decide_wqo(m, s, parse_configuration(m, "q2 : X |")).reachable);
    CHECK(decide_wqo(m, s, s).reachable);
    CHECK(decide_wqo(m, parse_configuration(m, "q1 : X D |"), parse_configuration(m, "q2 : | C")).reachable);
    CHECK_FALSE(decide_wqo(m, parse_configuration(m, "q1 : D | C"), parse_configuration(m, "q2 : | C C")).reachable);

    auto cycle = parse_mpda("mpda {\n  states: p q\n  stacks: 1\n  alphabet 1: A\n"
                            "  rule p A -> q : A\n  rule q A -> p : A\n}\n");
    CHECK_THROWS_AS(decide_wqo(cycle, parse_configuration(cycle, "p : A"), parse_configuration(cycle, "q : A")),
                    not_weak);
}

TEST_CASE("agreement with the oracle on size-nonincreasing automata")
{
    Rng rng(37);
    OracleBudget budget;
    budget.max_config_size = 8;
    for (int trial = 0; trial < 100; ++trial) {
        auto m = random_size_nonincreasing(rng, {});
        auto s = random_configuration(rng, m, 3);
        auto t = random_configuration(rng, m, 3);
        auto oracle = bfs_reach(m, s, t, budget);
        REQUIRE(oracle.status != OracleStatus::unreachable_within_budget);
        CHECK(decide_wqo(m, s, t).reachable == oracle.reachable());
    }
}

TEST_CASE("agreement with the oracle on general weak automata")
{
    Rng rng(41);
    OracleBudget budget;
    budget.max_config_size = 10;
    budget.max_explored = 50000;
    for (int trial = 0; trial < 100; ++trial) {
        auto m = random_weak_mpda(rng, {});
        auto s = random_configuration(rng, m, 3);
        auto t = random_configuration(rng, m, 3);
        auto oracle = bfs_reach(m, s, t, budget);
        auto v = decide_wqo(m, s, t);
        if (oracle.reachable())
            CHECK(v.reachable);
        if (oracle.status == OracleStatus::unreachable_complete)
            CHECK_FALSE(v.reachable);
    }
}

TEST_CASE("source sets")
{
    auto m = fixture_mpda("a_star_x.mpda");
    auto L = parse_regset(m, fixture("a_star_x.regset"));
    auto t = parse_configuration(m, "q : X");
    auto v = decide_reg_to_one(m, L, t);
    CHECK(v.reachable);
    REQUIRE(v.source);
    CHECK(*v.source == t);
    CHECK_FALSE(decide_reg_to_one(m, empty_regset(m), t).reachable);
    CHECK_FALSE(decide_reg_to_one(m, L, parse_configuration(m, "q : A")).reachable);
}

TEST_CASE("long colored sequences contain domination pairs")
{
    Rng rng(43);
    auto m = split_rule();
    for (int trial = 0; trial < 3; ++trial) {
        std::vector<ColoredConfiguration> seq;
        bool found = false;
        for (int i = 0; i < 10000 && !found; ++i) {
            auto c = random_coloring(rng, random_configuration(rng, m, StateId{0}, uniform(rng, 0, 6)));
            if (c.unflagged_count() > 2)
                continue;
            for (const auto& prev : seq) {
                if (colored_leq(prev, c)) {
                    found = true;
                    break;
                }
            }
            seq.push_back(std::move(c));
        }
        CHECK(found);
    }
}
