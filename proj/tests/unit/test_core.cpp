#include <doctest.h>

#include <algorithm>

#include "fixture_io.hpp"
#include "random_instances.hpp"
#include "wmpda/core.hpp"
#include "wmpda/format.hpp"
#include "wmpda/gadgets.hpp"

using namespace wmpda;
using namespace wmpda::testing;

namespace {

const Rule& rule_named(const Mpda& m, const std::string& text)
{
    for (const auto& r : m.rules()) {
        if (format_rule(m, r) == text)
            return r;
    }
    throw error("no rule " + text);
}

/// Exhaustive embedding search, independent of the greedy matcher.
bool embeds(const Word& u, std::size_t i, const Word& v, std::size_t j)
{
    if (i == u.size())
        return true;
    for (std::size_t k = j; k < v.size(); ++k) {
        if (v[k] == u[i] && embeds(u, i + 1, v, k + 1))
            return true;
    }
    return false;
}

} // namespace

TEST_CASE("step on the example automaton")
{
    auto m = fixture_mpda("anbncn.mpda");
    auto c = parse_configuration(m, "q1 : X D |");
    auto next = step(m, c, rule_named(m, "rule q1 X -> q1 : X B | C"));
    CHECK(format_configuration(m, next) == "q1 : X B D | C");

    auto d = parse_configuration(m, "q1 : D |");
    CHECK(format_configuration(m, step(m, d, rule_named(m, "rule q1 D -> q2 : |"))) == "q2 : |");

    auto empty = parse_configuration(m, "q2 : |");
    for (const auto& r : m.rules())
        CHECK_THROWS_AS(step(m, empty, r), not_enabled);
    CHECK_THROWS_AS(step(m, c, rule_named(m, "rule q2 C -> q2 : |")), not_enabled);
}

TEST_CASE("successors follow rule order")
{
    auto m = fixture_mpda("anbncn.mpda");
    auto succ = successors(m, parse_configuration(m, "q1 : X D |"));
    REQUIRE(succ.size() == 2);
    CHECK(succ[0].first == 0);
    CHECK(format_configuration(m, succ[0].second) == "q1 : X B D | C");
    CHECK(format_configuration(m, succ[1].second) == "q1 : D |");
    CHECK(successors(m, parse_configuration(m, "q2 : |")).empty());

    auto e = expo(2);
    auto s2 = successors(e.mpda, e.source);
    REQUIRE(s2.size() == 1);
    CHECK(format_configuration(e.mpda, s2[0].second) == "q : X2 X2");
}

TEST_CASE("size changes by rhs minus one")
{
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        auto m = random_weak_mpda(rng, {});
        auto c = random_configuration(rng, m, 4);
        for (const auto& [idx, next] : successors(m, c))
            CHECK(next.size() == c.size() - 1 + m.rule(idx).rhs_size());
        const auto succ = successors(m, c);
        for (std::size_t i = 0; i < m.rules().size(); ++i) {
            auto r = try_step(m, c, m.rule(i));
            bool listed = std::any_of(succ.begin(), succ.end(), [&](const auto& p) { return p.first == i; });
            CHECK(r.has_value() == listed);
        }
    }
}

TEST_CASE("replay")
{
    auto m = fixture_mpda("anbncn.mpda");
    auto w = parse_witness(m, fixture("anbncn_run.witness"));
    CHECK(w.steps.size() == 5);
    CHECK(format_configuration(m, replay(m, w)) == "q2 : |");
    CHECK(replay(m, Witness{w.start, {}}) == w.start);

    Witness bad{w.start, {2}};
    try {
        replay(m, bad);
        FAIL("expected invalid_witness");
    } catch (const invalid_witness& e) {
        CHECK(e.index() == 0);
    }
}

TEST_CASE("descendant forest of the two-step run")
{
    auto m = fixture_mpda("occurrences.mpda");
    auto w = parse_witness(m, fixture("occurrences.witness"));
    DescendantForest f(m, w);
    REQUIRE(f.node_count() == 14);
    // Occurrences numbered 1..14, configuration by configuration, stack by stack, top-down.
    auto num = [&](const OccurrenceId& o) { return f.index_of(o) + 1; };
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& [p, c] : f.edges())
        edges.emplace_back(num(p), num(c));
    std::sort(edges.begin(), edges.end());
    std::vector<std::pair<std::size_t, std::size_t>> expected{{1, 4},  {1, 5},  {1, 7},  {2, 6},   {3, 8}, {4, 10},
                                                              {5, 11}, {6, 12}, {7, 9},  {7, 13}, {8, 14}};
    CHECK(edges == expected);
    CHECK(f.roots().size() == 3);
    CHECK(m.symbol_name(f.symbol(f.involved(1))) == "D");

    auto rel = relevant_occurrences(m, w);
    CHECK(rel.size() == 14);
}

TEST_CASE("forest corner cases")
{
    auto m = fixture_mpda("a_star_x.mpda");
    auto start = parse_configuration(m, "q : A A X");
    DescendantForest idle(m, Witness{start, {}});
    CHECK(idle.node_count() == 3);
    CHECK(idle.roots().size() == 3);
    CHECK(idle.edges().empty());

    Witness w{start, {0, 0}};
    auto rel = relevant_occurrences(m, w);
    CHECK_FALSE(rel.contains(OccurrenceId{0, 0, 0}));
    CHECK_FALSE(rel.contains(OccurrenceId{0, 0, 1}));
    CHECK(rel.contains(OccurrenceId{0, 0, 2}));

    Witness single{parse_configuration(m, "q : A"), {0}};
    DescendantForest one(m, single);
    CHECK(one.node_count() == 1);
    CHECK(one.children(OccurrenceId{0, 0, 0}).empty());
    CHECK(relevant_occurrences(m, single).empty());
}

TEST_CASE("relevance is closed under ancestors")
{
    Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        auto m = random_weak_mpda(rng, {});
        Witness w{random_configuration(rng, m, 3), {}};
        Configuration cur = w.start;
        for (int k = 0; k < 6; ++k) {
            auto succ = successors(m, cur);
            if (succ.empty())
                break;
            auto& pick = succ[uniform(rng, 0, succ.size() - 1)];
            w.steps.push_back(pick.first);
            cur = pick.second;
        }
        DescendantForest f(m, w);
        std::size_t total = 0;
        for (const auto& c : replay_all(m, w))
            total += c.size();
        CHECK(f.node_count() == total);
        CHECK(f.roots().size() == w.start.size());
        auto rel = relevant_occurrences(m, w);
        for (const auto& o : rel) {
            if (auto p = f.parent(o))
                CHECK(rel.contains(*p));
        }
    }
}

TEST_CASE("higman orders")
{
    auto m = fixture_mpda("reglang.mpda");
    auto A = *m.find_symbol("A");
    auto B = *m.find_symbol("B");
    CHECK(higman_leq({A, B}, {A, A, B}));
    CHECK(higman_leq({}, {B, A}));
    CHECK_FALSE(higman_leq({A, A}, {A}));

    auto n = fixture_mpda("nonreg_forward.mpda");
    auto c = [&](const char* s) { return parse_configuration(n, s); };
    CHECK(bf_higman_leq(c("q : X | B"), c("q : A X | B")));
    CHECK_FALSE(bf_higman_leq(c("q : X | B"), c("q : X A | B")));
    CHECK_FALSE(bf_higman_leq(c("q : |"), c("q : A |")));

    // Greedy matching against exhaustive search, all words of length <= 6 over {A, B}.
    std::vector<Word> words{{}};
    for (std::size_t len = 1; len <= 6; ++len) {
        std::vector<Word> more;
        for (const auto& w : words) {
            if (w.size() == len - 1) {
                for (auto x : {A, B}) {
                    Word v = w;
                    v.push_back(x);
                    more.push_back(v);
                }
            }
        }
        words.insert(words.end(), more.begin(), more.end());
    }
    Rng rng(3);
    for (int trial = 0; trial < 3000; ++trial) {
        const auto& u = words[uniform(rng, 0, words.size() - 1)];
        const auto& v = words[uniform(rng, 0, words.size() - 1)];
        CHECK(higman_leq(u, v) == embeds(u, 0, v, 0));
        CHECK(higman_leq(u, u));
        if (higman_leq(u, v) && higman_leq(v, u))
            CHECK(u == v);
    }
}

TEST_CASE("model validation")
{
    Mpda m(2);
    auto q = m.add_state("q");
    auto X = m.add_symbol(0, "X");
    auto C = m.add_symbol(1, "C");
    CHECK_THROWS_AS(m.add_state("q"), error);
    CHECK_THROWS_AS(m.add_symbol(0, "C"), error);
    CHECK_THROWS_AS(m.add_rule(Rule{q, X, q, {{C}, {}}}), error);
    CHECK_THROWS_AS(m.add_rule(Rule{q, X, q, {{}}}), error);
    m.add_rule(Rule{q, X, q, {{X}, {C}}});
    CHECK_THROWS_AS(m.add_rule(Rule{q, X, q, {{X}, {C}}}), error);
}
