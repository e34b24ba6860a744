#include <doctest.h>

#include "fixture_io.hpp"
#include "random_instances.hpp"
#include "wmpda/oracle.hpp"

using namespace wmpda;
using namespace wmpda::testing;

TEST_CASE("shortest paths in the counting example")
{
    auto m = fixture_mpda("anbncn.mpda");
    auto s = parse_configuration(m, "q1 : X D |");
    auto t = parse_configuration(m, "q2 : |");
    auto len = shortest_path_length(m, s, t, {});
    CHECK(len.status == OracleStatus::reachable);
    REQUIRE(len.length);
    CHECK(*len.length == 2);

    auto run = parse_witness(m, fixture("anbncn_run.witness"));
    CHECK(run.steps.size() == 5);
    CHECK(replay(m, run) == t);
    CHECK(is_fully_active(m, run));
}

TEST_CASE("shortest paths in the doubling example")
{
    auto m = fixture_mpda("expo3.mpda");
    auto q = *m.find_state("q");
    auto s = unit_configuration(m, q, *m.find_symbol("X1"));
    auto v = bfs_reach(m, s, empty_configuration(m, q), {});
    REQUIRE(v.reachable());
    CHECK(v.witness->steps.size() == 7);
    CHECK(replay(m, *v.witness) == empty_configuration(m, q));
}

TEST_CASE("budgets and completeness")
{
    auto m = fixture_mpda("expo3.mpda");
    auto q = *m.find_state("q");
    auto s = unit_configuration(m, q, *m.find_symbol("X1"));
    OracleBudget small;
    small.max_config_size = 2;
    auto v = bfs_reach(m, s, empty_configuration(m, q), small);
    CHECK(v.status == OracleStatus::unreachable_within_budget);
    CHECK(status_name(v.status) == "unknown-budget");

    auto t = unit_configuration(m, q, *m.find_symbol("X2"));
    auto none = bfs_reach(m, t, s, {});
    CHECK(none.status == OracleStatus::unreachable_complete);
    CHECK(status_name(none.status) == "unreachable-complete");

    OracleBudget shallow;
    shallow.max_depth = 3;
    CHECK_FALSE(bfs_reach(m, s, empty_configuration(m, q), shallow).reachable());
}

TEST_CASE("witnesses are valid and shortest")
{
    Rng rng(17);
    OracleBudget budget;
    budget.max_config_size = 8;
    budget.max_explored = 5000;
    for (int trial = 0; trial < 100; ++trial) {
        auto m = random_weak_mpda(rng, {});
        auto s = random_configuration(rng, m, 3);
        auto t = random_configuration(rng, m, 2);
        auto v = bfs_reach(m, s, t, budget);
        if (!v.reachable())
            continue;
        CHECK(replay(m, *v.witness) == t);
        // No strictly shorter witness exists.
        if (!v.witness->steps.empty()) {
            auto shallow = budget;
            shallow.max_depth = v.witness->steps.size() - 1;
            CHECK_FALSE(bfs_reach(m, s, t, shallow).reachable());
        }
    }
}

TEST_CASE("full activity")
{
    auto m = fixture_mpda("occurrences.mpda");
    auto w = parse_witness(m, fixture("occurrences.witness"));
    CHECK_FALSE(is_fully_active(m, w));

    auto a = fixture_mpda("a_star_x.mpda");
    auto q = *a.find_state("q");
    Witness pops{parse_configuration(a, "q : A A"), {0, 0}};
    CHECK(is_fully_active(a, pops));
    Witness partial{parse_configuration(a, "q : A A"), {0}};
    CHECK_FALSE(is_fully_active(a, partial));
    CHECK(is_fully_active(a, Witness{empty_configuration(a, q), {}}));
}

TEST_CASE("shrinking a source")
{
    auto m = fixture_mpda("a_star_x.mpda");
    auto L = parse_regset(m, fixture("a_star_x.regset"));
    Witness w{parse_configuration(m, "q : A A A X"), {0, 0, 0}};
    auto shrunk = shrink_source(m, w, L);
    CHECK(shrunk == parse_configuration(m, "q : X"));
    CHECK(member(L, shrunk));
    CHECK_THROWS_AS(shrink_source(m, Witness{parse_configuration(m, "q : A"), {0}}, L), source_not_in_set);

    // Relevant occurrences stay.
    Witness keep{parse_configuration(m, "q : A A X"), {}};
    CHECK(shrink_source(m, keep, L) == keep.start);
}
