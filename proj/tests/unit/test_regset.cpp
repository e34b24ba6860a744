#include <doctest.h>

#include <algorithm>

#include "fixture_io.hpp"
#include "random_instances.hpp"
#include "wmpda/regset.hpp"

using namespace wmpda;
using namespace wmpda::testing;

TEST_CASE("membership in the example set")
{
    auto m = fixture_mpda("reglang.mpda");
    auto L = parse_regset(m, fixture("reglang.regset"));
    auto in = [&](const char* text) { return member(L, parse_configuration(m, text)); };
    CHECK(in("q : X | A"));
    CHECK(in("q : X X X | A B B"));
    CHECK_FALSE(in("q : X | B"));
    CHECK(in("q : | A"));
    CHECK(in("q : | B"));
    CHECK(in("q : X X | A B A"));
    CHECK_FALSE(in("q : X X | A B"));
    CHECK_FALSE(in("q : X |"));
}

TEST_CASE("boolean operations agree with membership")
{
    Rng rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        auto m = random_weak_mpda(rng, {});
        auto A = random_regset(rng, m);
        auto B = random_regset(rng, m);
        auto U = unite(A, B);
        auto I = intersect(A, B);
        auto C = complement(m, A);
        auto T = trim(A);
        for (const auto& c : enumerate_configurations(m, 3)) {
            const bool a = member(A, c);
            const bool b = member(B, c);
            CHECK(member(U, c) == (a || b));
            CHECK(member(I, c) == (a && b));
            CHECK(member(C, c) == !a);
            CHECK(member(T, c) == a);
        }
        CHECK(is_subset(m, I, A));
        CHECK(is_subset(m, A, U));
        CHECK(is_empty(intersect(A, C)));
        CHECK(is_subset(m, universal_regset(m), unite(A, C)));
        if (!enumerate_members(m, A, 3).empty())
            CHECK_FALSE(is_empty(A));
    }
}

TEST_CASE("pre-image agrees with one-step successors")
{
    Rng rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        auto m = random_weak_mpda(rng, {});
        auto M = random_regset(rng, m);
        auto P = pre_image(m, M);
        for (const auto& c : enumerate_configurations(m, 3)) {
            bool expected = false;
            for (const auto& [idx, next] : successors(m, c))
                expected = expected || member(M, next);
            CHECK(member(P, c) == expected);
        }
    }
}

TEST_CASE("enumeration is shortlex ordered and complete")
{
    Rng rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        auto m = random_weak_mpda(rng, {});
        auto A = random_regset(rng, m);
        auto all = enumerate_configurations(m, 3);
        CHECK(std::is_sorted(all.begin(), all.end(), ShortlexLess{}));
        std::vector<Configuration> expected;
        for (const auto& c : all) {
            if (member(A, c))
                expected.push_back(c);
        }
        CHECK(enumerate_members(m, A, 3) == expected);
    }
}

TEST_CASE("singletons and universal sets")
{
    auto m = fixture_mpda("anbncn.mpda");
    auto c = parse_configuration(m, "q1 : X D | C");
    auto S = singleton(m, c);
    auto members = enumerate_members(m, S, 5);
    REQUIRE(members.size() == 1);
    CHECK(members.front() == c);
    CHECK(is_empty(empty_regset(m)));
    auto q2 = *m.find_state("q2");
    auto U2 = universal_regset(m, q2);
    CHECK(member(U2, parse_configuration(m, "q2 : B B | C")));
    CHECK_FALSE(member(U2, parse_configuration(m, "q1 : |")));
}

TEST_CASE("complement budget")
{
    auto m = fixture_mpda("reglang.mpda");
    auto L = parse_regset(m, fixture("reglang.regset"));
    ComplementBudget tiny;
    tiny.max_dfa_states = 1;
    CHECK_THROWS_AS(complement(m, L, tiny), too_large);
    CHECK_NOTHROW(complement(m, L));
}
