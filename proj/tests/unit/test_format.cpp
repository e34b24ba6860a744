#include <doctest.h>

#include "fixture_io.hpp"
#include "random_instances.hpp"
#include "wmpda/format.hpp"
#include "wmpda/regset.hpp"

using namespace wmpda;
using namespace wmpda::testing;

namespace {

std::size_t error_line(const std::string& text)
{
    try {
        parse_mpda(text);
    } catch (const parse_error& e) {
        return e.line();
    }
    return 0;
}

} // namespace

TEST_CASE("example automaton file")
{
    auto m = fixture_mpda("anbncn.mpda");
    CHECK(m.state_count() == 2);
    CHECK(m.stack_count() == 2);
    CHECK(m.rules().size() == 5);
    CHECK(m.alphabet(0).size() == 3);
    // The labels on arrows are dropped.
    CHECK(format_rule(m, m.rule(0)) == "rule q1 X -> q1 : X B | C");
    CHECK(format_rule(m, m.rule(1)) == "rule q1 X -> q1 : |");
    CHECK(parse_mpda(serialize_mpda(m)) == m);
}

TEST_CASE("round trip on every fixture")
{
    for (const char* name : {"anbncn.mpda", "expo3.mpda", "nonreg_forward.mpda", "occurrences.mpda", "reglang.mpda",
                             "a_star_x.mpda"}) {
        CAPTURE(name);
        auto m = fixture_mpda(name);
        auto text = serialize_mpda(m);
        CHECK(parse_mpda(text) == m);
        CHECK(serialize_mpda(parse_mpda(text)) == text);
    }
    auto m = fixture_mpda("reglang.mpda");
    auto L = parse_regset(m, fixture("reglang.regset"));
    CHECK(parse_regset(m, serialize_regset(m, L)) == L);
}

TEST_CASE("round trip on random instances")
{
    Rng rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        auto m = random_weak_mpda(rng, {});
        CHECK(parse_mpda(serialize_mpda(m)) == m);
        auto L = random_regset(rng, m);
        CHECK(parse_regset(m, serialize_regset(m, L)) == L);
        auto c = random_configuration(rng, m, 4);
        CHECK(parse_configuration(m, format_configuration(m, c)) == c);
    }
}

TEST_CASE("strict parsing reports lines")
{
    const std::string head = "mpda {\n  states: q\n  stacks: 2\n  alphabet 1: X\n  alphabet 2: C\n";
    CHECK(error_line(head + "  rule q Y -> q : |\n}\n") == 6);
    CHECK(error_line(head + "  rule q X -> p : |\n}\n") == 6);
    CHECK(error_line(head + "  rule q X -> q : C |\n}\n") == 6);
    CHECK(error_line(head + "  rule q X -> q : X\n}\n") == 6);
    CHECK(error_line(head + "  rule q X -> q : | | \n}\n") == 6);
    CHECK(error_line("mpda {\n  states: q\n  stacks: 1\n  alphabet 1:\n}\n") != 0);
    CHECK(error_line("mpda {\n  states: q q\n") == 2);
    CHECK_THROWS_AS(parse_mpda(""), parse_error);
    CHECK_THROWS_AS(parse_mpda(head), parse_error);
}

TEST_CASE("identifiers")
{
    CHECK(is_valid_identifier("X1"));
    CHECK(is_valid_identifier("a.1"));
    CHECK(is_valid_identifier("S@2"));
    CHECK_FALSE(is_valid_identifier(""));
    CHECK_FALSE(is_valid_identifier("~A"));
    CHECK_FALSE(is_valid_identifier("a|b"));
    CHECK_FALSE(is_valid_identifier("a b"));
    CHECK_FALSE(is_valid_identifier("->"));
}

TEST_CASE("configurations and witnesses")
{
    auto m = fixture_mpda("anbncn.mpda");
    auto c = parse_configuration(m, "q1 : X D |");
    CHECK(c.size() == 2);
    CHECK(format_configuration(m, c) == "q1 : X D |");
    CHECK_THROWS_AS(parse_configuration(m, "q1 : C |"), parse_error);
    CHECK_THROWS_AS(parse_configuration(m, "q3 : |"), parse_error);
    CHECK_THROWS_AS(parse_configuration(m, "q1 : X"), parse_error);

    auto w = parse_witness(m, fixture("anbncn_run.witness"));
    CHECK(serialize_witness(m, w) == fixture("anbncn_run.witness"));
    CHECK_THROWS_AS(parse_witness(m, "q1 : X D |\nrule q1 X -> q2 : |\n"), parse_error);

    auto f = parse_flagged_configuration(m, "q1 : ~X D | ~C");
    CHECK(f.flagged_count() == 2);
    CHECK(format_flagged_configuration(m, f) == "q1 : ~X D | ~C");
}

TEST_CASE("regset format")
{
    auto m = fixture_mpda("reglang.mpda");
    auto L = parse_regset(m, fixture("reglang.regset"));
    CHECK(member(L, parse_configuration(m, "q : X | A B")));
    CHECK_THROWS_AS(parse_regset(m, "regset relaxed {\n}\n"), parse_error);
    CHECK_THROWS_AS(parse_regset(m, "regset {\n  state q {\n    nfa 1 { states: s ; initial: t }\n  }\n}\n"),
                    parse_error);
}
