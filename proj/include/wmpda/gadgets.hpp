#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "wmpda/core.hpp"
#include "wmpda/regset.hpp"

namespace wmpda {

struct Instance {
    Mpda mpda;
    Configuration source;
    RegSet target;
};

/// The two-state automaton recognizing a^n b^n c^n.
Instance anbncn();

/// One stack, X(i) -> X(i+1) X(i+1) and X(n) -> ε; shortest paths from X1 to Xn
/// have length 2^n - 2.
Instance expo(std::size_t n);

/// Stateless, two stacks: X -> (X A | B), X -> (ε|ε), A -> (ε|ε), B -> (ε|ε).
Instance nonreg_forward();

struct CounterSystem {
    std::size_t counters = 0;
    std::vector<std::size_t> source;
    std::vector<std::size_t> target; // all zero unless given
    struct Transfer {
        std::size_t from = 0;
        std::vector<std::size_t> add;
    };
    std::vector<Transfer> rules;
};

/// Format: `counters: k`, `source: n1 .. nk`, optional `target: n1 .. nk`,
/// then `rule i -> n1 .. nk` lines (counters numbered from 1).
CounterSystem parse_counter_system(std::string_view text);

/// One singleton alphabet per counter; rule i pops counter i and pushes the
/// given amounts.
Instance comm_free_counters(const CounterSystem& spec);

struct Grammar {
    std::vector<std::string> terminals;
    std::vector<std::string> nonterminals; // the first one is the start symbol
    struct Production {
        std::string lhs;
        std::string terminal;
        std::vector<std::string> rest;
    };
    std::vector<Production> productions;
};

/// `terminals: a b`, `nonterminals: S T`, then productions `S -> a S T | b`.
/// Throws `bad_grammar` unless every production is in Greibach normal form.
Grammar parse_grammar(std::string_view text);

/// Three stacks: the two grammars derive leftmost on stacks 1 and 2 and write
/// tagged terminals `a.1`, `a.2` on stack 3. The target asks for empty stacks 1
/// and 2 and stack 3 in (a.1 a.2)*, i.e. a common word.
Instance cfg_intersection(const Grammar& g1, const Grammar& g2);

/// `anbncn`, `expo:N`, `nonreg-forward`, `commfree:FILE`, `cfg:FILE1:FILE2`.
Instance generate(const std::string& family);

} // namespace wmpda
