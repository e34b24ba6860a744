#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wmpda/errors.hpp"

namespace wmpda {

struct StateId {
    std::uint32_t value = 0;
    friend auto operator<=>(const StateId&, const StateId&) = default;
};

struct SymbolId {
    std::uint32_t value = 0;
    friend auto operator<=>(const SymbolId&, const SymbolId&) = default;
};

/// A stack word, leftmost element = top of stack.
using Word = std::vector<SymbolId>;

struct Rule {
    StateId from;
    SymbolId pop;
    StateId to;
    std::vector<Word> push; // one word per stack, top-first

    [[nodiscard]] std::size_t rhs_size() const;
    [[nodiscard]] bool changes_state() const { return from != to; }
    friend bool operator==(const Rule&, const Rule&) = default;
};

/// A multi-pushdown automaton. Symbols and states are interned; alphabets are
/// pairwise disjoint, so every symbol knows its stack.
class Mpda {
public:
    explicit Mpda(std::size_t stack_count);

    StateId add_state(const std::string& name);
    SymbolId add_symbol(std::size_t stack, const std::string& name);
    /// Validates the rule against declared states and alphabets; returns its index.
    std::size_t add_rule(Rule rule);

    [[nodiscard]] std::size_t stack_count() const { return _stack_count; }
    [[nodiscard]] std::size_t state_count() const { return _state_names.size(); }
    [[nodiscard]] std::size_t symbol_count() const { return _symbol_names.size(); }

    [[nodiscard]] const std::string& state_name(StateId q) const { return _state_names.at(q.value); }
    [[nodiscard]] const std::string& symbol_name(SymbolId x) const { return _symbol_names.at(x.value); }
    [[nodiscard]] std::size_t stack_of(SymbolId x) const { return _symbol_stack.at(x.value); }

    [[nodiscard]] std::optional<StateId> find_state(std::string_view name) const;
    [[nodiscard]] std::optional<SymbolId> find_symbol(std::string_view name) const;

    [[nodiscard]] std::vector<StateId> states() const;
    [[nodiscard]] const std::vector<SymbolId>& alphabet(std::size_t stack) const { return _alphabets.at(stack); }
    [[nodiscard]] const std::vector<Rule>& rules() const { return _rules; }
    [[nodiscard]] const Rule& rule(std::size_t index) const { return _rules.at(index); }

    /// Indices of rules with the given source state and popped symbol, in declaration order.
    [[nodiscard]] const std::vector<std::size_t>& rules_for(StateId q, SymbolId x) const;

    [[nodiscard]] std::size_t max_rhs_size() const;

    friend bool operator==(const Mpda&, const Mpda&);

private:
    std::size_t _stack_count;
    std::vector<std::string> _state_names;
    std::vector<std::string> _symbol_names;
    std::vector<std::size_t> _symbol_stack;
    std::vector<std::vector<SymbolId>> _alphabets;
    std::vector<Rule> _rules;
    std::unordered_map<std::string, StateId> _state_index;
    std::unordered_map<std::string, SymbolId> _symbol_index;
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::size_t>> _by_lhs;
};

struct Configuration {
    StateId state;
    std::vector<Word> stacks;

    [[nodiscard]] std::size_t size() const;
    [[nodiscard]] bool stacks_empty() const { return size() == 0; }

    friend auto operator<=>(const Configuration&, const Configuration&) = default;
};

/// Orders configurations by state, then stack by stack with shorter words first.
struct ShortlexLess {
    bool operator()(const Configuration& a, const Configuration& b) const;
};

struct ConfigurationHash {
    std::size_t operator()(const Configuration& c) const;
};

/// The configuration with all stacks empty.
Configuration empty_configuration(const Mpda& m, StateId q);
/// The configuration holding a lone `x` on its stack.
Configuration unit_configuration(const Mpda& m, StateId q, SymbolId x);

struct Witness {
    Configuration start;
    std::vector<std::size_t> steps; // rule indices into Mpda::rules()

    friend bool operator==(const Witness&, const Witness&) = default;
};

std::optional<Configuration> try_step(const Mpda& m, const Configuration& c, const Rule& r);
/// Throws `not_enabled` when the rule does not fire at `c`.
Configuration step(const Mpda& m, const Configuration& c, const Rule& r);

/// Enabled rules with their results, in rule declaration order.
std::vector<std::pair<std::size_t, Configuration>> successors(const Mpda& m, const Configuration& c);

Configuration replay(const Mpda& m, const Witness& w);
/// Every configuration visited by the witness, start included.
std::vector<Configuration> replay_all(const Mpda& m, const Witness& w);

// ---------------------------------------------------------------------------
// Symbol occurrences along a witness.

struct OccurrenceId {
    std::size_t config_index = 0;
    std::size_t stack = 0;
    std::size_t depth = 0;

    friend auto operator<=>(const OccurrenceId&, const OccurrenceId&) = default;
};

class DescendantForest {
public:
    DescendantForest(const Mpda& m, const Witness& w);

    [[nodiscard]] std::size_t node_count() const { return _nodes.size(); }
    [[nodiscard]] const std::vector<OccurrenceId>& nodes() const { return _nodes; }
    [[nodiscard]] std::optional<OccurrenceId> parent(const OccurrenceId& o) const;
    [[nodiscard]] std::vector<OccurrenceId> children(const OccurrenceId& o) const;
    [[nodiscard]] std::vector<OccurrenceId> roots() const;
    /// All parent->child pairs, ordered.
    [[nodiscard]] std::vector<std::pair<OccurrenceId, OccurrenceId>> edges() const;
    /// The occurrence popped by step `t`, i.e. (t, stack of the pop, 0).
    [[nodiscard]] OccurrenceId involved(std::size_t step) const;
    [[nodiscard]] const std::vector<Configuration>& configurations() const { return _configs; }
    [[nodiscard]] SymbolId symbol(const OccurrenceId& o) const;

    [[nodiscard]] std::size_t index_of(const OccurrenceId& o) const;
    [[nodiscard]] std::optional<std::size_t> parent_index(std::size_t node) const;

private:
    std::vector<Configuration> _configs;
    std::vector<std::size_t> _involved_stack;
    std::vector<std::vector<std::size_t>> _offsets; // per config, per stack: first flat index
    std::vector<OccurrenceId> _nodes;
    std::vector<std::optional<std::size_t>> _parents;
};

DescendantForest descendant_forest(const Mpda& m, const Witness& w);

/// Occurrences with a descendant in the final configuration or involved in a
/// state-changing step.
std::set<OccurrenceId> relevant_occurrences(const Mpda& m, const Witness& w);

// ---------------------------------------------------------------------------
// Embedding orders.

/// Subsequence embedding by greedy leftmost matching.
bool higman_leq(const Word& u, const Word& v);

/// Same state; per stack both empty, or equal bottoms with higman_leq on the rest.
bool bf_higman_leq(const Configuration& c1, const Configuration& c2);

} // namespace wmpda

template <>
struct std::hash<wmpda::StateId> {
    std::size_t operator()(wmpda::StateId q) const noexcept { return std::hash<std::uint32_t>{}(q.value); }
};

template <>
struct std::hash<wmpda::SymbolId> {
    std::size_t operator()(wmpda::SymbolId x) const noexcept { return std::hash<std::uint32_t>{}(x.value); }
};
