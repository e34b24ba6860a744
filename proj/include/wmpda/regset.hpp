#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "wmpda/core.hpp"

namespace wmpda {

/// Sorted, duplicate-free set of NFA state indices.
using StateSet = std::vector<std::uint32_t>;
using AcceptTuple = std::vector<std::uint32_t>;

struct NfaEdge {
    std::uint32_t from = 0;
    SymbolId symbol;
    std::uint32_t to = 0;

    friend auto operator<=>(const NfaEdge&, const NfaEdge&) = default;
};

/// A finite automaton over one stack alphabet. It has no final states of its
/// own: acceptance is decided by the tuples of the enclosing component.
class StackNfa {
public:
    StackNfa() = default;
    explicit StackNfa(std::uint32_t state_count) : _state_count(state_count) {}

    std::uint32_t add_state() { return _state_count++; }
    void add_initial(std::uint32_t s);
    void add_edge(std::uint32_t from, SymbolId symbol, std::uint32_t to);

    [[nodiscard]] std::uint32_t state_count() const { return _state_count; }
    [[nodiscard]] const StateSet& initials() const { return _initials; }
    [[nodiscard]] const std::vector<NfaEdge>& edges() const { return _edges; }

    [[nodiscard]] StateSet post(const StateSet& from, SymbolId symbol) const;
    /// States reached from `from` after reading `w` top-first.
    [[nodiscard]] StateSet read(const StateSet& from, const Word& w) const;
    [[nodiscard]] StateSet read(const Word& w) const { return read(_initials, w); }
    /// States reachable from the initials by some word.
    [[nodiscard]] std::vector<bool> accessible() const;

    void set_initials(StateSet initials);

    friend bool operator==(const StackNfa&, const StackNfa&) = default;

private:
    std::uint32_t _state_count = 0;
    StateSet _initials;
    std::vector<NfaEdge> _edges; // sorted
};

struct RegComponent {
    std::vector<StackNfa> nfas; // one per stack
    std::set<AcceptTuple> accept;

    friend bool operator==(const RegComponent&, const RegComponent&) = default;
};

/// A recognizable set of configurations: per control state, a tuple of stack
/// automata and a set of accepting state tuples. States without a component
/// contribute nothing.
class RegSet {
public:
    explicit RegSet(std::size_t stack_count) : _stack_count(stack_count) {}

    [[nodiscard]] std::size_t stack_count() const { return _stack_count; }
    [[nodiscard]] const std::map<StateId, RegComponent>& components() const { return _components; }
    [[nodiscard]] const RegComponent* component(StateId q) const;

    /// Validates arity and tuple ranges; replaces any existing component for `q`.
    void set_component(StateId q, RegComponent comp);
    void erase_component(StateId q) { _components.erase(q); }

    friend bool operator==(const RegSet&, const RegSet&) = default;

private:
    std::size_t _stack_count;
    std::map<StateId, RegComponent> _components;
};

struct ComplementBudget {
    std::size_t max_dfa_states = 4096;
    std::size_t max_accept_tuples = std::size_t{1} << 20;
};

RegSet empty_regset(const Mpda& m);
/// All configurations of the given state (or of every state).
RegSet universal_regset(const Mpda& m);
RegSet universal_regset(const Mpda& m, StateId q);
RegSet singleton(const Mpda& m, const Configuration& c);

bool member(const RegSet& L, const Configuration& c);
RegSet unite(const RegSet& L, const RegSet& M);
RegSet intersect(const RegSet& L, const RegSet& M);
RegSet complement(const Mpda& m, const RegSet& L, const ComplementBudget& budget = {});
bool is_empty(const RegSet& L);
bool is_subset(const Mpda& m, const RegSet& L, const RegSet& M, const ComplementBudget& budget = {});

/// Drops NFA states that are not accessible or cannot reach a state used by an
/// accepting tuple, tuples that became dead, and empty components. Membership
/// is unchanged.
RegSet trim(const RegSet& L);

/// Members of size at most `max_size`, ordered by ShortlexLess.
std::vector<Configuration> enumerate_members(const Mpda& m, const RegSet& L, std::size_t max_size);

/// Every configuration of size at most `max_size`, ordered by ShortlexLess.
std::vector<Configuration> enumerate_configurations(const Mpda& m, std::size_t max_size);

/// Configurations with a one-step successor in M.
RegSet pre_image(const Mpda& m, const RegSet& M);

RegSet parse_regset(const Mpda& m, std::string_view text);
std::string serialize_regset(const Mpda& m, const RegSet& L);

} // namespace wmpda
