#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>

#include "wmpda/core.hpp"
#include "wmpda/regset.hpp"

namespace wmpda {

struct OracleBudget {
    std::size_t max_config_size = 16;
    std::size_t max_explored = 1'000'000;
    std::optional<std::size_t> max_depth;
};

enum class OracleStatus { reachable, unreachable_within_budget, unreachable_complete };

struct OracleVerdict {
    OracleStatus status = OracleStatus::unreachable_within_budget;
    std::optional<Witness> witness; // set iff reachable
    std::size_t explored = 0;

    [[nodiscard]] bool reachable() const { return status == OracleStatus::reachable; }
};

/// `reachable`, `unreachable-complete` or `unknown-budget`.
std::string status_name(OracleStatus status);

using ConfigurationPredicate = std::function<bool(const Configuration&)>;

/// Breadth-first search from `source`; the witness is a shortest one, ties
/// broken by rule declaration order. The verdict is complete only if no
/// configuration was cut by a bound.
OracleVerdict bfs_reach(const Mpda& m, const Configuration& source, const ConfigurationPredicate& target,
                        const OracleBudget& budget);
OracleVerdict bfs_reach(const Mpda& m, const Configuration& source, const Configuration& target,
                        const OracleBudget& budget);

struct PathLength {
    std::optional<std::size_t> length;
    OracleStatus status = OracleStatus::unreachable_within_budget;
};

PathLength shortest_path_length(const Mpda& m, const Configuration& source, const Configuration& target,
                                const OracleBudget& budget);

/// Every occurrence of the start configuration has a descendant that is popped
/// by some step.
bool is_fully_active(const Mpda& m, const Witness& w);

/// Removes irrelevant occurrences of w.start by pumping inside each block of
/// consecutive irrelevant occurrences on repeated automaton state sets, until no
/// repetition is left. The result stays in L. Throws `source_not_in_set`.
Configuration shrink_source(const Mpda& m, const Witness& w, const RegSet& L);

} // namespace wmpda
