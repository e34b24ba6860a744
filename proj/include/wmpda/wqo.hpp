#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "wmpda/core.hpp"
#include "wmpda/flagged.hpp"
#include "wmpda/regset.hpp"

namespace wmpda {

/// A configuration whose flagged occurrences are "colored": occurrences that
/// are guessed not to contribute to the target.
using ColoredConfiguration = FlaggedConfiguration;

/// r1 is obtained from r2 by deleting colored occurrences.
bool colored_leq(const ColoredConfiguration& r1, const ColoredConfiguration& r2);

struct WqoOptions {
    /// Let a state-preserving rule with an empty right-hand side fire on an
    /// uncolored occurrence. Off by default: such an occurrence has no
    /// descendants and so could not have been relevant.
    bool allow_empty_uncolored = false;
    /// Cap on explored tree nodes; 0 means unbounded.
    std::size_t max_nodes = 0;
};

struct ColoredStep {
    std::size_t rule = 0;
    ColoredConfiguration result;
};

/// Colored transitions out of `r`, discarding results with `uncolored_bound`
/// or more uncolored occurrences. Rule declaration order, then coloring subsets
/// in increasing bitmask order.
std::vector<ColoredStep> colored_successors(const Mpda& m, const ColoredConfiguration& r, std::size_t uncolored_bound,
                                            const WqoOptions& options = {});

/// All colorings of `s` that leave fewer than `uncolored_bound` occurrences uncolored.
std::vector<ColoredConfiguration> colorings(const Configuration& s, std::size_t uncolored_bound);

struct WqoStats {
    std::size_t colorings = 0;
    std::size_t nodes = 0;
    std::size_t dominated = 0;
    std::size_t duplicates = 0;
    std::size_t hopeless = 0;
};

struct WqoVerdict {
    bool reachable = false;
    /// False only when `max_nodes` cut the exploration short.
    bool complete = true;
    WqoStats stats;
};

/// Reachability s ~> t on weak MPDAs by exploring colored configurations and
/// cutting every path at its first domination pair. Throws `not_weak`.
WqoVerdict decide_wqo(const Mpda& m, const Configuration& s, const Configuration& t, const WqoOptions& options = {});

struct RegToOneVerdict {
    bool reachable = false;
    bool complete = true;
    std::optional<Configuration> source;
    std::size_t src_cap = 0;
    std::size_t sources_tried = 0;
};

/// (size(t) + |Q|) * (N + 1) + N * k, N the largest automaton in L.
std::size_t default_src_cap(const Mpda& m, const RegSet& L, std::size_t target_size);

RegToOneVerdict decide_reg_to_one(const Mpda& m, const RegSet& L, const Configuration& t,
                                  std::optional<std::size_t> src_cap = std::nullopt, const WqoOptions& options = {});

} // namespace wmpda
