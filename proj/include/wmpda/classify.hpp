#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "wmpda/core.hpp"

namespace wmpda {

struct WeaknessResult {
    bool weak = false;
    /// When weak: every state, greatest first; every rule goes from a state to
    /// itself or to a later one.
    std::vector<StateId> order;
    /// When not weak: a cycle q0 -> q1 -> ... -> q0 of state-changing rules (q0 listed once).
    std::vector<StateId> cycle;
};

WeaknessResult is_weak(const Mpda& m);

/// State-preserving rule sequences erasing a lone symbol, keyed by (state, symbol).
using CancelTable = std::map<std::pair<StateId, SymbolId>, std::vector<std::size_t>>;

struct StrongNormResult {
    bool strongly_normed = false;
    CancelTable cancel;                                 // filled on success
    std::optional<std::pair<StateId, SymbolId>> failing; // first non-erasable pair
};

StrongNormResult is_strongly_normed(const Mpda& m);

struct NormResult {
    bool normed = false;
    std::optional<std::pair<StateId, SymbolId>> failing;
};

/// Weak MPDAs only; throws `not_weak` otherwise. Pairs are checked from the
/// least state of the weak order upwards, symbols in declaration order.
NormResult is_normed(const Mpda& m);

} // namespace wmpda
