#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "wmpda/core.hpp"
#include "wmpda/oracle.hpp"
#include "wmpda/regset.hpp"

namespace wmpda {

enum class SeparatorCondition { contains_target, disjoint_from_source, backward_closed };

std::string condition_name(SeparatorCondition c);

struct SeparatorCheck {
    bool contains_target = false;      // K ⊆ M
    bool disjoint_from_source = false; // L ∩ M = ∅
    bool backward_closed = false;      // pre(M) ⊆ M
    std::optional<SeparatorCondition> failed; // first violated condition
    std::optional<Configuration> witness;     // of size at most 4, when one exists

    [[nodiscard]] bool ok() const { return !failed; }
};

/// Checks the three certificate conditions in order and stops at the first failure.
SeparatorCheck check_separator(const Mpda& m, const RegSet& L, const RegSet& K, const RegSet& M);

struct SeparatorCertificate {
    RegSet sep;
    SeparatorCheck checks;
};

struct FixpointResult {
    RegSet set;
    bool converged = false;
    std::size_t rounds = 0;
};

/// M0 = K, M(i+1) = M(i) ∪ pre(M(i)), until M(i+1) ⊆ M(i) or `max_rounds`.
/// A complement blowing its budget, or an iterate with more than `max_states`
/// automaton states in total, ends the iteration unconverged.
FixpointResult backward_fixpoint(const Mpda& m, const RegSet& K, std::size_t max_rounds,
                                 std::size_t max_states = 2000);

struct SeparatorBudget {
    std::size_t fixpoint_rounds = 8;
    std::size_t fixpoint_max_states = 2000;
    /// Rounds of the positive side; round i searches sources of size <= i.
    std::size_t positive_rounds = 6;
    std::size_t explored_per_source = 20'000;
    /// Largest per-stack automaton size tried by the candidate enumeration.
    std::size_t max_automaton_states = 3;
    /// Total candidate separators checked.
    std::size_t max_candidates = 200'000;
    /// Both sides are sound on any automaton; only termination needs strong
    /// normedness. Turning this off lets non-normed inputs through.
    bool require_strongly_normed = true;
};

enum class SeparatorStatus { reachable, unreachable, unknown };

struct SeparatorVerdict {
    SeparatorStatus status = SeparatorStatus::unknown;
    std::optional<Witness> witness;
    std::optional<SeparatorCertificate> certificate;
    std::size_t candidates_checked = 0;
    std::size_t positive_rounds = 0;
};

/// One round of the positive side: sources in L of size <= round, BFS toward K.
std::optional<Witness> separator_positive_round(const Mpda& m, const RegSet& L, const RegSet& K, std::size_t round,
                                                const SeparatorBudget& budget);

/// Alternates positive rounds with negative steps (the backward fixpoint
/// first, then enumerated candidate separators). Throws `precondition_failed`
/// unless `m` is strongly normed or the budget waives the check.
SeparatorVerdict decide_separator(const Mpda& m, const RegSet& L, const RegSet& K, const SeparatorBudget& budget = {});

} // namespace wmpda
