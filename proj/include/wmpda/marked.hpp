#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wmpda/classify.hpp"
#include "wmpda/core.hpp"
#include "wmpda/flagged.hpp"
#include "wmpda/regset.hpp"

namespace wmpda {

/// A configuration whose flagged occurrences are marked.
using MarkedConfiguration = FlaggedConfiguration;
using MarkedWord = FlaggedWord;

/// How a marked subword was cut out of a word: the positions kept (bit d for
/// position d, top first) and the length of the marked prefix. Positions not
/// kept are the colored ones.
struct Selection {
    std::uint64_t kept = 0;
    std::size_t prefix = 0;
    friend bool operator==(const Selection&, const Selection&) = default;
};

struct MarkedSubword {
    MarkedWord word;
    Selection selection;
};

/// Every marked subword of `w`, each with one selection producing it, in
/// deduplicated lexicographic order of the produced words.
std::vector<MarkedSubword> mk_subwords(const Word& w);

/// The marked subwords of `w` obtainable with exactly the given colored positions.
std::vector<MarkedWord> marked_subwords_for_coloring(const Word& w, const std::vector<std::size_t>& colored);

/// Applies a selection to `w`.
MarkedWord apply_selection(const Word& w, const Selection& s);

/// Whether `s` is a legal marking-procedure selection for a word of length `n`.
bool selection_valid(std::size_t n, const Selection& s);

struct MarkedSubtransition {
    std::size_t rule = 0;
    bool lhs_marked = false;
    std::vector<MarkedWord> pushes;
    std::vector<Selection> selections;

    [[nodiscard]] std::size_t rhs_size() const;
};

/// Marked subtransitions of one rule with the given marking of its left-hand
/// side, per-stack choices varying fastest on the last stack.
std::vector<MarkedSubtransition> mk_subtransitions(const Mpda& m, std::size_t rule, bool lhs_marked);
/// All marked subtransitions of `m`, rules in declaration order, unmarked left-hand side first.
std::vector<MarkedSubtransition> mk_subtransitions(const Mpda& m);

/// Memoizes marked subtransitions per (rule, left-hand side marking).
class SubtransitionCache {
public:
    explicit SubtransitionCache(const Mpda& m) : _m(m) {}
    const std::vector<MarkedSubtransition>& get(std::size_t rule, bool lhs_marked);

private:
    const Mpda& _m;
    std::map<std::pair<std::size_t, bool>, std::vector<MarkedSubtransition>> _cache;
};

/// Fires a marked subtransition; nullopt if its left-hand side is not on top.
std::optional<MarkedConfiguration> apply_subtransition(const Mpda& m, const MarkedConfiguration& c,
                                                       const MarkedSubtransition& st);

struct MarkedStep {
    MarkedSubtransition sub;
    MarkedConfiguration result;
};

struct MarkedPath {
    MarkedConfiguration start;
    std::vector<Selection> start_selection; // per stack, cut out of the concrete source
    std::vector<MarkedStep> steps;
};

/// All marked subconfigurations of `c` of size at most `max_size`, one
/// selection each, in discovery order.
std::vector<std::pair<MarkedConfiguration, std::vector<Selection>>> marked_subconfigurations(const Configuration& c,
                                                                                              std::size_t max_size);

struct MarkedVerdict {
    bool reachable = false;
    std::optional<MarkedPath> path;
    std::size_t bound = 0;
    std::size_t explored = 0;
    /// Index into the source list of the multi-source search that produced `path`.
    std::size_t source_index = 0;
};

/// Throws `precondition_failed` (or `not_weak`) unless `m` is weak and strongly normed.
void require_marked_preconditions(const Mpda& m);

/// Exhaustive search over marked configurations of size at most
/// size(t) + |Q|, from every marked subconfiguration of `s`.
MarkedVerdict decide_marked(const Mpda& m, const Configuration& s, const Configuration& t);
/// Same, with several concrete sources searched at once.
MarkedVerdict decide_marked(const Mpda& m, const std::vector<Configuration>& sources, const Configuration& t);

/// Size never decreases across state-preserving steps and drops by at most one
/// at a state change. Throws `error` otherwise.
void check_marked_path(const Mpda& m, const MarkedPath& path);

/// A concrete witness from `s` following `path`, canceling colored occurrences
/// as they surface. Throws `reconstruction_failed` if the result does not end in
/// the path's final configuration.
Witness reconstruct(const Mpda& m, const Configuration& s, const MarkedPath& path, const CancelTable& cancel);

struct RegRegCaps {
    std::optional<std::size_t> src_cap;
    std::optional<std::size_t> tgt_cap;
};

/// (N_K + 1)^2 * (|Q| + max_rhs), N_K the largest automaton in K.
std::size_t default_tgt_cap(const Mpda& m, const RegSet& K);

struct RegRegVerdict {
    bool reachable = false;
    std::optional<Witness> witness;
    std::size_t src_cap = 0; // for the last target tried
    std::size_t tgt_cap = 0;
    std::size_t targets_tried = 0;
};

RegRegVerdict decide_regreg(const Mpda& m, const RegSet& L, const RegSet& K, const RegRegCaps& caps = {});

/// Marked path in the witness line format, marked symbols prefixed with '~'.
std::string serialize_marked_path(const Mpda& m, const MarkedPath& path);

} // namespace wmpda
