#include "wmpda/wqo.hpp"

#include <algorithm>
#include <unordered_set>

#include "wmpda/classify.hpp"

namespace wmpda {

namespace {

bool word_leq(const FlaggedWord& a, const FlaggedWord& b)
{
    std::size_t j = 0;
    for (const auto& x : a) {
        while (j < b.size() && b[j] != x) {
            if (!b[j].flag)
                return false;
            ++j;
        }
        if (j == b.size())
            return false;
        ++j;
    }
    for (; j < b.size(); ++j) {
        if (!b[j].flag)
            return false;
    }
    return true;
}

constexpr long unreachable_state = -1;

/// Longest number of state changes from each state to `goal`, or -1.
std::vector<long> changes_to(const Mpda& m, StateId goal)
{
    const std::size_t n = m.state_count();
    std::vector<long> best(n, unreachable_state);
    best[goal.value] = 0;
    // The state graph is acyclic; n rounds of relaxation settle it.
    for (std::size_t round = 0; round < n; ++round) {
        bool changed = false;
        for (const auto& r : m.rules()) {
            if (!r.changes_state() || best[r.to.value] == unreachable_state)
                continue;
            if (best[r.to.value] + 1 > best[r.from.value]) {
                best[r.from.value] = best[r.to.value] + 1;
                changed = true;
            }
        }
        if (!changed)
            break;
    }
    return best;
}

} // namespace

bool colored_leq(const ColoredConfiguration& r1, const ColoredConfiguration& r2)
{
    if (r1.state != r2.state || r1.stacks.size() != r2.stacks.size())
        return false;
    for (std::size_t i = 0; i < r1.stacks.size(); ++i) {
        if (!word_leq(r1.stacks[i], r2.stacks[i]))
            return false;
    }
    return true;
}

std::vector<ColoredStep> colored_successors(const Mpda& m, const ColoredConfiguration& r, std::size_t uncolored_bound,
                                            const WqoOptions& options)
{
    std::vector<ColoredStep> out;
    const std::size_t uncolored = r.unflagged_count();
    for (std::size_t i = 0; i < r.stacks.size(); ++i) {
        if (r.stacks[i].empty())
            continue;
        const FlaggedSymbol top = r.stacks[i].front();
        for (auto idx : m.rules_for(r.state, top.symbol)) {
            const auto& rule = m.rule(idx);
            const std::size_t rhs = rule.rhs_size();
            auto build = [&](std::uint64_t color_mask) {
                ColoredConfiguration next{rule.to, {}};
                std::size_t bit = 0;
                for (std::size_t j = 0; j < r.stacks.size(); ++j) {
                    FlaggedWord w;
                    for (auto x : rule.push[j])
                        w.push_back(FlaggedSymbol{x, ((color_mask >> bit++) & 1) != 0});
                    w.insert(w.end(), r.stacks[j].begin() + (j == i ? 1 : 0), r.stacks[j].end());
                    next.stacks.push_back(std::move(w));
                }
                return next;
            };
            if (rhs >= 63)
                throw error("right-hand side too long for colored exploration");
            const std::uint64_t full = (1ULL << rhs) - 1;
            if (top.flag) {
                // Colored left-hand side: everything pushed is colored. An
                // occurrence popped at a state change is always relevant.
                if (!rule.changes_state())
                    out.push_back(ColoredStep{idx, build(full)});
                continue;
            }
            for (std::uint64_t mask = 0; mask <= full; ++mask) {
                const std::size_t kept = rhs - static_cast<std::size_t>(__builtin_popcountll(mask));
                if (!rule.changes_state() && kept == 0 && !(rhs == 0 && options.allow_empty_uncolored))
                    continue;
                if (uncolored - 1 + kept >= uncolored_bound)
                    continue;
                out.push_back(ColoredStep{idx, build(mask)});
            }
        }
    }
    return out;
}

std::vector<ColoredConfiguration> colorings(const Configuration& s, std::size_t uncolored_bound)
{
    std::vector<std::pair<std::size_t, std::size_t>> positions;
    for (std::size_t i = 0; i < s.stacks.size(); ++i) {
        for (std::size_t d = 0; d < s.stacks[i].size(); ++d)
            positions.emplace_back(i, d);
    }
    std::vector<ColoredConfiguration> out;
    if (uncolored_bound == 0)
        return out;
    // Uncolored subsets by increasing size, then lexicographically.
    const std::size_t limit = std::min(positions.size(), uncolored_bound - 1);
    for (std::size_t keep = 0; keep <= limit; ++keep) {
        std::vector<std::size_t> pick(keep);
        for (std::size_t k = 0; k < keep; ++k)
            pick[k] = k;
        while (true) {
            ColoredConfiguration c = with_flag(s, true);
            for (auto p : pick)
                c.stacks[positions[p].first][positions[p].second].flag = false;
            out.push_back(std::move(c));
            std::size_t k = keep;
            while (k > 0 && pick[k - 1] == positions.size() - keep + k - 1)
                --k;
            if (k == 0)
                break;
            ++pick[k - 1];
            for (std::size_t j = k; j < keep; ++j)
                pick[j] = pick[j - 1] + 1;
        }
    }
    return out;
}

WqoVerdict decide_wqo(const Mpda& m, const Configuration& s, const Configuration& t, const WqoOptions& options)
{
    if (!is_weak(m).weak)
        throw not_weak("the colored-configuration decider requires a weak automaton");

    WqoVerdict verdict;
    if (s == t) {
        verdict.reachable = true;
        return verdict;
    }
    const std::size_t target_size = t.size();
    const std::size_t bound = m.state_count() + target_size;
    const ColoredConfiguration target = with_flag(t, false);
    const auto changes = changes_to(m, t.state);

    auto hopeless = [&](const ColoredConfiguration& c) {
        const long budget = changes[c.state.value];
        if (budget == unreachable_state)
            return true;
        if (!options.allow_empty_uncolored && c.unflagged_count() > target_size + static_cast<std::size_t>(budget))
            return true;
        return false;
    };

    std::unordered_set<ColoredConfiguration, FlaggedConfigurationHash> visited;
    struct Frame {
        ColoredConfiguration config;
        std::vector<ColoredStep> children;
        std::size_t next = 0;
    };

    for (auto& start : colorings(s, bound)) {
        ++verdict.stats.colorings;
        if (hopeless(start)) {
            ++verdict.stats.hopeless;
            continue;
        }
        if (!visited.insert(start).second) {
            ++verdict.stats.duplicates;
            continue;
        }
        std::vector<Frame> path;
        path.push_back(Frame{start, colored_successors(m, start, bound, options), 0});
        ++verdict.stats.nodes;
        while (!path.empty()) {
            Frame& top = path.back();
            if (top.next == top.children.size()) {
                path.pop_back();
                continue;
            }
            ColoredConfiguration child = std::move(top.children[top.next++].result);
            if (child == target) {
                verdict.reachable = true;
                verdict.stats.nodes = visited.size();
                return verdict;
            }
            if (hopeless(child)) {
                ++verdict.stats.hopeless;
                continue;
            }
            if (visited.contains(child)) {
                ++verdict.stats.duplicates;
                continue;
            }
            bool dominated = false;
            for (const auto& f : path) {
                if (colored_leq(f.config, child)) {
                    dominated = true;
                    break;
                }
            }
            if (dominated) {
                ++verdict.stats.dominated;
                continue;
            }
            visited.insert(child);
            ++verdict.stats.nodes;
            if (options.max_nodes != 0 && visited.size() > options.max_nodes) {
                verdict.complete = false;
                return verdict;
            }
            auto next_children = colored_successors(m, child, bound, options);
            path.push_back(Frame{std::move(child), std::move(next_children), 0});
        }
    }
    return verdict;
}

std::size_t default_src_cap(const Mpda& m, const RegSet& L, std::size_t target_size)
{
    std::size_t largest = 0;
    for (const auto& [q, comp] : L.components()) {
        for (const auto& nfa : comp.nfas)
            largest = std::max<std::size_t>(largest, nfa.state_count());
    }
    return (target_size + m.state_count()) * (largest + 1) + largest * m.stack_count();
}

RegToOneVerdict decide_reg_to_one(const Mpda& m, const RegSet& L, const Configuration& t,
                                  std::optional<std::size_t> src_cap, const WqoOptions& options)
{
    if (!is_weak(m).weak)
        throw not_weak("the colored-configuration decider requires a weak automaton");
    RegToOneVerdict verdict;
    verdict.src_cap = src_cap.value_or(default_src_cap(m, L, t.size()));
    if (member(L, t)) {
        verdict.reachable = true;
        verdict.source = t;
        return verdict;
    }
    for (const auto& s : enumerate_members(m, L, verdict.src_cap)) {
        ++verdict.sources_tried;
        auto v = decide_wqo(m, s, t, options);
        if (v.reachable) {
            verdict.reachable = true;
            verdict.source = s;
            return verdict;
        }
        verdict.complete = verdict.complete && v.complete;
    }
    return verdict;
}

} // namespace wmpda
