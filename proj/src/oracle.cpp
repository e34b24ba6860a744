#include "wmpda/oracle.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace wmpda {

std::string status_name(OracleStatus status)
{
    switch (status) {
    case OracleStatus::reachable:
        return "reachable";
    case OracleStatus::unreachable_complete:
        return "unreachable-complete";
    case OracleStatus::unreachable_within_budget:
        return "unknown-budget";
    }
    return "unknown-budget";
}

OracleVerdict bfs_reach(const Mpda& m, const Configuration& source, const ConfigurationPredicate& target,
                        const OracleBudget& budget)
{
    OracleVerdict verdict;
    if (target(source)) {
        verdict.status = OracleStatus::reachable;
        verdict.witness = Witness{source, {}};
        verdict.explored = 1;
        return verdict;
    }

    struct Back {
        const Configuration* parent;
        std::size_t rule;
        std::size_t depth;
    };
    std::unordered_map<Configuration, Back, ConfigurationHash> seen;
    std::deque<const Configuration*> queue;
    seen.emplace(source, Back{nullptr, 0, 0});
    queue.push_back(&seen.find(source)->first);
    bool cut = false;

    auto rebuild = [&](const Configuration* last) {
        Witness w{source, {}};
        for (const Configuration* c = last; seen.at(*c).parent != nullptr; c = seen.at(*c).parent)
            w.steps.push_back(seen.at(*c).rule);
        std::reverse(w.steps.begin(), w.steps.end());
        return w;
    };

    while (!queue.empty()) {
        const Configuration* c = queue.front();
        queue.pop_front();
        const std::size_t depth = seen.at(*c).depth;
        if (c->size() > budget.max_config_size || (budget.max_depth && depth >= *budget.max_depth)) {
            cut = true;
            continue;
        }
        if (verdict.explored >= budget.max_explored) {
            cut = true;
            break;
        }
        ++verdict.explored;
        for (auto& [idx, next] : successors(m, *c)) {
            if (seen.contains(next))
                continue;
            auto [it, fresh] = seen.emplace(std::move(next), Back{c, idx, depth + 1});
            if (target(it->first)) {
                verdict.status = OracleStatus::reachable;
                verdict.witness = rebuild(&it->first);
                return verdict;
            }
            queue.push_back(&it->first);
        }
    }
    verdict.status = cut ? OracleStatus::unreachable_within_budget : OracleStatus::unreachable_complete;
    return verdict;
}

OracleVerdict bfs_reach(const Mpda& m, const Configuration& source, const Configuration& target,
                        const OracleBudget& budget)
{
    return bfs_reach(m, source, [&](const Configuration& c) { return c == target; }, budget);
}

PathLength shortest_path_length(const Mpda& m, const Configuration& source, const Configuration& target,
                                const OracleBudget& budget)
{
    auto v = bfs_reach(m, source, target, budget);
    PathLength out;
    out.status = v.status;
    if (v.witness)
        out.length = v.witness->steps.size();
    return out;
}

bool is_fully_active(const Mpda& m, const Witness& w)
{
    DescendantForest forest(m, w);
    const auto& nodes = forest.nodes();
    std::vector<bool> active(nodes.size(), false);
    for (std::size_t t = 0; t < w.steps.size(); ++t)
        active[forest.index_of(forest.involved(t))] = true;
    for (std::size_t k = nodes.size(); k-- > 0;) {
        if (active[k]) {
            if (auto p = forest.parent_index(k))
                active[*p] = true;
        }
    }
    for (std::size_t k = 0; k < nodes.size() && nodes[k].config_index == 0; ++k) {
        if (!active[k])
            return false;
    }
    return true;
}

namespace {

/// Finds the widest infix [from, to) inside an irrelevant block of `word` whose
/// two ends carry the same state-set label in every automaton of `nfas`.
std::optional<std::pair<std::size_t, std::size_t>> find_pump(const std::vector<const StackNfa*>& nfas, const Word& word,
                                                             const std::vector<bool>& irrelevant)
{
    std::vector<std::vector<StateSet>> labels(word.size() + 1);
    {
        std::vector<StateSet> cur;
        for (auto* a : nfas)
            cur.push_back(a->initials());
        labels[0] = cur;
        for (std::size_t d = 0; d < word.size(); ++d) {
            for (std::size_t k = 0; k < nfas.size(); ++k)
                cur[k] = nfas[k]->post(cur[k], word[d]);
            labels[d + 1] = cur;
        }
    }
    std::optional<std::pair<std::size_t, std::size_t>> best;
    std::size_t d = 0;
    while (d < word.size()) {
        if (!irrelevant[d]) {
            ++d;
            continue;
        }
        std::size_t end = d;
        while (end < word.size() && irrelevant[end])
            ++end;
        for (std::size_t i = d; i < end; ++i) {
            for (std::size_t j = end; j > i; --j) {
                if (labels[i] == labels[j]) {
                    if (!best || j - i > best->second - best->first)
                        best = std::make_pair(i, j);
                    break;
                }
            }
        }
        d = end;
    }
    return best;
}

} // namespace

Configuration shrink_source(const Mpda& m, const Witness& w, const RegSet& L)
{
    if (!member(L, w.start))
        throw source_not_in_set("the witness does not start in the given set");
    const auto relevant = relevant_occurrences(m, w);
    const RegComponent* comp = L.component(w.start.state);

    Configuration current = w.start;
    for (std::size_t i = 0; i < current.stacks.size(); ++i) {
        std::vector<bool> irrelevant(current.stacks[i].size());
        for (std::size_t d = 0; d < irrelevant.size(); ++d)
            irrelevant[d] = !relevant.contains(OccurrenceId{0, i, d});
        // The per-stack automaton decides membership; a single one suffices.
        std::vector<const StackNfa*> nfas{&comp->nfas[i]};
        while (auto pump = find_pump(nfas, current.stacks[i], irrelevant)) {
            Configuration next = current;
            auto& word = next.stacks[i];
            word.erase(word.begin() + static_cast<std::ptrdiff_t>(pump->first),
                       word.begin() + static_cast<std::ptrdiff_t>(pump->second));
            if (!member(L, next))
                throw error("pumping left the source set");
            irrelevant.erase(irrelevant.begin() + static_cast<std::ptrdiff_t>(pump->first),
                             irrelevant.begin() + static_cast<std::ptrdiff_t>(pump->second));
            current = std::move(next);
        }
    }
    return current;
}

} // namespace wmpda
