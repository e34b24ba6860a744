#include "wmpda/classify.hpp"

#include <algorithm>
#include <functional>

#include "wmpda/wqo.hpp"

namespace wmpda {

namespace {

std::vector<std::vector<StateId>> state_graph(const Mpda& m)
{
    std::vector<std::vector<StateId>> succ(m.state_count());
    for (const auto& r : m.rules()) {
        auto& out = succ[r.from.value];
        if (r.changes_state() && std::find(out.begin(), out.end(), r.to) == out.end())
            out.push_back(r.to);
    }
    for (auto& out : succ)
        std::sort(out.begin(), out.end());
    return succ;
}

std::vector<StateId> find_cycle(const std::vector<std::vector<StateId>>& succ)
{
    enum class Mark { fresh, active, done };
    std::vector<Mark> mark(succ.size(), Mark::fresh);
    std::vector<StateId> path;
    std::vector<StateId> cycle;
    std::function<bool(StateId)> visit = [&](StateId q) {
        mark[q.value] = Mark::active;
        path.push_back(q);
        for (auto p : succ[q.value]) {
            if (mark[p.value] == Mark::active) {
                auto it = std::find(path.begin(), path.end(), p);
                cycle.assign(it, path.end());
                return true;
            }
            if (mark[p.value] == Mark::fresh && visit(p))
                return true;
        }
        path.pop_back();
        mark[q.value] = Mark::done;
        return false;
    };
    for (std::uint32_t q = 0; q < succ.size(); ++q) {
        if (mark[q] == Mark::fresh && visit(StateId{q}))
            break;
    }
    return cycle;
}

} // namespace

WeaknessResult is_weak(const Mpda& m)
{
    const auto succ = state_graph(m);
    std::vector<std::size_t> indegree(m.state_count(), 0);
    for (const auto& out : succ) {
        for (auto p : out)
            ++indegree[p.value];
    }
    WeaknessResult res;
    std::vector<bool> placed(m.state_count(), false);
    while (res.order.size() < m.state_count()) {
        bool progress = false;
        for (std::uint32_t q = 0; q < m.state_count(); ++q) {
            if (placed[q] || indegree[q] != 0)
                continue;
            placed[q] = true;
            res.order.push_back(StateId{q});
            for (auto p : succ[q])
                --indegree[p.value];
            progress = true;
            break;
        }
        if (!progress) {
            res.order.clear();
            res.cycle = find_cycle(succ);
            return res;
        }
    }
    res.weak = true;
    return res;
}

StrongNormResult is_strongly_normed(const Mpda& m)
{
    StrongNormResult res;
    std::map<std::pair<StateId, SymbolId>, std::size_t> chosen;
    for (auto q : m.states()) {
        std::vector<bool> erasable(m.symbol_count(), false);
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::uint32_t x = 0; x < m.symbol_count(); ++x) {
                if (erasable[x])
                    continue;
                for (auto idx : m.rules_for(q, SymbolId{x})) {
                    const auto& r = m.rule(idx);
                    if (r.changes_state())
                        continue;
                    bool ok = true;
                    for (const auto& w : r.push) {
                        for (auto y : w)
                            ok = ok && erasable[y.value];
                    }
                    if (ok) {
                        erasable[x] = true;
                        chosen[{q, SymbolId{x}}] = idx;
                        changed = true;
                        break;
                    }
                }
            }
        }
        for (std::uint32_t x = 0; x < m.symbol_count(); ++x) {
            if (!erasable[x] && !res.failing)
                res.failing = std::make_pair(q, SymbolId{x});
        }
    }
    if (res.failing)
        return res;

    // Pushed material is erased stack by stack, each stack top-down.
    std::function<const std::vector<std::size_t>&(StateId, SymbolId)> expand =
        [&](StateId q, SymbolId x) -> const std::vector<std::size_t>& {
        auto key = std::make_pair(q, x);
        if (auto it = res.cancel.find(key); it != res.cancel.end())
            return it->second;
        const std::size_t idx = chosen.at(key);
        std::vector<std::size_t> seq{idx};
        for (const auto& w : m.rule(idx).push) {
            for (auto y : w) {
                const auto& sub = expand(q, y);
                seq.insert(seq.end(), sub.begin(), sub.end());
            }
        }
        return res.cancel.emplace(key, std::move(seq)).first->second;
    };
    for (auto q : m.states()) {
        for (std::uint32_t x = 0; x < m.symbol_count(); ++x)
            expand(q, SymbolId{x});
    }
    res.strongly_normed = true;
    return res;
}

NormResult is_normed(const Mpda& m)
{
    auto weak = is_weak(m);
    if (!weak.weak)
        throw not_weak("normedness is only decided for weak automata");
    const auto succ = state_graph(m);

    NormResult res;
    for (auto it = weak.order.rbegin(); it != weak.order.rend(); ++it) {
        const StateId q = *it;
        // States reachable from q, q included.
        std::vector<bool> below(m.state_count(), false);
        std::vector<StateId> work{q};
        below[q.value] = true;
        while (!work.empty()) {
            auto p = work.back();
            work.pop_back();
            for (auto n : succ[p.value]) {
                if (!below[n.value]) {
                    below[n.value] = true;
                    work.push_back(n);
                }
            }
        }
        for (std::uint32_t x = 0; x < m.symbol_count(); ++x) {
            const auto unit = unit_configuration(m, q, SymbolId{x});
            bool emptied = false;
            for (std::uint32_t p = 0; p < m.state_count() && !emptied; ++p) {
                if (below[p])
                    emptied = decide_wqo(m, unit, empty_configuration(m, StateId{p})).reachable;
            }
            if (!emptied) {
                res.failing = std::make_pair(q, SymbolId{x});
                return res;
            }
        }
    }
    res.normed = true;
    return res;
}

} // namespace wmpda
