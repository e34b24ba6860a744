#include "wmpda/core.hpp"
#include <algorithm>

namespace wmpda {

DescendantForest::DescendantForest(const Mpda& m, const Witness& w) : _configs(replay_all(m, w))
{
    for (auto idx : w.steps)
        _involved_stack.push_back(m.stack_of(m.rule(idx).pop));

    for (std::size_t t = 0; t < _configs.size(); ++t) {
        std::vector<std::size_t> offs;
        for (std::size_t i = 0; i < _configs[t].stacks.size(); ++i) {
            offs.push_back(_nodes.size());
            for (std::size_t d = 0; d < _configs[t].stacks[i].size(); ++d)
                _nodes.push_back(OccurrenceId{t, i, d});
        }
        _offsets.push_back(std::move(offs));
    }

    _parents.assign(_nodes.size(), std::nullopt);
    for (std::size_t t = 0; t + 1 < _configs.size(); ++t) {
        const auto& r = m.rule(w.steps[t]);
        const std::size_t popped = _involved_stack[t];
        const std::size_t involved = index_of(OccurrenceId{t, popped, 0});
        for (std::size_t j = 0; j < _configs[t + 1].stacks.size(); ++j) {
            const std::size_t fresh = r.push[j].size();
            const std::size_t shift = j == popped ? 1 : 0;
            for (std::size_t d = 0; d < _configs[t + 1].stacks[j].size(); ++d) {
                const std::size_t child = index_of(OccurrenceId{t + 1, j, d});
                if (d < fresh)
                    _parents[child] = involved;
                else
                    _parents[child] = index_of(OccurrenceId{t, j, d - fresh + shift});
            }
        }
    }
}

std::size_t DescendantForest::index_of(const OccurrenceId& o) const
{
    if (o.config_index >= _configs.size() || o.stack >= _offsets[o.config_index].size() ||
        o.depth >= _configs[o.config_index].stacks[o.stack].size())
        throw error("occurrence out of range");
    return _offsets[o.config_index][o.stack] + o.depth;
}

std::optional<std::size_t> DescendantForest::parent_index(std::size_t node) const
{
    return _parents.at(node);
}

std::optional<OccurrenceId> DescendantForest::parent(const OccurrenceId& o) const
{
    auto p = _parents[index_of(o)];
    if (!p)
        return std::nullopt;
    return _nodes[*p];
}

std::vector<OccurrenceId> DescendantForest::children(const OccurrenceId& o) const
{
    const std::size_t me = index_of(o);
    std::vector<OccurrenceId> out;
    if (o.config_index + 1 >= _configs.size())
        return out;
    // Children live only in the next configuration.
    const auto& offs = _offsets[o.config_index + 1];
    const std::size_t begin = offs.front();
    const std::size_t end = o.config_index + 2 < _offsets.size() ? _offsets[o.config_index + 2].front() : _nodes.size();
    for (std::size_t k = begin; k < end; ++k) {
        if (_parents[k] == me)
            out.push_back(_nodes[k]);
    }
    return out;
}

std::vector<OccurrenceId> DescendantForest::roots() const
{
    std::vector<OccurrenceId> out;
    for (std::size_t k = 0; k < _nodes.size(); ++k) {
        if (!_parents[k])
            out.push_back(_nodes[k]);
    }
    return out;
}

std::vector<std::pair<OccurrenceId, OccurrenceId>> DescendantForest::edges() const
{
    std::vector<std::pair<OccurrenceId, OccurrenceId>> out;
    for (std::size_t k = 0; k < _nodes.size(); ++k) {
        if (_parents[k])
            out.emplace_back(_nodes[*_parents[k]], _nodes[k]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

OccurrenceId DescendantForest::involved(std::size_t step) const
{
    return OccurrenceId{step, _involved_stack.at(step), 0};
}

SymbolId DescendantForest::symbol(const OccurrenceId& o) const
{
    (void)index_of(o);
    return _configs[o.config_index].stacks[o.stack][o.depth];
}

DescendantForest descendant_forest(const Mpda& m, const Witness& w)
{
    return DescendantForest(m, w);
}

std::set<OccurrenceId> relevant_occurrences(const Mpda& m, const Witness& w)
{
    DescendantForest forest(m, w);
    const auto& nodes = forest.nodes();
    std::vector<bool> relevant(nodes.size(), false);
    const std::size_t last = forest.configurations().size() - 1;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        if (nodes[k].config_index == last)
            relevant[k] = true;
    }
    for (std::size_t t = 0; t < w.steps.size(); ++t) {
        if (m.rule(w.steps[t]).changes_state())
            relevant[forest.index_of(forest.involved(t))] = true;
    }
    // Parents precede children in flat order, so one backward sweep closes under ancestors.
    for (std::size_t k = nodes.size(); k-- > 0;) {
        if (relevant[k]) {
            if (auto p = forest.parent_index(k))
                relevant[*p] = true;
        }
    }
    std::set<OccurrenceId> out;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        if (relevant[k])
            out.insert(nodes[k]);
    }
    return out;
}

} // namespace wmpda
