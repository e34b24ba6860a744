#include "wmpda/core.hpp"

#include <algorithm>

#include "wmpda/format.hpp"

namespace wmpda {

std::size_t Rule::rhs_size() const
{
    std::size_t total = 0;
    for (const auto& w : push)
        total += w.size();
    return total;
}

Mpda::Mpda(std::size_t stack_count) : _stack_count(stack_count), _alphabets(stack_count)
{
    if (stack_count == 0)
        throw error("an MPDA needs at least one stack");
}

StateId Mpda::add_state(const std::string& name)
{
    if (!is_valid_identifier(name))
        throw error("invalid state name '" + name + "'");
    if (_state_index.contains(name))
        throw error("duplicate state '" + name + "'");
    StateId q{static_cast<std::uint32_t>(_state_names.size())};
    _state_names.push_back(name);
    _state_index.emplace(name, q);
    return q;
}

SymbolId Mpda::add_symbol(std::size_t stack, const std::string& name)
{
    if (stack >= _stack_count)
        throw error("stack index " + std::to_string(stack + 1) + " out of range");
    if (!is_valid_identifier(name))
        throw error("invalid symbol name '" + name + "'");
    if (_symbol_index.contains(name))
        throw error("duplicate symbol '" + name + "' (stack alphabets must be disjoint)");
    SymbolId x{static_cast<std::uint32_t>(_symbol_names.size())};
    _symbol_names.push_back(name);
    _symbol_stack.push_back(stack);
    _alphabets[stack].push_back(x);
    _symbol_index.emplace(name, x);
    return x;
}

std::size_t Mpda::add_rule(Rule rule)
{
    if (rule.from.value >= state_count() || rule.to.value >= state_count())
        throw error("rule references an undeclared state");
    if (rule.pop.value >= symbol_count())
        throw error("rule pops an undeclared symbol");
    if (rule.push.size() != _stack_count)
        throw error("rule pushes " + std::to_string(rule.push.size()) + " words, expected " +
                    std::to_string(_stack_count));
    for (std::size_t i = 0; i < _stack_count; ++i) {
        for (auto x : rule.push[i]) {
            if (x.value >= symbol_count())
                throw error("rule pushes an undeclared symbol");
            if (stack_of(x) != i)
                throw error("symbol '" + symbol_name(x) + "' pushed on stack " + std::to_string(i + 1) +
                            " belongs to stack " + std::to_string(stack_of(x) + 1));
        }
    }
    if (std::find(_rules.begin(), _rules.end(), rule) != _rules.end())
        throw error("duplicate rule");
    _rules.push_back(std::move(rule));
    const auto& r = _rules.back();
    _by_lhs[{r.from.value, r.pop.value}].push_back(_rules.size() - 1);
    return _rules.size() - 1;
}

std::optional<StateId> Mpda::find_state(std::string_view name) const
{
    auto it = _state_index.find(std::string(name));
    if (it == _state_index.end())
        return std::nullopt;
    return it->second;
}

std::optional<SymbolId> Mpda::find_symbol(std::string_view name) const
{
    auto it = _symbol_index.find(std::string(name));
    if (it == _symbol_index.end())
        return std::nullopt;
    return it->second;
}

std::vector<StateId> Mpda::states() const
{
    std::vector<StateId> out;
    out.reserve(state_count());
    for (std::uint32_t i = 0; i < state_count(); ++i)
        out.push_back(StateId{i});
    return out;
}

const std::vector<std::size_t>& Mpda::rules_for(StateId q, SymbolId x) const
{
    static const std::vector<std::size_t> none;
    auto it = _by_lhs.find({q.value, x.value});
    return it == _by_lhs.end() ? none : it->second;
}

std::size_t Mpda::max_rhs_size() const
{
    std::size_t best = 0;
    for (const auto& r : _rules)
        best = std::max(best, r.rhs_size());
    return best;
}

bool operator==(const Mpda& a, const Mpda& b)
{
    return a._stack_count == b._stack_count && a._state_names == b._state_names &&
           a._symbol_names == b._symbol_names && a._symbol_stack == b._symbol_stack && a._rules == b._rules;
}

std::size_t Configuration::size() const
{
    std::size_t total = 0;
    for (const auto& w : stacks)
        total += w.size();
    return total;
}

namespace {

bool shortlex_less(const Word& a, const Word& b)
{
    if (a.size() != b.size())
        return a.size() < b.size();
    return a < b;
}

} // namespace

bool ShortlexLess::operator()(const Configuration& a, const Configuration& b) const
{
    if (a.state != b.state)
        return a.state < b.state;
    for (std::size_t i = 0; i < a.stacks.size() && i < b.stacks.size(); ++i) {
        if (a.stacks[i] != b.stacks[i])
            return shortlex_less(a.stacks[i], b.stacks[i]);
    }
    return a.stacks.size() < b.stacks.size();
}

std::size_t ConfigurationHash::operator()(const Configuration& c) const
{
    std::size_t h = c.state.value * 0x9e3779b97f4a7c15ULL;
    for (const auto& w : c.stacks) {
        h ^= 0xabcdefULL + (h << 6) + (h >> 2);
        for (auto x : w)
            h ^= x.value + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

Configuration empty_configuration(const Mpda& m, StateId q)
{
    return Configuration{q, std::vector<Word>(m.stack_count())};
}

Configuration unit_configuration(const Mpda& m, StateId q, SymbolId x)
{
    auto c = empty_configuration(m, q);
    c.stacks[m.stack_of(x)].push_back(x);
    return c;
}

std::optional<Configuration> try_step(const Mpda& m, const Configuration& c, const Rule& r)
{
    if (c.state != r.from)
        return std::nullopt;
    const std::size_t i = m.stack_of(r.pop);
    if (c.stacks[i].empty() || c.stacks[i].front() != r.pop)
        return std::nullopt;
    Configuration next{r.to, {}};
    next.stacks.resize(c.stacks.size());
    for (std::size_t j = 0; j < c.stacks.size(); ++j) {
        auto& out = next.stacks[j];
        const auto& old = c.stacks[j];
        out.reserve(r.push[j].size() + old.size());
        out.insert(out.end(), r.push[j].begin(), r.push[j].end());
        out.insert(out.end(), old.begin() + (j == i ? 1 : 0), old.end());
    }
    return next;
}

Configuration step(const Mpda& m, const Configuration& c, const Rule& r)
{
    auto next = try_step(m, c, r);
    if (!next)
        throw not_enabled("rule " + format_rule(m, r) + " does not fire at " + format_configuration(m, c));
    return std::move(*next);
}

std::vector<std::pair<std::size_t, Configuration>> successors(const Mpda& m, const Configuration& c)
{
    std::vector<std::pair<std::size_t, Configuration>> out;
    for (std::size_t idx = 0; idx < m.rules().size(); ++idx) {
        if (auto next = try_step(m, c, m.rule(idx)))
            out.emplace_back(idx, std::move(*next));
    }
    return out;
}

std::vector<Configuration> replay_all(const Mpda& m, const Witness& w)
{
    std::vector<Configuration> configs{w.start};
    configs.reserve(w.steps.size() + 1);
    for (std::size_t t = 0; t < w.steps.size(); ++t) {
        if (w.steps[t] >= m.rules().size())
            throw invalid_witness(t, "rule index out of range");
        auto next = try_step(m, configs.back(), m.rule(w.steps[t]));
        if (!next)
            throw invalid_witness(t, "rule " + format_rule(m, m.rule(w.steps[t])) + " is not enabled at " +
                                         format_configuration(m, configs.back()));
        configs.push_back(std::move(*next));
    }
    return configs;
}

Configuration replay(const Mpda& m, const Witness& w)
{
    return std::move(replay_all(m, w).back());
}

bool higman_leq(const Word& u, const Word& v)
{
    std::size_t j = 0;
    for (auto x : u) {
        while (j < v.size() && v[j] != x)
            ++j;
        if (j == v.size())
            return false;
        ++j;
    }
    return true;
}

bool bf_higman_leq(const Configuration& c1, const Configuration& c2)
{
    if (c1.state != c2.state || c1.stacks.size() != c2.stacks.size())
        return false;
    for (std::size_t i = 0; i < c1.stacks.size(); ++i) {
        const auto& a = c1.stacks[i];
        const auto& b = c2.stacks[i];
        if (a.empty() != b.empty())
            return false;
        if (a.empty())
            continue;
        if (a.back() != b.back())
            return false;
        if (!higman_leq(Word(a.begin(), a.end() - 1), Word(b.begin(), b.end() - 1)))
            return false;
    }
    return true;
}

} // namespace wmpda
