#include "wmpda/regset.hpp"

#include <algorithm>
#include <functional>

namespace wmpda {

namespace {

void normalize(StateSet& s)
{
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
}

bool contains(const StateSet& s, std::uint32_t x)
{
    return std::binary_search(s.begin(), s.end(), x);
}

RegComponent empty_component(const Mpda& m)
{
    RegComponent comp;
    for (std::size_t i = 0; i < m.stack_count(); ++i) {
        StackNfa nfa(1);
        nfa.add_initial(0);
        comp.nfas.push_back(std::move(nfa));
    }
    return comp;
}

RegComponent universal_component(const Mpda& m)
{
    RegComponent comp;
    for (std::size_t i = 0; i < m.stack_count(); ++i) {
        StackNfa nfa(1);
        nfa.add_initial(0);
        for (auto x : m.alphabet(i))
            nfa.add_edge(0, x, 0);
        comp.nfas.push_back(std::move(nfa));
    }
    comp.accept.insert(AcceptTuple(m.stack_count(), 0));
    return comp;
}

/// Disjoint union of two components: b's states are shifted past a's.
RegComponent disjoint_union(const RegComponent& a, const RegComponent& b)
{
    RegComponent out;
    std::vector<std::uint32_t> shift;
    for (std::size_t i = 0; i < a.nfas.size(); ++i) {
        const auto& na = a.nfas[i];
        const auto& nb = b.nfas[i];
        StackNfa n(na.state_count() + nb.state_count());
        for (auto s : na.initials())
            n.add_initial(s);
        for (auto s : nb.initials())
            n.add_initial(s + na.state_count());
        for (const auto& e : na.edges())
            n.add_edge(e.from, e.symbol, e.to);
        for (const auto& e : nb.edges())
            n.add_edge(e.from + na.state_count(), e.symbol, e.to + na.state_count());
        shift.push_back(na.state_count());
        out.nfas.push_back(std::move(n));
    }
    out.accept = a.accept;
    for (auto t : b.accept) {
        for (std::size_t i = 0; i < t.size(); ++i)
            t[i] += shift[i];
        out.accept.insert(std::move(t));
    }
    return out;
}

/// Backward closure of `targets` along the edges.
std::vector<bool> coaccessible(const StackNfa& nfa, const std::vector<bool>& targets)
{
    std::vector<bool> seen = targets;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& e : nfa.edges()) {
            if (seen[e.to] && !seen[e.from]) {
                seen[e.from] = true;
                changed = true;
            }
        }
    }
    return seen;
}

/// Per stack, the states from which some state used at that tuple position is reachable.
std::vector<std::vector<bool>> useful_states(const RegComponent& comp)
{
    std::vector<std::vector<bool>> out;
    for (std::size_t i = 0; i < comp.nfas.size(); ++i) {
        std::vector<bool> used(comp.nfas[i].state_count(), false);
        for (const auto& t : comp.accept)
            used[t[i]] = true;
        out.push_back(coaccessible(comp.nfas[i], used));
    }
    return out;
}

} // namespace

// ---------------------------------------------------------------------------

void StackNfa::add_initial(std::uint32_t s)
{
    if (s >= _state_count)
        throw error("initial state out of range");
    auto it = std::lower_bound(_initials.begin(), _initials.end(), s);
    if (it == _initials.end() || *it != s)
        _initials.insert(it, s);
}

void StackNfa::set_initials(StateSet initials)
{
    normalize(initials);
    if (!initials.empty() && initials.back() >= _state_count)
        throw error("initial state out of range");
    _initials = std::move(initials);
}

void StackNfa::add_edge(std::uint32_t from, SymbolId symbol, std::uint32_t to)
{
    if (from >= _state_count || to >= _state_count)
        throw error("edge endpoint out of range");
    NfaEdge e{from, symbol, to};
    auto it = std::lower_bound(_edges.begin(), _edges.end(), e);
    if (it == _edges.end() || *it != e)
        _edges.insert(it, e);
}

StateSet StackNfa::post(const StateSet& from, SymbolId symbol) const
{
    StateSet out;
    for (auto s : from) {
        auto it = std::lower_bound(_edges.begin(), _edges.end(), NfaEdge{s, symbol, 0});
        for (; it != _edges.end() && it->from == s && it->symbol == symbol; ++it)
            out.push_back(it->to);
    }
    normalize(out);
    return out;
}

StateSet StackNfa::read(const StateSet& from, const Word& w) const
{
    StateSet cur = from;
    for (auto x : w) {
        if (cur.empty())
            break;
        cur = post(cur, x);
    }
    return cur;
}

std::vector<bool> StackNfa::accessible() const
{
    std::vector<bool> seen(_state_count, false);
    std::vector<std::uint32_t> work(_initials.begin(), _initials.end());
    for (auto s : work)
        seen[s] = true;
    while (!work.empty()) {
        auto s = work.back();
        work.pop_back();
        auto it = std::lower_bound(_edges.begin(), _edges.end(), NfaEdge{s, SymbolId{0}, 0});
        for (; it != _edges.end() && it->from == s; ++it) {
            if (!seen[it->to]) {
                seen[it->to] = true;
                work.push_back(it->to);
            }
        }
    }
    return seen;
}

const RegComponent* RegSet::component(StateId q) const
{
    auto it = _components.find(q);
    return it == _components.end() ? nullptr : &it->second;
}

void RegSet::set_component(StateId q, RegComponent comp)
{
    if (comp.nfas.size() != _stack_count)
        throw error("component has " + std::to_string(comp.nfas.size()) + " automata, expected " +
                    std::to_string(_stack_count));
    for (const auto& t : comp.accept) {
        if (t.size() != _stack_count)
            throw error("accepting tuple has wrong arity");
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (t[i] >= comp.nfas[i].state_count())
                throw error("accepting tuple references an undeclared state");
        }
    }
    _components[q] = std::move(comp);
}

// ---------------------------------------------------------------------------

RegSet empty_regset(const Mpda& m)
{
    return RegSet(m.stack_count());
}

RegSet universal_regset(const Mpda& m, StateId q)
{
    RegSet out(m.stack_count());
    out.set_component(q, universal_component(m));
    return out;
}

RegSet universal_regset(const Mpda& m)
{
    RegSet out(m.stack_count());
    for (auto q : m.states())
        out.set_component(q, universal_component(m));
    return out;
}

RegSet singleton(const Mpda& m, const Configuration& c)
{
    RegComponent comp;
    AcceptTuple fin;
    for (std::size_t i = 0; i < m.stack_count(); ++i) {
        const auto& w = c.stacks.at(i);
        StackNfa nfa(static_cast<std::uint32_t>(w.size() + 1));
        nfa.add_initial(0);
        for (std::uint32_t j = 0; j < w.size(); ++j)
            nfa.add_edge(j, w[j], j + 1);
        fin.push_back(static_cast<std::uint32_t>(w.size()));
        comp.nfas.push_back(std::move(nfa));
    }
    comp.accept.insert(fin);
    RegSet out(m.stack_count());
    out.set_component(c.state, std::move(comp));
    return out;
}

bool member(const RegSet& L, const Configuration& c)
{
    const auto* comp = L.component(c.state);
    if (!comp || comp->accept.empty())
        return false;
    std::vector<StateSet> reached;
    for (std::size_t i = 0; i < comp->nfas.size(); ++i) {
        reached.push_back(comp->nfas[i].read(c.stacks.at(i)));
        if (reached.back().empty())
            return false;
    }
    for (const auto& t : comp->accept) {
        bool hit = true;
        for (std::size_t i = 0; i < t.size() && hit; ++i)
            hit = contains(reached[i], t[i]);
        if (hit)
            return true;
    }
    return false;
}

RegSet unite(const RegSet& L, const RegSet& M)
{
    if (L.stack_count() != M.stack_count())
        throw error("union of sets over different stack counts");
    RegSet out = L;
    for (const auto& [q, comp] : M.components()) {
        if (const auto* mine = L.component(q))
            out.set_component(q, disjoint_union(*mine, comp));
        else
            out.set_component(q, comp);
    }
    return out;
}

RegSet intersect(const RegSet& L, const RegSet& M)
{
    if (L.stack_count() != M.stack_count())
        throw error("intersection of sets over different stack counts");
    RegSet out(L.stack_count());
    for (const auto& [q, a] : L.components()) {
        const auto* b = M.component(q);
        if (!b)
            continue;
        RegComponent comp;
        std::vector<std::uint32_t> widths;
        for (std::size_t i = 0; i < a.nfas.size(); ++i) {
            const auto& na = a.nfas[i];
            const auto& nb = b->nfas[i];
            const std::uint32_t w = nb.state_count();
            StackNfa n(na.state_count() * w);
            for (auto sa : na.initials()) {
                for (auto sb : nb.initials())
                    n.add_initial(sa * w + sb);
            }
            for (const auto& ea : na.edges()) {
                for (const auto& eb : nb.edges()) {
                    if (ea.symbol == eb.symbol)
                        n.add_edge(ea.from * w + eb.from, ea.symbol, ea.to * w + eb.to);
                }
            }
            widths.push_back(w);
            comp.nfas.push_back(std::move(n));
        }
        for (const auto& ta : a.accept) {
            for (const auto& tb : b->accept) {
                AcceptTuple t;
                for (std::size_t i = 0; i < ta.size(); ++i)
                    t.push_back(ta[i] * widths[i] + tb[i]);
                comp.accept.insert(std::move(t));
            }
        }
        out.set_component(q, std::move(comp));
    }
    return trim(out);
}

RegSet complement(const Mpda& m, const RegSet& L, const ComplementBudget& budget)
{
    if (L.stack_count() != m.stack_count())
        throw error("set and automaton disagree on the stack count");
    RegSet out(m.stack_count());
    for (auto q : m.states()) {
        const RegComponent* given = L.component(q);
        const RegComponent comp = given ? *given : empty_component(m);

        RegComponent dcomp;
        std::vector<std::vector<StateSet>> subsets; // per stack: DFA state -> NFA state set
        for (std::size_t i = 0; i < m.stack_count(); ++i) {
            const auto& nfa = comp.nfas[i];
            std::map<StateSet, std::uint32_t> index;
            std::vector<StateSet> order{nfa.initials()};
            index.emplace(nfa.initials(), 0);
            std::vector<std::tuple<std::uint32_t, SymbolId, std::uint32_t>> edges;
            for (std::size_t k = 0; k < order.size(); ++k) {
                for (auto x : m.alphabet(i)) {
                    StateSet next = nfa.post(order[k], x);
                    auto [it, fresh] = index.emplace(next, static_cast<std::uint32_t>(order.size()));
                    if (fresh) {
                        if (order.size() >= budget.max_dfa_states)
                            throw too_large("determinized component exceeds " +
                                            std::to_string(budget.max_dfa_states) + " states");
                        order.push_back(next);
                    }
                    edges.emplace_back(static_cast<std::uint32_t>(k), x, it->second);
                }
            }
            StackNfa dfa(static_cast<std::uint32_t>(order.size()));
            dfa.add_initial(0);
            for (const auto& [f, x, t] : edges)
                dfa.add_edge(f, x, t);
            dcomp.nfas.push_back(std::move(dfa));
            subsets.push_back(std::move(order));
        }

        std::size_t product = 1;
        for (const auto& s : subsets) {
            product *= s.size();
            if (product > budget.max_accept_tuples)
                throw too_large("complement needs more than " + std::to_string(budget.max_accept_tuples) +
                                " accepting tuples");
        }
        AcceptTuple t(m.stack_count(), 0);
        while (true) {
            bool covers = false;
            for (const auto& f : comp.accept) {
                bool all = true;
                for (std::size_t i = 0; i < t.size() && all; ++i)
                    all = contains(subsets[i][t[i]], f[i]);
                if (all) {
                    covers = true;
                    break;
                }
            }
            if (!covers)
                dcomp.accept.insert(t);
            std::size_t i = 0;
            while (i < t.size() && ++t[i] == subsets[i].size())
                t[i++] = 0;
            if (i == t.size())
                break;
        }
        out.set_component(q, std::move(dcomp));
    }
    return out;
}

bool is_empty(const RegSet& L)
{
    for (const auto& [q, comp] : L.components()) {
        std::vector<std::vector<bool>> acc;
        for (const auto& nfa : comp.nfas)
            acc.push_back(nfa.accessible());
        for (const auto& t : comp.accept) {
            bool all = true;
            for (std::size_t i = 0; i < t.size() && all; ++i)
                all = acc[i][t[i]];
            if (all)
                return false;
        }
    }
    return true;
}

bool is_subset(const Mpda& m, const RegSet& L, const RegSet& M, const ComplementBudget& budget)
{
    return is_empty(intersect(L, complement(m, M, budget)));
}

RegSet trim(const RegSet& L)
{
    RegSet out(L.stack_count());
    for (const auto& [q, comp] : L.components()) {
        std::vector<std::vector<bool>> acc;
        for (const auto& nfa : comp.nfas)
            acc.push_back(nfa.accessible());
        RegComponent live;
        live.nfas = comp.nfas;
        for (const auto& t : comp.accept) {
            bool all = true;
            for (std::size_t i = 0; i < t.size() && all; ++i)
                all = acc[i][t[i]];
            if (all)
                live.accept.insert(t);
        }
        if (live.accept.empty())
            continue;
        auto useful = useful_states(live);

        RegComponent trimmed;
        std::vector<std::vector<std::uint32_t>> remap;
        for (std::size_t i = 0; i < live.nfas.size(); ++i) {
            const auto& nfa = live.nfas[i];
            std::vector<std::uint32_t> map(nfa.state_count(), UINT32_MAX);
            std::uint32_t next = 0;
            for (std::uint32_t s = 0; s < nfa.state_count(); ++s) {
                if (acc[i][s] && useful[i][s])
                    map[s] = next++;
            }
            StackNfa n(next);
            for (auto s : nfa.initials()) {
                if (map[s] != UINT32_MAX)
                    n.add_initial(map[s]);
            }
            for (const auto& e : nfa.edges()) {
                if (map[e.from] != UINT32_MAX && map[e.to] != UINT32_MAX)
                    n.add_edge(map[e.from], e.symbol, map[e.to]);
            }
            trimmed.nfas.push_back(std::move(n));
            remap.push_back(std::move(map));
        }
        for (const auto& t : live.accept) {
            AcceptTuple nt;
            for (std::size_t i = 0; i < t.size(); ++i)
                nt.push_back(remap[i][t[i]]);
            trimmed.accept.insert(std::move(nt));
        }
        out.set_component(q, std::move(trimmed));
    }
    return out;
}

std::vector<Configuration> enumerate_members(const Mpda& m, const RegSet& L, std::size_t max_size)
{
    std::vector<Configuration> out;
    for (const auto& [q, comp] : L.components()) {
        if (comp.accept.empty())
            continue;
        auto useful = useful_states(comp);
        // Per stack: every word of length <= max_size that still leads somewhere useful.
        std::vector<std::vector<std::pair<Word, StateSet>>> candidates(m.stack_count());
        for (std::size_t i = 0; i < m.stack_count(); ++i) {
            const auto& nfa = comp.nfas[i];
            std::function<void(Word&, const StateSet&)> grow = [&](Word& w, const StateSet& reached) {
                candidates[i].emplace_back(w, reached);
                if (w.size() == max_size)
                    return;
                for (auto x : m.alphabet(i)) {
                    StateSet next = nfa.post(reached, x);
                    StateSet live;
                    for (auto s : next) {
                        if (useful[i][s])
                            live.push_back(s);
                    }
                    if (live.empty())
                        continue;
                    w.push_back(x);
                    grow(w, live);
                    w.pop_back();
                }
            };
            StateSet start;
            for (auto s : nfa.initials()) {
                if (useful[i][s])
                    start.push_back(s);
            }
            if (start.empty())
                break;
            Word w;
            grow(w, start);
        }

        Configuration c{q, std::vector<Word>(m.stack_count())};
        std::vector<const StateSet*> sets(m.stack_count(), nullptr);
        std::function<void(std::size_t, std::size_t)> combine = [&](std::size_t i, std::size_t budget) {
            if (i == m.stack_count()) {
                for (const auto& t : comp.accept) {
                    bool hit = true;
                    for (std::size_t j = 0; j < t.size() && hit; ++j)
                        hit = contains(*sets[j], t[j]);
                    if (hit) {
                        out.push_back(c);
                        return;
                    }
                }
                return;
            }
            for (const auto& [w, reached] : candidates[i]) {
                if (w.size() > budget)
                    continue;
                c.stacks[i] = w;
                sets[i] = &reached;
                combine(i + 1, budget - w.size());
            }
        };
        combine(0, max_size);
    }
    std::sort(out.begin(), out.end(), ShortlexLess{});
    return out;
}

std::vector<Configuration> enumerate_configurations(const Mpda& m, std::size_t max_size)
{
    return enumerate_members(m, universal_regset(m), max_size);
}

RegSet pre_image(const Mpda& m, const RegSet& M)
{
    RegSet out(m.stack_count());
    for (const auto& r : m.rules()) {
        const auto* comp = M.component(r.to);
        if (!comp || comp->accept.empty())
            continue;
        const std::size_t popped = m.stack_of(r.pop);
        RegComponent summand;
        bool dead = false;
        for (std::size_t j = 0; j < m.stack_count(); ++j) {
            StackNfa nfa = comp->nfas[j];
            StateSet after = nfa.read(r.push[j]);
            if (after.empty())
                dead = true;
            if (j == popped) {
                const std::uint32_t fresh = nfa.add_state();
                for (auto s : after)
                    nfa.add_edge(fresh, r.pop, s);
                nfa.set_initials({fresh});
            } else {
                nfa.set_initials(std::move(after));
            }
            summand.nfas.push_back(std::move(nfa));
        }
        if (dead)
            continue;
        summand.accept = comp->accept;
        RegSet piece(m.stack_count());
        piece.set_component(r.from, std::move(summand));
        out = unite(out, piece);
    }
    return trim(out);
}

} // namespace wmpda
