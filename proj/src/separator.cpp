#include "wmpda/separator.hpp"

#include <set>

#include "wmpda/classify.hpp"

namespace wmpda {

namespace {

constexpr std::size_t witness_size = 4;
constexpr std::size_t signature_size = 3;

std::optional<Configuration> first_outside(const Mpda& m, const RegSet& A, const RegSet& B)
{
    for (const auto& c : enumerate_members(m, A, witness_size)) {
        if (!member(B, c))
            return c;
    }
    return std::nullopt;
}

/// Lazily enumerates per-stack complete DFAs with N states plus accepting
/// tuple sets for one control state, N = 1, 2, ..., keeping only candidates
/// with a new membership signature that agrees with K and L on small sizes.
class CandidateStream {
public:
    CandidateStream(const Mpda& m, StateId q, const RegSet& L, const RegSet& K, std::size_t max_states)
        : _m(m), _q(q), _max_states(max_states)
    {
        for (const auto& c : enumerate_configurations(m, signature_size)) {
            if (c.state != q)
                continue;
            _probe.push_back(c);
            _must.push_back(member(K, c) ? 1 : member(L, c) ? 0 : 2);
        }
        start(1);
    }

    [[nodiscard]] bool exhausted() const { return _exhausted; }
    [[nodiscard]] const std::vector<RegComponent>& found() const { return _found; }

    /// Generates one raw candidate; true if it was new and admissible.
    bool advance()
    {
        if (_exhausted)
            return false;
        RegComponent comp = build();
        bool fresh = false;
        std::vector<bool> sig;
        RegSet probe(_m.stack_count());
        probe.set_component(_q, comp);
        bool admissible = true;
        for (std::size_t i = 0; i < _probe.size(); ++i) {
            const bool in = member(probe, _probe[i]);
            sig.push_back(in);
            if ((_must[i] == 1 && !in) || (_must[i] == 0 && in))
                admissible = false;
        }
        if (admissible && _signatures.insert(sig).second) {
            _found.push_back(std::move(comp));
            fresh = true;
        }
        step();
        return fresh;
    }

private:
    void start(std::size_t n)
    {
        _n = n;
        _tuples = 1;
        for (std::size_t i = 0; i < _m.stack_count(); ++i)
            _tuples *= n;
        if (n > _max_states || _tuples > 62) {
            _exhausted = true;
            return;
        }
        std::size_t table = 0;
        for (std::size_t i = 0; i < _m.stack_count(); ++i)
            table += n * _m.alphabet(i).size();
        _digits.assign(table, 0);
        _mask = 0;
    }

    void step()
    {
        if (++_mask < (1ULL << _tuples))
            return;
        _mask = 0;
        std::size_t d = 0;
        while (d < _digits.size() && ++_digits[d] == _n) {
            _digits[d] = 0;
            ++d;
        }
        if (d == _digits.size())
            start(_n + 1);
    }

    RegComponent build() const
    {
        RegComponent comp;
        std::size_t d = 0;
        for (std::size_t i = 0; i < _m.stack_count(); ++i) {
            StackNfa nfa(static_cast<std::uint32_t>(_n));
            nfa.add_initial(0);
            for (std::uint32_t s = 0; s < _n; ++s) {
                for (auto x : _m.alphabet(i))
                    nfa.add_edge(s, x, _digits[d++]);
            }
            comp.nfas.push_back(std::move(nfa));
        }
        for (std::size_t t = 0; t < _tuples; ++t) {
            if (((_mask >> t) & 1) == 0)
                continue;
            AcceptTuple tuple;
            std::size_t rest = t;
            for (std::size_t i = 0; i < _m.stack_count(); ++i) {
                tuple.push_back(static_cast<std::uint32_t>(rest % _n));
                rest /= _n;
            }
            comp.accept.insert(tuple);
        }
        return comp;
    }

    const Mpda& _m;
    StateId _q;
    std::size_t _max_states;
    std::vector<Configuration> _probe;
    std::vector<int> _must; // 1 in K, 0 in L, 2 free
    std::set<std::vector<bool>> _signatures;
    std::vector<RegComponent> _found;
    std::size_t _n = 1;
    std::size_t _tuples = 1;
    std::vector<std::uint32_t> _digits;
    std::uint64_t _mask = 0;
    bool _exhausted = false;
};

} // namespace

std::string condition_name(SeparatorCondition c)
{
    switch (c) {
    case SeparatorCondition::contains_target:
        return "K not contained in M";
    case SeparatorCondition::disjoint_from_source:
        return "L ∩ M nonempty";
    case SeparatorCondition::backward_closed:
        return "not backward closed";
    }
    return "";
}

SeparatorCheck check_separator(const Mpda& m, const RegSet& L, const RegSet& K, const RegSet& M)
{
    SeparatorCheck res;
    res.contains_target = is_subset(m, K, M);
    if (!res.contains_target) {
        res.failed = SeparatorCondition::contains_target;
        res.witness = first_outside(m, K, M);
        return res;
    }
    const RegSet overlap = intersect(L, M);
    res.disjoint_from_source = is_empty(overlap);
    if (!res.disjoint_from_source) {
        res.failed = SeparatorCondition::disjoint_from_source;
        auto members = enumerate_members(m, overlap, witness_size);
        if (!members.empty())
            res.witness = members.front();
        return res;
    }
    const RegSet pre = pre_image(m, M);
    res.backward_closed = is_subset(m, pre, M);
    if (!res.backward_closed) {
        res.failed = SeparatorCondition::backward_closed;
        res.witness = first_outside(m, pre, M);
    }
    return res;
}

namespace {

std::size_t total_states(const RegSet& L)
{
    std::size_t n = 0;
    for (const auto& [q, comp] : L.components()) {
        for (const auto& nfa : comp.nfas)
            n += nfa.state_count();
    }
    return n;
}

} // namespace

FixpointResult backward_fixpoint(const Mpda& m, const RegSet& K, std::size_t max_rounds, std::size_t max_states)
{
    FixpointResult res{trim(K), false, 0};
    try {
        for (std::size_t round = 0; round <= max_rounds; ++round) {
            RegSet next = trim(unite(res.set, pre_image(m, res.set)));
            res.rounds = round;
            if (is_subset(m, next, res.set)) {
                res.converged = true;
                return res;
            }
            if (round == max_rounds || total_states(next) > max_states)
                break;
            res.set = std::move(next);
        }
    } catch (const too_large&) {
    }
    return res;
}

std::optional<Witness> separator_positive_round(const Mpda& m, const RegSet& L, const RegSet& K, std::size_t round,
                                                const SeparatorBudget& budget)
{
    OracleBudget b;
    b.max_config_size = 2 * round + 1;
    b.max_explored = budget.explored_per_source * (round + 1);
    for (const auto& s : enumerate_members(m, L, round)) {
        auto v = bfs_reach(m, s, [&](const Configuration& c) { return member(K, c); }, b);
        if (v.witness)
            return v.witness;
    }
    return std::nullopt;
}

SeparatorVerdict decide_separator(const Mpda& m, const RegSet& L, const RegSet& K, const SeparatorBudget& budget)
{
    if (budget.require_strongly_normed && !is_strongly_normed(m).strongly_normed)
        throw precondition_failed("the separator procedure requires a strongly normed automaton");

    SeparatorVerdict verdict;
    std::vector<CandidateStream> streams;
    bool negative_done = false;
    bool fixpoint_tried = false;
    std::size_t raw = 0;

    auto try_candidate = [&](const std::vector<std::size_t>& pick) {
        RegSet M(m.stack_count());
        for (std::size_t i = 0; i < streams.size(); ++i) {
            const auto& comp = streams[i].found()[pick[i]];
            if (!comp.accept.empty())
                M.set_component(StateId{static_cast<std::uint32_t>(i)}, comp);
        }
        ++verdict.candidates_checked;
        auto check = check_separator(m, L, K, M);
        if (check.ok()) {
            verdict.status = SeparatorStatus::unreachable;
            verdict.certificate = SeparatorCertificate{M, check};
            return true;
        }
        return false;
    };

    // Every combination that uses the newest candidate of stream `fixed`.
    auto combine = [&](std::size_t fixed) {
        for (const auto& s : streams) {
            if (s.found().empty())
                return false;
        }
        std::vector<std::size_t> pick(streams.size(), 0);
        pick[fixed] = streams[fixed].found().size() - 1;
        while (true) {
            if (try_candidate(pick))
                return true;
            std::size_t i = 0;
            for (; i < streams.size(); ++i) {
                if (i == fixed)
                    continue;
                if (++pick[i] < streams[i].found().size())
                    break;
                pick[i] = 0;
            }
            if (i == streams.size())
                return false;
        }
    };

    auto negative_step = [&]() {
        if (!fixpoint_tried) {
            fixpoint_tried = true;
            auto fp = backward_fixpoint(m, K, budget.fixpoint_rounds, budget.fixpoint_max_states);
            if (fp.converged) {
                auto check = check_separator(m, L, K, fp.set);
                if (check.ok()) {
                    verdict.status = SeparatorStatus::unreachable;
                    verdict.certificate = SeparatorCertificate{fp.set, check};
                    return;
                }
                // The exact backward set meets L: no separator exists.
                negative_done = true;
                return;
            }
            for (auto q : m.states())
                streams.emplace_back(m, q, L, K, budget.max_automaton_states);
            return;
        }
        // One fresh candidate per stream, round robin.
        bool any = false;
        for (std::size_t i = 0; i < streams.size(); ++i) {
            while (!streams[i].exhausted() && raw < budget.max_candidates) {
                ++raw;
                if (streams[i].advance()) {
                    if (combine(i))
                        return;
                    break;
                }
            }
            any = any || !streams[i].exhausted();
        }
        if (!any || raw >= budget.max_candidates)
            negative_done = true;
    };

    if (!is_empty(intersect(L, K))) {
        const RegSet both = trim(intersect(L, K));
        for (std::size_t cap = 0;; ++cap) {
            auto members = enumerate_members(m, both, cap);
            if (!members.empty()) {
                verdict.status = SeparatorStatus::reachable;
                verdict.witness = Witness{members.front(), {}};
                return verdict;
            }
        }
    }

    for (std::size_t round = 0;; ++round) {
        const bool positive_left = round < budget.positive_rounds;
        if (positive_left) {
            verdict.positive_rounds = round + 1;
            if (auto w = separator_positive_round(m, L, K, round, budget)) {
                verdict.status = SeparatorStatus::reachable;
                verdict.witness = std::move(w);
                return verdict;
            }
        }
        if (!negative_done) {
            negative_step();
            if (verdict.status == SeparatorStatus::unreachable)
                return verdict;
        }
        if (!positive_left && negative_done)
            return verdict;
    }
}

} // namespace wmpda
