#include "random_instances.hpp"

#include <algorithm>

#include "wmpda/classify.hpp"

namespace wmpda::testing {

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi)
{
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(Rng& rng, double p)
{
    return std::bernoulli_distribution(p)(rng);
}

Mpda random_weak_mpda(Rng& rng, const MpdaShape& shape)
{
    Mpda m(shape.stacks);
    const std::size_t n = uniform(rng, 1, shape.max_states);
    for (std::size_t q = 0; q < n; ++q)
        m.add_state("q" + std::to_string(q));
    char next = 'A';
    for (std::size_t i = 0; i < shape.stacks; ++i) {
        const std::size_t count = uniform(rng, 1, shape.max_symbols);
        for (std::size_t j = 0; j < count; ++j)
            m.add_symbol(i, std::string(1, next++));
    }
    const std::size_t rules = uniform(rng, shape.min_rules, shape.max_rules);
    for (std::size_t attempt = 0; m.rules().size() < rules && attempt < 20 * rules; ++attempt) {
        Rule r;
        r.from = StateId{static_cast<std::uint32_t>(uniform(rng, 0, n - 1))};
        r.to = coin(rng, shape.keep_state) ? r.from
                                           : StateId{static_cast<std::uint32_t>(uniform(rng, r.from.value, n - 1))};
        r.pop = SymbolId{static_cast<std::uint32_t>(uniform(rng, 0, m.symbol_count() - 1))};
        r.push.assign(shape.stacks, {});
        const std::size_t rhs = uniform(rng, 0, shape.max_rhs);
        for (std::size_t k = 0; k < rhs; ++k) {
            const std::size_t stack = uniform(rng, 0, shape.stacks - 1);
            const auto& alpha = m.alphabet(stack);
            r.push[stack].push_back(alpha[uniform(rng, 0, alpha.size() - 1)]);
        }
        if (std::find(m.rules().begin(), m.rules().end(), r) != m.rules().end())
            continue;
        m.add_rule(std::move(r));
    }
    return m;
}

Mpda random_strongly_normed(Rng& rng, const MpdaShape& shape)
{
    while (true) {
        Mpda m = random_weak_mpda(rng, shape);
        if (is_strongly_normed(m).strongly_normed)
            return m;
    }
}

Mpda random_size_nonincreasing(Rng& rng, MpdaShape shape)
{
    shape.max_rhs = 1;
    return random_weak_mpda(rng, shape);
}

Word random_word(Rng& rng, const Mpda& m, std::size_t stack, std::size_t length)
{
    Word w;
    const auto& alpha = m.alphabet(stack);
    if (alpha.empty())
        return w;
    for (std::size_t i = 0; i < length; ++i)
        w.push_back(alpha[uniform(rng, 0, alpha.size() - 1)]);
    return w;
}

Configuration random_configuration(Rng& rng, const Mpda& m, StateId q, std::size_t size)
{
    Configuration c{q, std::vector<Word>(m.stack_count())};
    std::vector<std::size_t> usable;
    for (std::size_t i = 0; i < m.stack_count(); ++i) {
        if (!m.alphabet(i).empty())
            usable.push_back(i);
    }
    for (std::size_t k = 0; k < size; ++k) {
        const std::size_t i = usable[uniform(rng, 0, usable.size() - 1)];
        c.stacks[i].push_back(random_word(rng, m, i, 1).front());
    }
    return c;
}

Configuration random_configuration(Rng& rng, const Mpda& m, std::size_t max_size)
{
    StateId q{static_cast<std::uint32_t>(uniform(rng, 0, m.state_count() - 1))};
    return random_configuration(rng, m, q, uniform(rng, 0, max_size));
}

RegSet random_regset(Rng& rng, const Mpda& m, std::size_t max_nfa_states)
{
    RegSet L(m.stack_count());
    for (auto q : m.states()) {
        if (coin(rng, 0.25))
            continue;
        RegComponent comp;
        std::vector<std::uint32_t> sizes;
        for (std::size_t i = 0; i < m.stack_count(); ++i) {
            const auto n = static_cast<std::uint32_t>(uniform(rng, 1, max_nfa_states));
            StackNfa nfa(n);
            for (std::uint32_t s = 0; s < n; ++s) {
                if (s == 0 || coin(rng, 0.3))
                    nfa.add_initial(s);
                for (auto x : m.alphabet(i)) {
                    for (std::uint32_t t = 0; t < n; ++t) {
                        if (coin(rng, 0.45))
                            nfa.add_edge(s, x, t);
                    }
                }
            }
            sizes.push_back(n);
            comp.nfas.push_back(std::move(nfa));
        }
        const std::size_t tuples = uniform(rng, 1, 3);
        for (std::size_t k = 0; k < tuples; ++k) {
            AcceptTuple t;
            for (auto n : sizes)
                t.push_back(static_cast<std::uint32_t>(uniform(rng, 0, n - 1)));
            comp.accept.insert(t);
        }
        L.set_component(q, std::move(comp));
    }
    return L;
}

ColoredConfiguration random_coloring(Rng& rng, const Configuration& c)
{
    ColoredConfiguration out = with_flag(c, false);
    for (auto& w : out.stacks) {
        for (auto& x : w)
            x.flag = coin(rng);
    }
    return out;
}

Witness random_walk(Rng& rng, const Mpda& m, const Configuration& start, std::size_t max_steps)
{
    Witness w{start, {}};
    Configuration cur = start;
    for (std::size_t k = 0; k < max_steps; ++k) {
        auto succ = successors(m, cur);
        if (succ.empty())
            break;
        auto& pick = succ[uniform(rng, 0, succ.size() - 1)];
        w.steps.push_back(pick.first);
        cur = std::move(pick.second);
    }
    return w;
}

} // namespace wmpda::testing
