#include "wmpda/marked.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>

#include "wmpda/format.hpp"
#include "wmpda/wqo.hpp"

namespace wmpda {

namespace {

constexpr std::size_t max_word_length = 20;

std::size_t highest_bit(std::uint64_t x)
{
    return 63 - static_cast<std::size_t>(__builtin_clzll(x));
}

} // namespace

bool selection_valid(std::size_t n, const Selection& s)
{
    if (n > 63 || s.prefix > n || (n < 64 && (s.kept >> n) != 0))
        return false;
    const std::uint64_t all = (1ULL << n) - 1;
    const std::uint64_t colored = all & ~s.kept;
    // Every position above a colored one lies in the marked prefix.
    return colored == 0 || highest_bit(colored) <= s.prefix;
}

MarkedWord apply_selection(const Word& w, const Selection& s)
{
    MarkedWord out;
    for (std::size_t d = 0; d < w.size(); ++d) {
        if ((s.kept >> d) & 1)
            out.push_back(FlaggedSymbol{w[d], d < s.prefix});
    }
    return out;
}

std::vector<MarkedSubword> mk_subwords(const Word& w)
{
    const std::size_t n = w.size();
    if (n > max_word_length)
        throw too_large("word too long for marked subword enumeration");
    std::map<MarkedWord, Selection> found;
    const std::uint64_t all = (1ULL << n) - 1;
    for (std::uint64_t colored = 0; colored <= all; ++colored) {
        const std::size_t lowest_prefix = colored == 0 ? 0 : highest_bit(colored);
        for (std::size_t p = lowest_prefix; p <= n; ++p) {
            Selection s{all & ~colored, p};
            found.emplace(apply_selection(w, s), s);
        }
    }
    std::vector<MarkedSubword> out;
    out.reserve(found.size());
    for (auto& [word, sel] : found)
        out.push_back(MarkedSubword{word, sel});
    return out;
}

std::vector<MarkedWord> marked_subwords_for_coloring(const Word& w, const std::vector<std::size_t>& colored)
{
    const std::size_t n = w.size();
    if (n > max_word_length)
        throw too_large("word too long for marked subword enumeration");
    std::uint64_t mask = 0;
    for (auto d : colored) {
        if (d >= n)
            throw error("colored position out of range");
        mask |= 1ULL << d;
    }
    std::set<MarkedWord> found;
    const std::size_t lowest_prefix = mask == 0 ? 0 : highest_bit(mask);
    for (std::size_t p = lowest_prefix; p <= n; ++p)
        found.insert(apply_selection(w, Selection{((1ULL << n) - 1) & ~mask, p}));
    return {found.begin(), found.end()};
}

std::size_t MarkedSubtransition::rhs_size() const
{
    std::size_t n = 0;
    for (const auto& w : pushes)
        n += w.size();
    return n;
}

std::vector<MarkedSubtransition> mk_subtransitions(const Mpda& m, std::size_t rule, bool lhs_marked)
{
    const Rule& r = m.rule(rule);
    const std::size_t popped = m.stack_of(r.pop);
    std::vector<std::vector<MarkedSubword>> choices;
    for (std::size_t j = 0; j < r.push.size(); ++j) {
        auto all = mk_subwords(r.push[j]);
        if (lhs_marked && j == popped) {
            std::erase_if(all, [](const MarkedSubword& s) {
                return !std::all_of(s.word.begin(), s.word.end(), [](const FlaggedSymbol& x) { return x.flag; });
            });
        }
        choices.push_back(std::move(all));
    }

    std::vector<MarkedSubtransition> out;
    std::vector<std::size_t> pick(choices.size(), 0);
    if (std::any_of(choices.begin(), choices.end(), [](const auto& c) { return c.empty(); }))
        return out;
    while (true) {
        MarkedSubtransition st{rule, lhs_marked, {}, {}};
        for (std::size_t j = 0; j < choices.size(); ++j) {
            st.pushes.push_back(choices[j][pick[j]].word);
            st.selections.push_back(choices[j][pick[j]].selection);
        }
        if (r.changes_state() || st.rhs_size() > 0)
            out.push_back(std::move(st));
        std::size_t j = choices.size();
        while (j > 0 && pick[j - 1] + 1 == choices[j - 1].size()) {
            pick[j - 1] = 0;
            --j;
        }
        if (j == 0)
            break;
        ++pick[j - 1];
    }
    return out;
}

std::vector<MarkedSubtransition> mk_subtransitions(const Mpda& m)
{
    std::vector<MarkedSubtransition> out;
    for (std::size_t i = 0; i < m.rules().size(); ++i) {
        for (bool marked : {false, true}) {
            auto part = mk_subtransitions(m, i, marked);
            out.insert(out.end(), part.begin(), part.end());
        }
    }
    return out;
}

const std::vector<MarkedSubtransition>& SubtransitionCache::get(std::size_t rule, bool lhs_marked)
{
    auto key = std::make_pair(rule, lhs_marked);
    auto it = _cache.find(key);
    if (it == _cache.end())
        it = _cache.emplace(key, mk_subtransitions(_m, rule, lhs_marked)).first;
    return it->second;
}

std::optional<MarkedConfiguration> apply_subtransition(const Mpda& m, const MarkedConfiguration& c,
                                                       const MarkedSubtransition& st)
{
    const Rule& r = m.rule(st.rule);
    const std::size_t popped = m.stack_of(r.pop);
    if (c.state != r.from || c.stacks[popped].empty())
        return std::nullopt;
    const FlaggedSymbol top = c.stacks[popped].front();
    if (top.symbol != r.pop || top.flag != st.lhs_marked)
        return std::nullopt;
    MarkedConfiguration next{r.to, {}};
    for (std::size_t j = 0; j < c.stacks.size(); ++j) {
        MarkedWord w = st.pushes[j];
        w.insert(w.end(), c.stacks[j].begin() + (j == popped ? 1 : 0), c.stacks[j].end());
        next.stacks.push_back(std::move(w));
    }
    return next;
}

std::vector<std::pair<MarkedConfiguration, std::vector<Selection>>> marked_subconfigurations(const Configuration& c,
                                                                                              std::size_t max_size)
{
    std::vector<std::vector<MarkedSubword>> choices;
    for (const auto& w : c.stacks)
        choices.push_back(mk_subwords(w));
    std::vector<std::pair<MarkedConfiguration, std::vector<Selection>>> out;
    std::vector<std::size_t> pick(choices.size(), 0);
    while (true) {
        MarkedConfiguration u{c.state, {}};
        std::vector<Selection> sel;
        std::size_t size = 0;
        for (std::size_t j = 0; j < choices.size(); ++j) {
            u.stacks.push_back(choices[j][pick[j]].word);
            sel.push_back(choices[j][pick[j]].selection);
            size += u.stacks.back().size();
        }
        if (size <= max_size)
            out.emplace_back(std::move(u), std::move(sel));
        std::size_t j = choices.size();
        while (j > 0 && pick[j - 1] + 1 == choices[j - 1].size()) {
            pick[j - 1] = 0;
            --j;
        }
        if (j == 0)
            break;
        ++pick[j - 1];
    }
    return out;
}

void require_marked_preconditions(const Mpda& m)
{
    if (!is_weak(m).weak)
        throw not_weak("the marked decider requires a weak automaton");
    auto sn = is_strongly_normed(m);
    if (!sn.strongly_normed) {
        throw precondition_failed("the marked decider requires a strongly normed automaton; (" +
                                  m.state_name(sn.failing->first) + "," + m.symbol_name(sn.failing->second) +
                                  ") cannot be erased");
    }
}

MarkedVerdict decide_marked(const Mpda& m, const Configuration& s, const Configuration& t)
{
    return decide_marked(m, std::vector<Configuration>{s}, t);
}

MarkedVerdict decide_marked(const Mpda& m, const std::vector<Configuration>& sources, const Configuration& t)
{
    require_marked_preconditions(m);
    MarkedVerdict verdict;
    verdict.bound = t.size() + m.state_count();
    const MarkedConfiguration target = with_flag(t, false);

    struct Node {
        std::optional<std::size_t> parent;
        std::optional<MarkedSubtransition> via; // unset on start nodes
        std::size_t source = 0;
        std::vector<Selection> start_selection;
    };
    std::vector<MarkedConfiguration> configs;
    std::vector<Node> nodes;
    std::unordered_map<MarkedConfiguration, std::size_t, FlaggedConfigurationHash> index;
    std::deque<std::size_t> queue;

    auto finish = [&](std::size_t at) {
        MarkedPath path;
        std::vector<std::size_t> chain;
        for (std::optional<std::size_t> k = at; k; k = nodes[*k].parent)
            chain.push_back(*k);
        std::reverse(chain.begin(), chain.end());
        path.start = configs[chain.front()];
        path.start_selection = nodes[chain.front()].start_selection;
        for (std::size_t i = 1; i < chain.size(); ++i)
            path.steps.push_back(MarkedStep{*nodes[chain[i]].via, configs[chain[i]]});
        check_marked_path(m, path);
        verdict.reachable = true;
        verdict.source_index = nodes[chain.front()].source;
        verdict.path = std::move(path);
        verdict.explored = configs.size();
        return verdict;
    };

    for (std::size_t si = 0; si < sources.size(); ++si) {
        for (auto& [u, sel] : marked_subconfigurations(sources[si], verdict.bound)) {
            if (index.contains(u))
                continue;
            index.emplace(u, configs.size());
            configs.push_back(u);
            nodes.push_back(Node{std::nullopt, std::nullopt, si, sel});
            if (u == target)
                return finish(configs.size() - 1);
            queue.push_back(configs.size() - 1);
        }
    }

    SubtransitionCache cache(m);
    while (!queue.empty()) {
        const std::size_t k = queue.front();
        queue.pop_front();
        const MarkedConfiguration cur = configs[k];
        for (std::size_t i = 0; i < cur.stacks.size(); ++i) {
            if (cur.stacks[i].empty())
                continue;
            const FlaggedSymbol top = cur.stacks[i].front();
            for (auto idx : m.rules_for(cur.state, top.symbol)) {
                for (const auto& st : cache.get(idx, top.flag)) {
                    if (cur.size() - 1 + st.rhs_size() > verdict.bound)
                        continue;
                    auto next = apply_subtransition(m, cur, st);
                    if (!next || index.contains(*next))
                        continue;
                    index.emplace(*next, configs.size());
                    configs.push_back(std::move(*next));
                    nodes.push_back(Node{k, st, nodes[k].source, {}});
                    if (configs.back() == target)
                        return finish(configs.size() - 1);
                    queue.push_back(configs.size() - 1);
                }
            }
        }
    }
    verdict.explored = configs.size();
    return verdict;
}

void check_marked_path(const Mpda& m, const MarkedPath& path)
{
    std::size_t size = path.start.size();
    // Size of the configuration entering the current stage.
    std::size_t stage_entry = size;
    for (const auto& st : path.steps) {
        const std::size_t next = st.result.size();
        if (m.rule(st.sub.rule).changes_state()) {
            if (next + 1 < size)
                throw error("marked path: size dropped by more than one at a state change");
            if (stage_entry > size)
                throw error("marked path: stage ended smaller than it started");
            stage_entry = next;
        } else if (next < size) {
            throw error("marked path: size decreased across a state-preserving step");
        }
        size = next;
    }
}

Witness reconstruct(const Mpda& m, const Configuration& s, const MarkedPath& path, const CancelTable& cancel)
{
    if (path.start_selection.size() != s.stacks.size())
        throw reconstruction_failed("start selection does not match the source");
    // Shadow of the concrete configuration: flagged = colored.
    FlaggedConfiguration shadow{s.state, {}};
    for (std::size_t i = 0; i < s.stacks.size(); ++i) {
        if (!selection_valid(s.stacks[i].size(), path.start_selection[i]))
            throw reconstruction_failed("invalid start selection");
        FlaggedWord w;
        for (std::size_t d = 0; d < s.stacks[i].size(); ++d)
            w.push_back(FlaggedSymbol{s.stacks[i][d], ((path.start_selection[i].kept >> d) & 1) == 0});
        shadow.stacks.push_back(std::move(w));
    }

    Witness out{s, {}};
    auto fire = [&](std::size_t idx, const std::vector<Selection>* selections) {
        const Rule& r = m.rule(idx);
        const std::size_t popped = m.stack_of(r.pop);
        if (shadow.state != r.from || shadow.stacks[popped].empty() || shadow.stacks[popped].front().symbol != r.pop)
            throw reconstruction_failed("rule '" + format_rule(m, r) + "' not enabled during reconstruction");
        FlaggedConfiguration next{r.to, {}};
        for (std::size_t j = 0; j < shadow.stacks.size(); ++j) {
            FlaggedWord w;
            for (std::size_t d = 0; d < r.push[j].size(); ++d) {
                const bool colored = selections ? ((*selections)[j].kept >> d & 1) == 0 : false;
                w.push_back(FlaggedSymbol{r.push[j][d], colored});
            }
            w.insert(w.end(), shadow.stacks[j].begin() + (j == popped ? 1 : 0), shadow.stacks[j].end());
            next.stacks.push_back(std::move(w));
        }
        shadow = std::move(next);
        out.steps.push_back(idx);
    };
    auto cancel_surfaced = [&]() {
        bool again = true;
        while (again) {
            again = false;
            for (std::size_t i = 0; i < shadow.stacks.size(); ++i) {
                if (shadow.stacks[i].empty() || !shadow.stacks[i].front().flag)
                    continue;
                const SymbolId x = shadow.stacks[i].front().symbol;
                auto it = cancel.find({shadow.state, x});
                if (it == cancel.end())
                    throw reconstruction_failed("no canceling sequence for " + m.symbol_name(x));
                // Firing a canceling sequence on a colored top: everything it
                // pushes is transient and erased again by the sequence itself.
                const std::size_t depth = shadow.stacks[i].size();
                fire(it->second.front(), nullptr);
                for (std::size_t k = 1; k < it->second.size(); ++k)
                    fire(it->second[k], nullptr);
                if (shadow.stacks[i].size() != depth - 1)
                    throw reconstruction_failed("canceling sequence did not erase exactly one symbol");
                again = true;
            }
        }
    };

    cancel_surfaced();
    for (const auto& st : path.steps) {
        const Rule& r = m.rule(st.sub.rule);
        const std::size_t popped = m.stack_of(r.pop);
        if (shadow.stacks[popped].empty() || shadow.stacks[popped].front().flag)
            throw reconstruction_failed("marked step does not match the concrete top");
        fire(st.sub.rule, &st.sub.selections);
        cancel_surfaced();
    }
    const Configuration final_config = replay(m, out);
    const Configuration expected = strip(path.steps.empty() ? path.start : path.steps.back().result);
    if (final_config != expected || shadow.flagged_count() != 0)
        throw reconstruction_failed("reconstructed witness ends in " + format_configuration(m, final_config) +
                                    " instead of " + format_configuration(m, expected));
    return out;
}

std::size_t default_tgt_cap(const Mpda& m, const RegSet& K)
{
    std::size_t largest = 0;
    for (const auto& [q, comp] : K.components()) {
        for (const auto& nfa : comp.nfas)
            largest = std::max<std::size_t>(largest, nfa.state_count());
    }
    return (largest + 1) * (largest + 1) * (m.state_count() + m.max_rhs_size());
}

RegRegVerdict decide_regreg(const Mpda& m, const RegSet& L, const RegSet& K, const RegRegCaps& caps)
{
    require_marked_preconditions(m);
    RegRegVerdict verdict;
    verdict.tgt_cap = caps.tgt_cap.value_or(default_tgt_cap(m, K));
    const auto cancel = is_strongly_normed(m).cancel;
    for (const auto& t : enumerate_members(m, K, verdict.tgt_cap)) {
        ++verdict.targets_tried;
        verdict.src_cap = caps.src_cap.value_or(default_src_cap(m, L, t.size()));
        const auto sources = enumerate_members(m, L, verdict.src_cap);
        if (sources.empty())
            continue;
        auto v = decide_marked(m, sources, t);
        if (v.reachable) {
            verdict.reachable = true;
            verdict.witness = reconstruct(m, sources[v.source_index], *v.path, cancel);
            return verdict;
        }
    }
    return verdict;
}

std::string serialize_marked_path(const Mpda& m, const MarkedPath& path)
{
    std::string out = format_flagged_configuration(m, path.start) + "\n";
    for (const auto& st : path.steps) {
        const Rule& r = m.rule(st.sub.rule);
        out += "rule " + m.state_name(r.from) + " " + (st.sub.lhs_marked ? "~" : "") + m.symbol_name(r.pop) + " -> " +
               m.state_name(r.to) + " :";
        for (std::size_t j = 0; j < st.sub.pushes.size(); ++j) {
            if (j > 0)
                out += " |";
            out += format_flagged_word(m, st.sub.pushes[j]);
        }
        out += "\n";
    }
    return out;
}

} // namespace wmpda
