#include "wmpda/gadgets.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

#include "wmpda/format.hpp"

namespace wmpda {

namespace {

std::vector<std::string> words_of(std::string_view line)
{
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos])))
            ++pos;
        std::size_t end = pos;
        while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end])))
            ++end;
        if (end > pos)
            out.emplace_back(line.substr(pos, end - pos));
        pos = end;
    }
    return out;
}

std::vector<std::string> lines_of(std::string_view text)
{
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string line(text.substr(pos, end - pos));
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        out.push_back(std::move(line));
        pos = end + 1;
    }
    return out;
}

std::size_t to_number(const std::string& s, std::size_t line)
{
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw parse_error(line, "expected a number, got '" + s + "'");
    return v;
}

Word repeat(SymbolId x, std::size_t n)
{
    return Word(n, x);
}

} // namespace

Instance anbncn()
{
    Mpda m(2);
    auto q1 = m.add_state("q1");
    auto q2 = m.add_state("q2");
    auto X = m.add_symbol(0, "X");
    auto B = m.add_symbol(0, "B");
    auto D = m.add_symbol(0, "D");
    auto C = m.add_symbol(1, "C");
    m.add_rule(Rule{q1, X, q1, {{X, B}, {C}}});
    m.add_rule(Rule{q1, X, q1, {{}, {}}});
    m.add_rule(Rule{q1, B, q1, {{}, {}}});
    m.add_rule(Rule{q1, D, q2, {{}, {}}});
    m.add_rule(Rule{q2, C, q2, {{}, {}}});
    Configuration source{q1, {{X, D}, {}}};
    RegSet target = singleton(m, empty_configuration(m, q2));
    return Instance{std::move(m), std::move(source), std::move(target)};
}

Instance expo(std::size_t n)
{
    if (n < 1)
        throw error("expo family needs n >= 1");
    Mpda m(1);
    auto q = m.add_state("q");
    std::vector<SymbolId> xs;
    for (std::size_t i = 1; i <= n; ++i)
        xs.push_back(m.add_symbol(0, "X" + std::to_string(i)));
    for (std::size_t i = 0; i + 1 < n; ++i)
        m.add_rule(Rule{q, xs[i], q, {{xs[i + 1], xs[i + 1]}}});
    m.add_rule(Rule{q, xs[n - 1], q, {{}}});
    Configuration source{q, {{xs[0]}}};
    RegSet target = singleton(m, Configuration{q, {{xs[n - 1]}}});
    return Instance{std::move(m), std::move(source), std::move(target)};
}

Instance nonreg_forward()
{
    Mpda m(2);
    auto q = m.add_state("q");
    auto X = m.add_symbol(0, "X");
    auto A = m.add_symbol(0, "A");
    auto B = m.add_symbol(1, "B");
    m.add_rule(Rule{q, X, q, {{X, A}, {B}}});
    m.add_rule(Rule{q, X, q, {{}, {}}});
    m.add_rule(Rule{q, A, q, {{}, {}}});
    m.add_rule(Rule{q, B, q, {{}, {}}});
    Configuration source{q, {{X}, {}}};
    RegSet target = singleton(m, empty_configuration(m, q));
    return Instance{std::move(m), std::move(source), std::move(target)};
}

CounterSystem parse_counter_system(std::string_view text)
{
    CounterSystem spec;
    bool have_counters = false;
    bool have_source = false;
    auto read_vector = [&](const std::vector<std::string>& w, std::size_t from, std::size_t line) {
        if (w.size() - from != spec.counters)
            throw parse_error(line, "expected " + std::to_string(spec.counters) + " numbers");
        std::vector<std::size_t> v;
        for (std::size_t i = from; i < w.size(); ++i)
            v.push_back(to_number(w[i], line));
        return v;
    };
    auto lines = lines_of(text);
    for (std::size_t li = 0; li < lines.size(); ++li) {
        const std::size_t line = li + 1;
        auto w = words_of(lines[li]);
        if (w.empty())
            continue;
        if (w[0] == "counters:") {
            if (have_counters || w.size() != 2)
                throw parse_error(line, "expected a single 'counters: k' line");
            spec.counters = to_number(w[1], line);
            if (spec.counters == 0)
                throw parse_error(line, "need at least one counter");
            have_counters = true;
        } else if (!have_counters) {
            throw parse_error(line, "expected 'counters: k' first");
        } else if (w[0] == "source:") {
            spec.source = read_vector(w, 1, line);
            have_source = true;
        } else if (w[0] == "target:") {
            spec.target = read_vector(w, 1, line);
        } else if (w[0] == "rule") {
            if (w.size() < 3 || w[2] != "->")
                throw parse_error(line, "expected 'rule i -> n1 .. nk'");
            const std::size_t from = to_number(w[1], line);
            if (from < 1 || from > spec.counters)
                throw parse_error(line, "counter index out of range");
            spec.rules.push_back(CounterSystem::Transfer{from - 1, read_vector(w, 3, line)});
        } else {
            throw parse_error(line, "unexpected '" + w[0] + "'");
        }
    }
    if (!have_counters || !have_source)
        throw parse_error(0, "counter system needs 'counters:' and 'source:'");
    if (spec.target.empty())
        spec.target.assign(spec.counters, 0);
    return spec;
}

Instance comm_free_counters(const CounterSystem& spec)
{
    const std::size_t k = spec.counters;
    if (k == 0 || spec.source.size() != k || spec.target.size() != k)
        throw error("malformed counter system");
    Mpda m(k);
    auto q = m.add_state("q");
    std::vector<SymbolId> c;
    for (std::size_t i = 0; i < k; ++i)
        c.push_back(m.add_symbol(i, "c" + std::to_string(i + 1)));
    for (const auto& t : spec.rules) {
        Rule r{q, c.at(t.from), q, {}};
        for (std::size_t i = 0; i < k; ++i)
            r.push.push_back(repeat(c[i], t.add.at(i)));
        m.add_rule(std::move(r));
    }
    Configuration source{q, {}};
    Configuration target{q, {}};
    for (std::size_t i = 0; i < k; ++i) {
        source.stacks.push_back(repeat(c[i], spec.source[i]));
        target.stacks.push_back(repeat(c[i], spec.target[i]));
    }
    RegSet target_set = singleton(m, target);
    return Instance{std::move(m), std::move(source), std::move(target_set)};
}

Grammar parse_grammar(std::string_view text)
{
    Grammar g;
    std::set<std::string> terminals;
    std::set<std::string> nonterminals;
    auto lines = lines_of(text);
    for (std::size_t li = 0; li < lines.size(); ++li) {
        const std::size_t line = li + 1;
        auto w = words_of(lines[li]);
        if (w.empty())
            continue;
        auto where = " (line " + std::to_string(line) + ")";
        if (w[0] == "terminals:" || w[0] == "nonterminals:") {
            const bool term = w[0] == "terminals:";
            for (std::size_t i = 1; i < w.size(); ++i) {
                if (!is_valid_identifier(w[i]))
                    throw bad_grammar("invalid symbol '" + w[i] + "'" + where);
                if (terminals.contains(w[i]) || nonterminals.contains(w[i]))
                    throw bad_grammar("symbol '" + w[i] + "' declared twice" + where);
                (term ? terminals : nonterminals).insert(w[i]);
                (term ? g.terminals : g.nonterminals).push_back(w[i]);
            }
            continue;
        }
        if (w.size() < 3 || w[1] != "->")
            throw bad_grammar("expected 'X -> a ...'" + where);
        if (!nonterminals.contains(w[0]))
            throw bad_grammar("undeclared nonterminal '" + w[0] + "'" + where);
        std::vector<std::string> alt;
        auto flush = [&]() {
            if (alt.empty())
                throw bad_grammar("empty alternative" + where);
            if (!terminals.contains(alt[0]))
                throw bad_grammar("alternative must start with a terminal, got '" + alt[0] + "'" + where);
            Grammar::Production p{w[0], alt[0], {}};
            for (std::size_t i = 1; i < alt.size(); ++i) {
                if (!nonterminals.contains(alt[i]))
                    throw bad_grammar("expected a nonterminal after the leading terminal, got '" + alt[i] + "'" +
                                      where);
                p.rest.push_back(alt[i]);
            }
            g.productions.push_back(std::move(p));
            alt.clear();
        };
        for (std::size_t i = 2; i < w.size(); ++i) {
            if (w[i] == "|")
                flush();
            else
                alt.push_back(w[i]);
        }
        flush();
    }
    if (g.nonterminals.empty())
        throw bad_grammar("no nonterminals declared");
    return g;
}

Instance cfg_intersection(const Grammar& g1, const Grammar& g2)
{
    Mpda m(3);
    auto q = m.add_state("q");
    const Grammar* gs[2] = {&g1, &g2};
    for (std::size_t gi = 0; gi < 2; ++gi) {
        for (const auto& x : gs[gi]->nonterminals)
            m.add_symbol(gi, x + "@" + std::to_string(gi + 1));
    }
    std::vector<std::string> shared;
    for (std::size_t gi = 0; gi < 2; ++gi) {
        for (const auto& a : gs[gi]->terminals)
            m.add_symbol(2, a + "." + std::to_string(gi + 1));
    }
    for (const auto& a : g1.terminals) {
        if (std::find(g2.terminals.begin(), g2.terminals.end(), a) != g2.terminals.end())
            shared.push_back(a);
    }
    for (std::size_t gi = 0; gi < 2; ++gi) {
        const std::string tag = std::to_string(gi + 1);
        for (const auto& p : gs[gi]->productions) {
            Rule r{q, *m.find_symbol(p.lhs + "@" + tag), q, {{}, {}, {}}};
            for (const auto& y : p.rest)
                r.push[gi].push_back(*m.find_symbol(y + "@" + tag));
            r.push[2].push_back(*m.find_symbol(p.terminal + "." + tag));
            m.add_rule(std::move(r));
        }
    }
    Configuration source{q,
                         {{*m.find_symbol(g1.nonterminals.front() + "@1")},
                          {*m.find_symbol(g2.nonterminals.front() + "@2")},
                          {}}};

    RegComponent comp;
    comp.nfas.emplace_back(1);
    comp.nfas.back().add_initial(0);
    comp.nfas.emplace_back(1);
    comp.nfas.back().add_initial(0);
    StackNfa pairs(1);
    pairs.add_initial(0);
    for (const auto& a : shared) {
        const auto mid = pairs.add_state();
        pairs.add_edge(0, *m.find_symbol(a + ".1"), mid);
        pairs.add_edge(mid, *m.find_symbol(a + ".2"), 0);
    }
    comp.nfas.push_back(std::move(pairs));
    comp.accept.insert(AcceptTuple{0, 0, 0});
    RegSet target(3);
    target.set_component(q, std::move(comp));
    return Instance{std::move(m), std::move(source), std::move(target)};
}

Instance generate(const std::string& family)
{
    auto colon = family.find(':');
    const std::string head = family.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : family.substr(colon + 1);
    if (head == "anbncn" && rest.empty())
        return anbncn();
    if (head == "nonreg-forward" && rest.empty())
        return nonreg_forward();
    if (head == "expo") {
        std::size_t n = 0;
        auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), n);
        if (rest.empty() || ec != std::errc() || ptr != rest.data() + rest.size() || n < 1)
            throw error("expo needs a positive size, e.g. expo:4");
        return expo(n);
    }
    if (head == "commfree" && !rest.empty())
        return comm_free_counters(parse_counter_system(read_file(rest)));
    if (head == "cfg") {
        auto sep = rest.find(':');
        if (sep == std::string::npos)
            throw error("cfg needs two grammar files, e.g. cfg:G1:G2");
        return cfg_intersection(parse_grammar(read_file(rest.substr(0, sep))),
                                parse_grammar(read_file(rest.substr(sep + 1))));
    }
    throw error("unknown family '" + family + "'");
}

} // namespace wmpda
