#include <map>
#include <sstream>

#include "wmpda/format.hpp"
#include "wmpda/regset.hpp"

namespace wmpda {

namespace {

class TokenStream {
public:
    explicit TokenStream(std::string_view text)
    {
        for (auto& line : detail::tokenize(text)) {
            for (auto& tok : line)
                _tokens.push_back(std::move(tok));
        }
    }

    [[nodiscard]] bool done() const { return _pos >= _tokens.size(); }

    [[nodiscard]] const detail::Token& peek() const
    {
        if (done())
            throw parse_error(_tokens.empty() ? 0 : _tokens.back().line, "unexpected end of input");
        return _tokens[_pos];
    }

    const detail::Token& next()
    {
        const auto& tok = peek();
        ++_pos;
        return tok;
    }

    const detail::Token& expect(std::string_view what)
    {
        const auto& tok = next();
        if (tok.text != what)
            throw parse_error(tok.line, "expected '" + std::string(what) + "', got '" + tok.text + "'");
        return tok;
    }

    bool accept(std::string_view what)
    {
        if (!done() && peek().text == what) {
            ++_pos;
            return true;
        }
        return false;
    }

private:
    std::vector<detail::Token> _tokens;
    std::size_t _pos = 0;
};

struct ParsedNfa {
    StackNfa nfa;
    std::map<std::string, std::uint32_t> names;
};

std::uint32_t lookup(const ParsedNfa& p, const detail::Token& tok)
{
    auto it = p.names.find(tok.text);
    if (it == p.names.end())
        throw parse_error(tok.line, "undeclared automaton state '" + tok.text + "'");
    return it->second;
}

ParsedNfa parse_nfa(const Mpda& m, TokenStream& ts, std::size_t stack)
{
    ParsedNfa p;
    ts.expect("{");
    const auto& head = ts.expect("states");
    ts.expect(":");
    while (ts.peek().text != ";" && ts.peek().text != "}") {
        const auto& tok = ts.next();
        if (p.names.contains(tok.text))
            throw parse_error(tok.line, "duplicate automaton state '" + tok.text + "'");
        p.names.emplace(tok.text, p.nfa.add_state());
    }
    if (p.names.empty())
        throw parse_error(head.line, "an automaton needs at least one state");
    bool saw_initial = false;
    while (ts.accept(";")) {
        if (ts.peek().text == "}")
            break;
        const auto& kw = ts.next();
        if (kw.text == "initial") {
            if (saw_initial)
                throw parse_error(kw.line, "'initial:' given twice");
            saw_initial = true;
            ts.expect(":");
            while (ts.peek().text != ";" && ts.peek().text != "}")
                p.nfa.add_initial(lookup(p, ts.next()));
        } else if (kw.text == "edge") {
            auto from = lookup(p, ts.next());
            const auto& sym = ts.next();
            auto x = m.find_symbol(sym.text);
            if (!x)
                throw parse_error(sym.line, "undeclared symbol '" + sym.text + "'");
            if (m.stack_of(*x) != stack)
                throw parse_error(sym.line, "symbol '" + sym.text + "' does not belong to stack " +
                                                std::to_string(stack + 1));
            auto to = lookup(p, ts.next());
            p.nfa.add_edge(from, *x, to);
        } else {
            throw parse_error(kw.line, "unexpected '" + kw.text + "' in automaton");
        }
    }
    const auto& close = ts.expect("}");
    if (!saw_initial || p.nfa.initials().empty())
        throw parse_error(close.line, "automaton needs a nonempty 'initial:' list");
    return p;
}

} // namespace

RegSet parse_regset(const Mpda& m, std::string_view text)
{
    TokenStream ts(text);
    ts.expect("regset");
    if (!ts.done() && (ts.peek().text == "relaxed" || ts.peek().text == "padded"))
        throw parse_error(ts.peek().line,
                          "relaxed regular sets (over the padded product alphabet) are not supported: "
                          "reachability towards such targets is undecidable in general");
    ts.expect("{");
    RegSet out(m.stack_count());
    while (!ts.accept("}")) {
        const auto& kw = ts.expect("state");
        const auto& qtok = ts.next();
        auto q = m.find_state(qtok.text);
        if (!q)
            throw parse_error(qtok.line, "undeclared state '" + qtok.text + "'");
        if (out.component(*q))
            throw parse_error(qtok.line, "state '" + qtok.text + "' described twice");
        ts.expect("{");
        std::vector<std::optional<ParsedNfa>> nfas(m.stack_count());
        for (std::size_t n = 0; n < m.stack_count(); ++n) {
            const auto& nk = ts.expect("nfa");
            const auto& idx = ts.next();
            std::size_t i = 0;
            try {
                i = std::stoul(idx.text);
            } catch (...) {
                throw parse_error(idx.line, "expected an automaton index, got '" + idx.text + "'");
            }
            if (i == 0 || i > m.stack_count())
                throw parse_error(idx.line, "automaton index " + idx.text + " out of range");
            if (nfas[i - 1])
                throw parse_error(nk.line, "automaton " + idx.text + " given twice");
            nfas[i - 1] = parse_nfa(m, ts, i - 1);
        }
        ts.expect("accept");
        ts.expect(":");
        RegComponent comp;
        while (ts.accept("(")) {
            AcceptTuple t;
            while (ts.peek().text != ")") {
                if (t.size() >= m.stack_count())
                    throw parse_error(ts.peek().line, "accepting tuple has too many entries");
                t.push_back(lookup(*nfas[t.size()], ts.next()));
            }
            const auto& close = ts.expect(")");
            if (t.size() != m.stack_count())
                throw parse_error(close.line, "accepting tuple needs " + std::to_string(m.stack_count()) + " entries");
            comp.accept.insert(std::move(t));
        }
        ts.expect("}");
        for (auto& p : nfas)
            comp.nfas.push_back(std::move(p->nfa));
        try {
            out.set_component(*q, std::move(comp));
        } catch (const error& e) {
            throw parse_error(kw.line, e.what());
        }
    }
    if (!ts.done())
        throw parse_error(ts.peek().line, "trailing input after regset");
    return out;
}

std::string serialize_regset(const Mpda& m, const RegSet& L)
{
    std::ostringstream out;
    out << "regset {\n";
    for (const auto& [q, comp] : L.components()) {
        out << "  state " << m.state_name(q) << " {\n";
        for (std::size_t i = 0; i < comp.nfas.size(); ++i) {
            const auto& nfa = comp.nfas[i];
            out << "    nfa " << i + 1 << " { states:";
            for (std::uint32_t s = 0; s < nfa.state_count(); ++s)
                out << " s" << s;
            out << " ; initial:";
            for (auto s : nfa.initials())
                out << " s" << s;
            for (const auto& e : nfa.edges())
                out << " ; edge s" << e.from << ' ' << m.symbol_name(e.symbol) << " s" << e.to;
            out << " }\n";
        }
        out << "    accept:";
        for (const auto& t : comp.accept) {
            out << " (";
            for (std::size_t i = 0; i < t.size(); ++i)
                out << (i ? " s" : "s") << t[i];
            out << ')';
        }
        out << "\n  }\n";
    }
    out << "}\n";
    return out.str();
}

} // namespace wmpda
