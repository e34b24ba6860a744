#include "wmpda/format.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace wmpda {

namespace {

bool is_punct(char c)
{
    return c == ':' || c == '|' || c == '(' || c == ')';
}

std::string join_word(const Mpda& m, const Word& w)
{
    std::string out;
    for (auto x : w)
        out += " " + m.symbol_name(x);
    return out;
}

std::string join_words(const Mpda& m, const std::vector<Word>& words)
{
    std::string out;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (i > 0)
            out += " |";
        out += join_word(m, words[i]);
    }
    return out;
}

std::size_t parse_count(const detail::Token& tok)
{
    if (tok.text.empty() || !std::all_of(tok.text.begin(), tok.text.end(), [](char c) { return std::isdigit(c); }))
        throw parse_error(tok.line, "expected a number, got '" + tok.text + "'");
    return std::stoul(tok.text);
}

void expect(const std::vector<detail::Token>& line, std::size_t pos, std::string_view what)
{
    if (pos >= line.size())
        throw parse_error(line.empty() ? 0 : line.back().line, "expected '" + std::string(what) + "' at end of line");
    if (line[pos].text != what)
        throw parse_error(line[pos].line, "expected '" + std::string(what) + "', got '" + line[pos].text + "'");
}

} // namespace

bool is_valid_identifier(std::string_view name)
{
    if (name.empty() || name == "->" || name.front() == '~')
        return false;
    for (unsigned char c : name) {
        if (!std::isprint(c) || std::isspace(c) || is_punct(static_cast<char>(c)) || c == '#')
            return false;
    }
    return true;
}

namespace detail {

std::vector<std::vector<Token>> tokenize(std::string_view text)
{
    std::vector<std::vector<Token>> lines;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos)
            eol = text.size();
        ++line_no;
        std::string_view line = text.substr(pos, eol - pos);
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        std::vector<Token> toks;
        std::string cur;
        auto flush = [&] {
            if (!cur.empty())
                toks.push_back(Token{cur, line_no});
            cur.clear();
        };
        for (char c : line) {
            if (std::isspace(static_cast<unsigned char>(c))) {
                flush();
            } else if (is_punct(c)) {
                flush();
                toks.push_back(Token{std::string(1, c), line_no});
            } else {
                cur.push_back(c);
            }
        }
        flush();
        if (!toks.empty())
            lines.push_back(std::move(toks));
        pos = eol + 1;
    }
    return lines;
}

bool is_arrow(std::string_view token)
{
    return token == "->" || (token.size() > 3 && token.front() == '-' && token.ends_with("->"));
}

std::vector<FlaggedWord> parse_flagged_words(const Mpda& m, const std::vector<Token>& tokens, std::size_t begin,
                                             std::size_t end, bool allow_flags)
{
    std::vector<FlaggedWord> words(1);
    const std::size_t line = begin < tokens.size() ? tokens[begin].line : (tokens.empty() ? 0 : tokens.back().line);
    for (std::size_t p = begin; p < end; ++p) {
        const auto& tok = tokens[p];
        if (tok.text == "|") {
            words.emplace_back();
            continue;
        }
        std::string_view name = tok.text;
        bool flag = false;
        if (allow_flags && name.size() > 1 && name.front() == '~') {
            flag = true;
            name.remove_prefix(1);
        }
        auto x = m.find_symbol(name);
        if (!x)
            throw parse_error(tok.line, "undeclared symbol '" + std::string(name) + "'");
        const std::size_t stack = words.size() - 1;
        if (stack >= m.stack_count())
            throw parse_error(tok.line, "too many stacks: expected " + std::to_string(m.stack_count()));
        if (m.stack_of(*x) != stack)
            throw parse_error(tok.line, "symbol '" + std::string(name) + "' belongs to stack " +
                                            std::to_string(m.stack_of(*x) + 1) + ", found on stack " +
                                            std::to_string(stack + 1));
        words.back().push_back(FlaggedSymbol{*x, flag});
    }
    if (words.size() != m.stack_count())
        throw parse_error(line, "expected " + std::to_string(m.stack_count()) + " stack words, got " +
                                    std::to_string(words.size()));
    return words;
}

FlaggedConfiguration parse_flagged_tokens(const Mpda& m, const std::vector<Token>& tokens, std::size_t begin,
                                          std::size_t end, bool allow_flags)
{
    if (begin >= end)
        throw parse_error(tokens.empty() ? 0 : tokens.back().line, "empty configuration literal");
    const auto& head = tokens[begin];
    auto q = m.find_state(head.text);
    if (!q)
        throw parse_error(head.line, "undeclared state '" + head.text + "'");
    if (begin + 1 >= end || tokens[begin + 1].text != ":")
        throw parse_error(head.line, "expected ':' after state in configuration literal");
    return FlaggedConfiguration{*q, parse_flagged_words(m, tokens, begin + 2, end, allow_flags)};
}

} // namespace detail

Mpda parse_mpda(std::string_view text)
{
    auto lines = detail::tokenize(text);
    if (lines.empty())
        throw parse_error(0, "empty input, expected 'mpda {'");
    auto& first = lines.front();
    if (first.size() != 2 || first[0].text != "mpda" || first[1].text != "{")
        throw parse_error(first[0].line, "expected 'mpda {'");
    if (lines.back().size() != 1 || lines.back()[0].text != "}")
        throw parse_error(lines.back().back().line, "expected closing '}'");

    std::vector<std::string> state_names;
    std::optional<std::size_t> stacks;
    std::vector<std::optional<std::vector<detail::Token>>> alphabets;
    std::optional<Mpda> m;
    std::size_t body_end = lines.size() - 1;

    auto build = [&](std::size_t line) -> Mpda& {
        if (m)
            return *m;
        if (state_names.empty())
            throw parse_error(line, "'states:' must be declared before rules");
        if (!stacks)
            throw parse_error(line, "'stacks:' must be declared before rules");
        m.emplace(*stacks);
        for (const auto& q : state_names)
            m->add_state(q);
        bool any = false;
        for (std::size_t i = 0; i < *stacks; ++i) {
            if (!alphabets[i])
                continue;
            for (const auto& tok : *alphabets[i]) {
                try {
                    m->add_symbol(i, tok.text);
                } catch (const error& e) {
                    throw parse_error(tok.line, e.what());
                }
                any = true;
            }
        }
        if (!any)
            throw parse_error(line, "every stack alphabet is empty");
        return *m;
    };

    for (std::size_t li = 1; li < body_end; ++li) {
        const auto& line = lines[li];
        const auto& kw = line[0];
        if (kw.text == "states") {
            if (m || !state_names.empty())
                throw parse_error(kw.line, "unexpected 'states:' declaration");
            expect(line, 1, ":");
            for (std::size_t p = 2; p < line.size(); ++p) {
                if (!is_valid_identifier(line[p].text))
                    throw parse_error(line[p].line, "invalid state name '" + line[p].text + "'");
                if (std::find(state_names.begin(), state_names.end(), line[p].text) != state_names.end())
                    throw parse_error(line[p].line, "duplicate state '" + line[p].text + "'");
                state_names.push_back(line[p].text);
            }
            if (state_names.empty())
                throw parse_error(kw.line, "at least one state is required");
        } else if (kw.text == "stacks") {
            if (m || stacks)
                throw parse_error(kw.line, "unexpected 'stacks:' declaration");
            expect(line, 1, ":");
            if (line.size() != 3)
                throw parse_error(kw.line, "expected 'stacks: <k>'");
            stacks = parse_count(line[2]);
            if (*stacks == 0)
                throw parse_error(kw.line, "at least one stack is required");
            alphabets.assign(*stacks, std::nullopt);
        } else if (kw.text == "alphabet") {
            if (m)
                throw parse_error(kw.line, "alphabets must be declared before rules");
            if (!stacks)
                throw parse_error(kw.line, "'stacks:' must be declared before alphabets");
            if (line.size() < 3)
                throw parse_error(kw.line, "expected 'alphabet <i>: symbols...'");
            const std::size_t i = parse_count(line[1]);
            if (i == 0 || i > *stacks)
                throw parse_error(kw.line, "alphabet index " + line[1].text + " out of range");
            expect(line, 2, ":");
            if (alphabets[i - 1])
                throw parse_error(kw.line, "alphabet " + line[1].text + " declared twice");
            alphabets[i - 1] = std::vector<detail::Token>(line.begin() + 3, line.end());
        } else if (kw.text == "rule") {
            Mpda& mm = build(kw.line);
            // rule FROM POP ARROW TO : pushes
            if (line.size() < 6)
                throw parse_error(kw.line, "expected 'rule <from> <pop> -> <to> : <push1> | ... | <pushk>'");
            auto from = mm.find_state(line[1].text);
            if (!from)
                throw parse_error(line[1].line, "undeclared state '" + line[1].text + "'");
            auto pop = mm.find_symbol(line[2].text);
            if (!pop)
                throw parse_error(line[2].line, "undeclared symbol '" + line[2].text + "'");
            if (!detail::is_arrow(line[3].text))
                throw parse_error(line[3].line, "expected '->', got '" + line[3].text + "'");
            auto to = mm.find_state(line[4].text);
            if (!to)
                throw parse_error(line[4].line, "undeclared state '" + line[4].text + "'");
            expect(line, 5, ":");
            auto words = detail::parse_flagged_words(mm, line, 6, line.size(), false);
            Rule r{*from, *pop, *to, {}};
            for (const auto& w : words)
                r.push.push_back(strip(w));
            try {
                mm.add_rule(std::move(r));
            } catch (const error& e) {
                throw parse_error(kw.line, e.what());
            }
        } else {
            throw parse_error(kw.line, "unexpected '" + kw.text + "'");
        }
    }
    return std::move(build(lines.back()[0].line));
}

std::string serialize_mpda(const Mpda& m)
{
    std::ostringstream out;
    out << "mpda {\n  states:";
    for (auto q : m.states())
        out << ' ' << m.state_name(q);
    out << "\n  stacks: " << m.stack_count() << '\n';
    for (std::size_t i = 0; i < m.stack_count(); ++i)
        out << "  alphabet " << i + 1 << ':' << join_word(m, m.alphabet(i)) << '\n';
    for (const auto& r : m.rules())
        out << "  " << format_rule(m, r) << '\n';
    out << "}\n";
    return out.str();
}

Configuration parse_configuration(const Mpda& m, std::string_view text)
{
    auto lines = detail::tokenize(text);
    if (lines.size() != 1)
        throw parse_error(lines.empty() ? 0 : lines[1].front().line, "expected a single-line configuration literal");
    return strip(detail::parse_flagged_tokens(m, lines[0], 0, lines[0].size(), false));
}

std::string format_configuration(const Mpda& m, const Configuration& c)
{
    return m.state_name(c.state) + " :" + join_words(m, c.stacks);
}

std::string format_rule(const Mpda& m, const Rule& r)
{
    return "rule " + m.state_name(r.from) + " " + m.symbol_name(r.pop) + " -> " + m.state_name(r.to) + " :" +
           join_words(m, r.push);
}

Witness parse_witness(const Mpda& m, std::string_view text)
{
    auto lines = detail::tokenize(text);
    if (lines.empty())
        throw parse_error(0, "empty witness, expected a configuration literal");
    Witness w{strip(detail::parse_flagged_tokens(m, lines[0], 0, lines[0].size(), false)), {}};
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto& line = lines[li];
        if (line[0].text != "rule" || line.size() < 6 || !detail::is_arrow(line[3].text) || line[5].text != ":")
            throw parse_error(line[0].line, "expected 'rule <from> <pop> -> <to> : <pushes>'");
        auto from = m.find_state(line[1].text);
        auto pop = m.find_symbol(line[2].text);
        auto to = m.find_state(line[4].text);
        if (!from || !pop || !to)
            throw parse_error(line[0].line, "step references undeclared names");
        auto words = detail::parse_flagged_words(m, line, 6, line.size(), false);
        Rule r{*from, *pop, *to, {}};
        for (const auto& fw : words)
            r.push.push_back(strip(fw));
        auto it = std::find(m.rules().begin(), m.rules().end(), r);
        if (it == m.rules().end())
            throw parse_error(line[0].line, "step does not match any declared rule");
        w.steps.push_back(static_cast<std::size_t>(it - m.rules().begin()));
    }
    return w;
}

std::string serialize_witness(const Mpda& m, const Witness& w)
{
    std::string out = format_configuration(m, w.start) + "\n";
    for (auto idx : w.steps)
        out += format_rule(m, m.rule(idx)) + "\n";
    return out;
}

FlaggedConfiguration parse_flagged_configuration(const Mpda& m, std::string_view text)
{
    auto lines = detail::tokenize(text);
    if (lines.size() != 1)
        throw parse_error(0, "expected a single-line configuration literal");
    return detail::parse_flagged_tokens(m, lines[0], 0, lines[0].size(), true);
}

std::string format_flagged_word(const Mpda& m, const FlaggedWord& w)
{
    std::string out;
    for (const auto& s : w)
        out += std::string(" ") + (s.flag ? "~" : "") + m.symbol_name(s.symbol);
    return out;
}

std::string format_flagged_configuration(const Mpda& m, const FlaggedConfiguration& c)
{
    std::string out = m.state_name(c.state) + " :";
    for (std::size_t i = 0; i < c.stacks.size(); ++i) {
        if (i > 0)
            out += " |";
        out += format_flagged_word(m, c.stacks[i]);
    }
    return out;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, std::string_view content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw error("cannot write '" + path + "'");
    out << content;
}

} // namespace wmpda
