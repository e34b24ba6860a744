#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "wmpda/core.hpp"
#include "wmpda/flagged.hpp"

namespace wmpda {

/// Identifiers are nonempty, printable, free of whitespace and of the
/// characters `| : # ( )`; they may not start with '~' nor be the keyword `->`.
bool is_valid_identifier(std::string_view name);

Mpda parse_mpda(std::string_view text);
std::string serialize_mpda(const Mpda& m);

/// `q1 : X D |` -- state, then k '|'-separated stack words, top first.
Configuration parse_configuration(const Mpda& m, std::string_view text);
std::string format_configuration(const Mpda& m, const Configuration& c);

/// `rule q1 X -> q1 : X B | C`
std::string format_rule(const Mpda& m, const Rule& r);

/// First line a configuration literal, then one `rule ...` line per step.
Witness parse_witness(const Mpda& m, std::string_view text);
std::string serialize_witness(const Mpda& m, const Witness& w);

/// Same literal syntax with '~' prefixing flagged symbols.
FlaggedConfiguration parse_flagged_configuration(const Mpda& m, std::string_view text);
std::string format_flagged_configuration(const Mpda& m, const FlaggedConfiguration& c);
std::string format_flagged_word(const Mpda& m, const FlaggedWord& w);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

namespace detail {

struct Token {
    std::string text;
    std::size_t line = 0;
};

/// Splits text into lines of tokens. Comments ('#' to end of line) and blank
/// lines are dropped; ':', '|', '(' and ')' are always tokens of their own.
std::vector<std::vector<Token>> tokenize(std::string_view text);

/// Parses `state : w1 | ... | wk` from tokens[begin..end).
FlaggedConfiguration parse_flagged_tokens(const Mpda& m, const std::vector<Token>& tokens, std::size_t begin,
                                          std::size_t end, bool allow_flags);

/// Parses k '|'-separated symbol lists from tokens[begin..end).
std::vector<FlaggedWord> parse_flagged_words(const Mpda& m, const std::vector<Token>& tokens, std::size_t begin,
                                             std::size_t end, bool allow_flags);

bool is_arrow(std::string_view token);

} // namespace detail

} // namespace wmpda
