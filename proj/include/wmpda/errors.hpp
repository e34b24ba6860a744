#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wmpda {

class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text; `line()` is 1-based, 0 when unknown.
class parse_error : public error {
public:
    parse_error(std::size_t line, const std::string& message)
        : error("line " + std::to_string(line) + ": " + message), _line(line) {}

    [[nodiscard]] std::size_t line() const { return _line; }

private:
    std::size_t _line;
};

/// A rule was applied to a configuration where it does not fire.
class not_enabled : public error {
public:
    using error::error;
};

class invalid_witness : public error {
public:
    invalid_witness(std::size_t index, const std::string& message)
        : error("invalid witness at step " + std::to_string(index) + ": " + message), _index(index) {}

    [[nodiscard]] std::size_t index() const { return _index; }

private:
    std::size_t _index;
};

class precondition_failed : public error {
public:
    using error::error;
};

class not_weak : public precondition_failed {
public:
    using precondition_failed::precondition_failed;
};

/// A determinized component or accept-tuple set outgrew its budget.
class too_large : public error {
public:
    using error::error;
};

class reconstruction_failed : public error {
public:
    using error::error;
};

class source_not_in_set : public error {
public:
    using error::error;
};

class bad_grammar : public error {
public:
    using error::error;
};

} // namespace wmpda
