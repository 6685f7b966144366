#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace softcircuit {

/// Input violates a documented precondition or type invariant.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A mass ledger whose outputs do not add up to its input.
class ConservationError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Malformed text input. `line()` is 1-based; 0 when not line-oriented.
class ParseError : public ValidationError {
public:
    ParseError(const std::string& what, std::size_t line)
        : ValidationError(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
          line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// File could not be opened, read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace softcircuit
