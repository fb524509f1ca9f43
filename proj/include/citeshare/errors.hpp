#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace citeshare {

/// Malformed input: a row or field that cannot be read in the declared format.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::string field, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ", field '" + field + "': " + what),
          line_(line), field_(std::move(field)) {}

    std::size_t line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    std::size_t line_;
    std::string field_;
};

/// Well-formed input that violates a domain invariant (n_authors = 0, duplicate id, ...).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A metric whose defining quotient does not exist, e.g. the I-index when N_c = 0.
class UndefinedMetricError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a formula.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Caller-side misuse: unknown identifier, missing option, out-of-budget size.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace citeshare
