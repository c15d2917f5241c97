#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace shatter {

/// Bad parameters or mismatched shapes passed to a library call.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An operation was asked for a value its domain does not define
/// (for example the minority value of an empty class).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Structured input (graph partition, word description) fails its invariants.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exact search would exceed its configured budget. Never approximated silently.
class ResourceError : public std::runtime_error {
public:
    ResourceError(const std::string& what, std::string budget_name, std::size_t budget)
        : std::runtime_error(what), budget_name_(std::move(budget_name)), budget_(budget)
    {
    }

    const std::string& budget_name() const noexcept { return budget_name_; }
    std::size_t budget() const noexcept { return budget_; }

private:
    std::string budget_name_;
    std::size_t budget_;
};

/// Malformed input file; `line` is 1-based, 0 when not attributable to a line.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line)
    {
    }

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A self-check of a construction failed. Always an implementation bug.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace shatter
