#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace apt {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed graph text; carries the 1-based line number.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line)
    {
    }
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// A caller broke an operation's documented precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// An exhaustive oracle or checker would exceed its configured budget.
class BudgetError : public Error {
public:
    using Error::Error;
};

/// A state the theory says cannot happen; always a bug in this library.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace apt
