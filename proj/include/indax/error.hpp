#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace indax {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Arity mismatch, unknown relation, or unbound variable.
class MalformedSentence : public Error {
public:
    using Error::Error;
};

/// Text input that does not follow a file format or the sentence grammar.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          message_(what), line_(line), column_(column) {}

    /// what() without the position prefix.
    const std::string& message() const { return message_; }

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::string message_;
    std::size_t line_;
    std::size_t column_;
};

class InvalidStructure : public Error {
public:
    using Error::Error;
};

class SignatureMismatch : public Error {
public:
    using Error::Error;
};

class EnumerationOverflow : public Error {
public:
    using Error::Error;
};

/// A size or recursion cap was exceeded.
class CapExceeded : public Error {
public:
    using Error::Error;
};

/// A construction was called outside its stated preconditions.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// The hypotheses of a construction fail on the given input.
class NotApplicable : public Error {
public:
    using Error::Error;
};

/// A verified construction failed its own verification. Signals a bug.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace indax
