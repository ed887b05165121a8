#pragma once

#include <stdexcept>
#include <string>

namespace softkm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shapes, ranges or parameter values that violate an operation's preconditions.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// A non-finite value or a singular system appeared mid-computation.
class NumericalFailure : public Error {
public:
    using Error::Error;
};

class PreconditionViolated : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

/// The prototype simplex has collapsed below the rank tolerance.
class DegenerateSimplex : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

class NotPositiveSemidefinite : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

/// Malformed CSV input. The message carries the row (and column when known).
class ParseError : public InvalidInput {
public:
    ParseError(const std::string& msg, long row, long column = -1)
        : InvalidInput(msg), row_(row), column_(column) {}

    long row() const { return row_; }
    long column() const { return column_; }

private:
    long row_;
    long column_;
};

}  // namespace softkm
