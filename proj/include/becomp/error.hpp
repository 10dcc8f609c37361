#pragma once

#include <stdexcept>
#include <string>

namespace becomp {

/// Base of every exception thrown by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the admissible domain of an operation (conjugate
/// points, theorem ranges, radii beyond r_max).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Construction-time invariant of a space or profile does not hold.
class InvariantError : public Error {
public:
    using Error::Error;
};

/// A theorem hypothesis supplied by the caller is contradicted by the space
/// (e.g. k below sup|f|).
class HypothesisError : public Error {
public:
    using Error::Error;
};

/// Malformed user input: unknown catalog names, bad profile specs, missing
/// parameters.
class SpecError : public Error {
public:
    using Error::Error;
};

class NumericError : public Error {
public:
    enum class Kind {
        StepLimit,
        NonFinite,
        QuadratureLimit,
        InvalidBracket,
        BracketNotFound,
    };

    NumericError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

}  // namespace becomp
