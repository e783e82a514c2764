#pragma once

#include <stdexcept>
#include <string>

namespace ascpow {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input file (CSV rows, headers). Carries the offending line number
// in the message.
class ParseError : public Error {
public:
    using Error::Error;
};

// A value or structure violates a documented invariant (duplicate table key,
// monotonicity break, invalid exponent set, weights off the constraint).
class ValidationError : public Error {
public:
    using Error::Error;
};

// A lookup landed outside the stored table range. Never extrapolate; fail.
class CoverageError : public Error {
public:
    using Error::Error;
};

// Caller violated a stated precondition (gcd, sign, range).
class PreconditionError : public Error {
public:
    using Error::Error;
};

// Request exceeds the documented desk-scale limits.
class ScaleError : public Error {
public:
    using Error::Error;
};

// A numeric integrity check failed (e.g. imaginary residue above tolerance).
class NumericError : public Error {
public:
    using Error::Error;
};

} // namespace ascpow
