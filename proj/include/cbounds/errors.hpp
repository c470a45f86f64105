#pragma once

#include <stdexcept>
#include <string>

namespace cbounds {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// |alpha|^2 - |beta|^2 deviates from 1 beyond tolerance.
class NormalizationError : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical or physical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Rapidity too large to represent cosh/sinh faithfully in double precision.
class OverflowError : public Error {
public:
    using Error::Error;
};

class EmptySequenceError : public Error {
public:
    using Error::Error;
};

/// Two barrier supports intersect.
class OverlapError : public Error {
public:
    using Error::Error;
};

/// Phase grid search requested for too many barriers.
class DimensionError : public Error {
public:
    using Error::Error;
};

class TargetOutOfRangeError : public Error {
public:
    using Error::Error;
};

/// A composed rapidity left the [B_n, S_n] band.
class ContainmentViolation : public Error {
public:
    using Error::Error;
};

/// Malformed scenario document. Carries the 1-based line (0 when unknown).
class ParseError : public Error {
public:
    ParseError(int line, const std::string& what)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

} // namespace cbounds
