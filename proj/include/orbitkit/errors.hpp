#pragma once

#include <stdexcept>
#include <string>

namespace orbitkit {

/// Base class for all orbitkit errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An argument (or an iterate) left the domain of the function being evaluated.
struct DomainError : Error {
    explicit DomainError(const std::string& msg, long index = -1)
        : Error(index >= 0 ? msg + " (at iterate " + std::to_string(index) + ")" : msg),
          iterate_index(index) {}
    long iterate_index;  // -1 when not tied to an orbit position
};

struct OutOfDomain : DomainError {
    using DomainError::DomainError;
};

struct NoFixedPoint : Error {
    using Error::Error;
};

struct Unsupported : Error {
    using Error::Error;
};

struct ZeroMultiplier : Error {
    using Error::Error;
};

struct NotConverged : Error {
    using Error::Error;
};

/// Candidate sequence started exactly at the fixed point: converges, but not properly.
struct Degenerate : Error {
    using Error::Error;
};

struct HypothesisViolated : Error {
    using Error::Error;
};

struct DegenerateEigen : Error {
    using Error::Error;
};

struct PoleAtFixedPoint : Error {
    using Error::Error;
};

struct PoleHit : Error {
    using Error::Error;
};

struct RepellingStart : Error {
    using Error::Error;
};

struct PoleStart : Error {
    using Error::Error;
};

struct WrongOrder : Error {
    using Error::Error;
};

struct NonIntegerGrowth : Error {
    using Error::Error;
};

struct RadicandNegative : Error {
    using Error::Error;
};

struct NoBracket : Error {
    using Error::Error;
};

struct DomainExit : Error {
    using Error::Error;
};

/// Two closed-form routes that must agree did not; indicates a bug or invalid input.
struct FormulaMismatch : Error {
    using Error::Error;
};

}  // namespace orbitkit
