#pragma once

#include <stdexcept>
#include <string>

namespace csdiv {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Inputs with mismatched atom counts.
struct DimensionError : Error {
    using Error::Error;
};

/// Argument outside the documented domain (weights, alpha ranges, ...).
struct DomainError : Error {
    using Error::Error;
};

/// Input too large for an exact method (subset enumeration cap).
struct CapacityError : Error {
    using Error::Error;
};

/// A validated precondition failed (e.g. weight normalization of k).
struct PreconditionError : Error {
    using Error::Error;
};

/// Generator unusable for the requested analysis (f''(1) <= 0, missing
/// derivative order, undefined fourth-order weight).
struct DegenerateGeneratorError : Error {
    using Error::Error;
};

}  // namespace csdiv
