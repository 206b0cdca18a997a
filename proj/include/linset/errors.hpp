#pragma once

#include <stdexcept>
#include <string>

namespace linset {

// All library errors derive from Error so callers can catch one type.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// p passed to a tower constructor is not prime.
struct NotPrimeError : Error {
    using Error::Error;
};

// p^{h n} exceeds the configured table limit.
struct FieldTooLargeError : Error {
    using Error::Error;
};

struct DivisionByZeroError : Error {
    using Error::Error;
};

// d passed where a divisor of n (or of h*n) is required.
struct NotDivisorError : Error {
    using Error::Error;
};

// Subspaces from different towers or ambient ranks combined.
struct AmbientMismatchError : Error {
    using Error::Error;
};

// An enumeration or table would exceed the configured cap.
struct BudgetExceededError : Error {
    using Error::Error;
};

// Operation needs a nonzero subspace.
struct EmptySubspaceError : Error {
    using Error::Error;
};

// Rank precondition violated (not a multiple of n, too large, wrong ambient rank).
struct RankError : Error {
    using Error::Error;
};

// Hard precondition of a value-returning query (checks report instead of throwing).
struct HypothesisError : Error {
    using Error::Error;
};

// Function table is not additive.
struct NotAdditiveError : Error {
    using Error::Error;
};

// Subspace is not linear over the requested subfield.
struct NotSubfieldLinearError : Error {
    using Error::Error;
};

// Gram matrix is degenerate or not reflexive.
struct FormError : Error {
    using Error::Error;
};

// Input object has the wrong cardinality for the requested check.
struct SizeMismatchError : Error {
    using Error::Error;
};

// Malformed file given to a reader.
struct ParseError : Error {
    using Error::Error;
};

// Malformed sweep configuration.
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace linset
