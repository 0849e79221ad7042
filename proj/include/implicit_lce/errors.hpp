#pragma once

#include <stdexcept>
#include <string>

namespace implicit_lce {

// Root of every error thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed caller input (character >= sigma, bad parameter).
struct InputError : Error {
    using Error::Error;
};

// Position, block or rank outside the valid range.
struct IndexError : Error {
    using Error::Error;
};

// Operation not valid in the object's current mode.
struct StateError : Error {
    using Error::Error;
};

// Construction gave up (retry budget exhausted).
struct BuildError : Error {
    using Error::Error;
};

// Not enough borrowed or freed bits for the request.
struct CapacityError : Error {
    using Error::Error;
};

// Caller broke a documented precondition that is only checked lazily.
struct ContractError : Error {
    using Error::Error;
};

// Prime-sampling interval is empty after rounding.
struct IntervalError : Error {
    using Error::Error;
};

// Rejection sampling found no prime within its attempt budget.
struct SamplingError : Error {
    using Error::Error;
};

} // namespace implicit_lce
