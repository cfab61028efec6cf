#pragma once

#include <stdexcept>
#include <string>

namespace sympint {

// Base class for every error thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

// A pivot fell below the singularity threshold during factorization.
struct SingularMatrix : Error {
    using Error::Error;
};

// A user-supplied map returned NaN/Inf at a probe point.
struct NonFiniteEvaluation : Error {
    using Error::Error;
};

// A phase point left the domain of smoothness of the Hamiltonian.
struct OutOfDomain : Error {
    using Error::Error;
};

struct UnknownSystem : Error {
    using Error::Error;
};

struct BadParams : Error {
    using Error::Error;
};

struct PreconditionViolated : Error {
    using Error::Error;
};

// The pair handed to the linearizer does not solve the implicit equation.
struct StalePair : Error {
    using Error::Error;
};

struct NoConsistencyPoint : Error {
    using Error::Error;
};

struct ReferenceUnavailable : Error {
    using Error::Error;
};

}  // namespace sympint
