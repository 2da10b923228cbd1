#pragma once

#include <stdexcept>
#include <string>

namespace omech {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Physical parameters violate their invariants.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Configuration text is malformed; the message carries the key path.
class ConfigError : public Error {
public:
    using Error::Error;
};

// -----------------------------------------------------------------------------
// Numerical failures. Kept distinct from "unstable", which is a finding.
// -----------------------------------------------------------------------------

class NumericalError : public Error {
public:
    using Error::Error;
};

class EigenSolverError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// A steady state was requested for a drift matrix that is not Hurwitz.
class UnstableSystemError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class SingularSolveError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class UnphysicalStateError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ConvergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace omech
