// errors.hpp: exception types shared by the engines and the runner

#pragma once

#include <stdexcept>
#include <string>

namespace tmbec {

// A finite resource bound (truncation cap, grid size) would be exceeded.
class ResourceLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An iterative routine failed or a numerical consistency check tripped.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The Fock cutoff of a state is too small for the requested operation.
class InsufficientCutoffError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

} // namespace tmbec
