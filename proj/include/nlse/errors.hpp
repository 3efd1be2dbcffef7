#pragma once

#include <stdexcept>
#include <string>

namespace nlse {

// Field passed in the wrong representation (physical vs spectral).
struct RepresentationError : std::logic_error {
    using std::logic_error::logic_error;
};

// Argument outside its mathematical domain (p < 1, eps < 0, ...).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Grid too coarse to resolve the requested concentration scale.
struct ResolutionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Profile support does not fit inside the periodic box.
struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Nonlinear phase per step exceeds the configured guard.
struct StepSizeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Adaptive dt underflowed; run aborted with a partial trajectory.
struct StiffnessError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Trajectory has too few time stamps for a space-time norm.
struct InsufficientDataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed or unknown keys in an experiment config file.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace nlse
