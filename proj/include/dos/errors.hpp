#pragma once

#include <stdexcept>

namespace dos {

// Malformed or out-of-domain inputs (usage errors).
struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A parameter the computation cannot control, e.g. a tail cutoff that cannot
// dominate mu even after the automatic doublings.
struct InvalidParameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Fourier window exceeds the discrete index circle (L > 1/(2 eps)).
struct WindowTooLarge : InvalidInput {
    using InvalidInput::InvalidInput;
};

// Fewer usable data points than a fit requires.
struct InsufficientData : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Data that admits no meaningful fit (e.g. zero error on a log scale).
struct DegenerateData : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Linear-solver pivot collapsed; cannot happen for shifts with im != 0.
struct SolverBreakdown : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Filesystem failure while emitting results.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Output disagrees with a blessed regression anchor.
struct AnchorMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace dos
