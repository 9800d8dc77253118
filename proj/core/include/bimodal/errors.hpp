#ifndef BIMODAL_ERRORS_HPP
#define BIMODAL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bimodal {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sector construction would exceed the configured state cap.
struct CapacityError : Error {
    using Error::Error;
};

// Invalid scenario/schedule parameters (bad field values, mismatched sizes).
struct ConfigError : Error {
    using Error::Error;
};

// Integration failure, e.g. norm drift beyond the hard threshold.
struct NumericalError : Error {
    using Error::Error;
};

// Freeze requested where the dark subspace is not one-dimensional.
struct DegenerateDarkStateError : Error {
    using Error::Error;
};

// Closed-form dark state with all coefficients zero.
struct UndefinedStateError : Error {
    using Error::Error;
};

// Projection onto an outcome of (numerically) zero probability.
struct ImpossibleOutcomeError : Error {
    using Error::Error;
};

// Vector/basis dimension mismatch or invalid subsystem specification.
struct BasisMismatchError : Error {
    using Error::Error;
};

}  // namespace bimodal

#endif
