#pragma once

#include <stdexcept>
#include <string>

namespace gme {

// Base class for all numeric failures raised by the library. Callers that
// only care about "the computation broke down" can catch this one type.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Denominator of a closed-form expression fell below the safe threshold.
struct SingularDenominator : NumericError {
    using NumericError::NumericError;
};

// A quantity that must be real came out with a non-negligible imaginary part.
struct ImaginaryResidue : NumericError {
    using NumericError::NumericError;
};

// ODE integration left the trusted range (mu outside (1e-12, 1e12)).
struct BlowUp : NumericError {
    using NumericError::NumericError;
};

// The lower-right block of the evolved matrix pipeline is not invertible.
struct SingularD22 : NumericError {
    using NumericError::NumericError;
};

// Gamma vector undefined: gamma == 0 or gamma^2 == omega^2 within tolerance.
struct SingularGamma : NumericError {
    using NumericError::NumericError;
};

// BCH coefficient m0 hit a zero of its defining denominator.
struct PoleInM0 : NumericError {
    using NumericError::NumericError;
};

// Matrix exponential argument norm exceeds the supported range.
struct NormOverflow : NumericError {
    using NumericError::NumericError;
};

// Wigner function undefined because mu + nu <= 0.
struct NonNormalizable : NumericError {
    using NumericError::NumericError;
};

// Coefficients violate the requested validation mode or a class constraint.
struct DomainViolation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Requested decomposition is outside the supported realization family.
struct UnsupportedRealization : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Bisection bracket does not straddle a sign change.
struct NoSignChange : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Configuration document is malformed or fails validation.
struct ParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace gme
