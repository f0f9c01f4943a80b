#pragma once

#include <cmath>
#include <complex>

#include "gme/algebra.hpp"

namespace gme {

// Scalar kernels shared by the propagator and evolution closed forms. Each
// has a removable singularity handled by a short Taylor series; thresholds
// chosen so the series and the direct formula overlap to full precision.

// (exp(-x t) - 1)/x.
inline Complex psi_k(Complex x, double t) {
    Complex z = x * t;
    if (std::abs(z) < 1e-3) {
        return -t * (1.0 - z / 2.0 + z * z / 6.0 - z * z * z / 24.0 + z * z * z * z / 120.0);
    }
    return (std::exp(-z) - 1.0) / x;
}

// sinh(w t / 2)/w.
inline Complex shc(Complex w, double t) {
    Complex z = w * t / 2.0;
    if (std::abs(z) < 1e-3) {
        return (t / 2.0) * (1.0 + z * z / 6.0 + z * z * z * z / 120.0);
    }
    return std::sinh(z) / w;
}

// sinh(w t)/w.
inline Complex vsinh(Complex w, double t) {
    Complex z = w * t;
    if (std::abs(z) < 1e-3) {
        return t * (1.0 + z * z / 6.0 + z * z * z * z / 120.0);
    }
    return std::sinh(z) / w;
}

// (cosh(w t) - 1)/w^2.
inline Complex vcosh1(Complex w, double t) {
    Complex z = w * t;
    if (std::abs(z) < 1e-3) {
        return (t * t / 2.0) * (1.0 + z * z / 12.0 + z * z * z * z / 360.0);
    }
    return (std::cosh(z) - 1.0) / (w * w);
}

// sinh(x t/2)/x near the removable poles x = gamma -/+ omega. The argument
// `scale` is max(gamma, |omega|, 1); below 1e-7*scale the three-term series
// keeps full precision where the direct quotient loses digits.
inline Complex sinhc_pole(Complex x, double t, double scale) {
    if (std::abs(x) < 1e-7 * scale) {
        Complex x2 = x * x;
        return t / 2.0 + x2 * (t * t * t) / 48.0 + x2 * x2 * (t * t * t * t * t) / 3840.0;
    }
    return std::sinh(x * t / 2.0) / x;
}

}  // namespace gme
