#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <string>

#include "gme/errors.hpp"

namespace gme {

using Complex = std::complex<double>;

// Real 3-vector in the (-,+,+) Minkowski space spanned by the master
// equation's coefficient triples.
struct MinkVec3 {
    double v0 = 0.0;
    double v1 = 0.0;
    double v2 = 0.0;

    double operator[](int i) const { return i == 0 ? v0 : (i == 1 ? v1 : v2); }
    double& operator[](int i) { return i == 0 ? v0 : (i == 1 ? v1 : v2); }
};

// Complex counterpart; intermediate results (underdamped frequencies, BCH
// coefficients) live here even when the physical inputs are real.
struct CMinkVec3 {
    Complex v0{0.0, 0.0};
    Complex v1{0.0, 0.0};
    Complex v2{0.0, 0.0};

    CMinkVec3() = default;
    CMinkVec3(Complex a, Complex b, Complex c) : v0(a), v1(b), v2(c) {}
    CMinkVec3(const MinkVec3& r) : v0(r.v0), v1(r.v1), v2(r.v2) {}

    Complex operator[](int i) const { return i == 0 ? v0 : (i == 1 ? v1 : v2); }
    Complex& operator[](int i) { return i == 0 ? v0 : (i == 1 ? v1 : v2); }
};

inline CMinkVec3 operator+(const CMinkVec3& a, const CMinkVec3& b) {
    return {a.v0 + b.v0, a.v1 + b.v1, a.v2 + b.v2};
}

inline CMinkVec3 operator-(const CMinkVec3& a, const CMinkVec3& b) {
    return {a.v0 - b.v0, a.v1 - b.v1, a.v2 - b.v2};
}

inline CMinkVec3 operator*(Complex s, const CMinkVec3& a) {
    return {s * a.v0, s * a.v1, s * a.v2};
}

inline CMinkVec3 operator*(double s, const CMinkVec3& a) {
    return Complex(s, 0.0) * a;
}

// Minkowski inner product with signature (-,+,+).
inline Complex dot(const CMinkVec3& a, const CMinkVec3& b) {
    return -a.v0 * b.v0 + a.v1 * b.v1 + a.v2 * b.v2;
}

inline double dot(const MinkVec3& a, const MinkVec3& b) {
    return -a.v0 * b.v0 + a.v1 * b.v1 + a.v2 * b.v2;
}

// Antisymmetric wedge product fixed by the basis relations
// e0^e1 = -e2, e1^e2 = e0, e2^e0 = -e1.
inline CMinkVec3 wedge(const CMinkVec3& a, const CMinkVec3& b) {
    return {a.v1 * b.v2 - a.v2 * b.v1,
            a.v0 * b.v2 - a.v2 * b.v0,
            a.v1 * b.v0 - a.v0 * b.v1};
}

inline MinkVec3 wedge(const MinkVec3& a, const MinkVec3& b) {
    return {a.v1 * b.v2 - a.v2 * b.v1,
            a.v0 * b.v2 - a.v2 * b.v0,
            a.v1 * b.v0 - a.v0 * b.v1};
}

// Initial-state context of the Phi functional: Delta0^2 = 4 mu0 (mu0+nu0) + kappa0^2
// together with kappa0 itself.
struct PhiContext {
    double delta0_sq = 0.0;
    double kappa0 = 0.0;
};

inline PhiContext phi_context(double mu0, double kappa0, double nu0) {
    return {4.0 * mu0 * (mu0 + nu0) + kappa0 * kappa0, kappa0};
}

// Linear functional Phi(v) = (v0+v1)/2 + Delta0^2 (v0-v1)/2 + kappa0 v2.
inline Complex phi(const CMinkVec3& v, const PhiContext& ctx) {
    return 0.5 * (v.v0 + v.v1) + 0.5 * ctx.delta0_sq * (v.v0 - v.v1) + ctx.kappa0 * v.v2;
}

enum class ValidationMode { physical, raw };

// The seven real constants defining a bilinear master equation: the damping
// rate gamma, the Hamiltonian-sector triple theta, and the noise triple eta.
struct MasterEqCoefficients {
    double gamma = 0.0;
    MinkVec3 theta{};
    MinkVec3 eta{};

    MinkVec3 theta_vec() const { return theta; }
    MinkVec3 eta_vec() const { return eta; }
};

// theta0 > 0 is structural (theta0 = 2*omega0 with omega0 the oscillator
// frequency). Physical mode additionally enforces the coupling inequalities
// |theta1| < theta0, eta0 <= 0, eta1 - eta0 >= 0, eta0 + eta1 <= 0.
inline void validate(const MasterEqCoefficients& c, ValidationMode mode) {
    if (!(c.theta.v0 > 0.0)) {
        throw DomainViolation("theta0 must be positive (theta0 = 2*omega0)");
    }
    if (mode == ValidationMode::raw) {
        return;
    }
    if (!(std::abs(c.theta.v1) < c.theta.v0)) {
        throw DomainViolation("physical mode requires |theta1| < theta0");
    }
    if (!(c.eta.v0 <= 0.0)) {
        throw DomainViolation("physical mode requires eta0 <= 0");
    }
    if (!(c.eta.v1 - c.eta.v0 >= 0.0)) {
        throw DomainViolation("physical mode requires eta1 - eta0 >= 0");
    }
    if (!(c.eta.v0 + c.eta.v1 <= 0.0)) {
        throw DomainViolation("physical mode requires eta0 + eta1 <= 0");
    }
}

}  // namespace gme
