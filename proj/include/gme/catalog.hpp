#pragma once

#include <cmath>
#include <optional>

#include "gme/algebra.hpp"
#include "gme/errors.hpp"
#include "gme/stationary.hpp"

namespace gme {

// Named master-equation families, ordered from most to least specific; the
// classifier applies them in this precedence so overlapping rows (KL sits
// inside several families) resolve deterministically.
enum class EquationClass {
    KL,
    CL,
    ConjugateCL,
    GeneralizedCL,
    HPZ,
    ConjugateHPZ,
    GeneralizedKL1,
    GeneralizedKL2,
    GenericFactorized,
    Generic,
};

inline const char* to_string(EquationClass cls) {
    switch (cls) {
        case EquationClass::KL: return "KL";
        case EquationClass::CL: return "CL";
        case EquationClass::ConjugateCL: return "ConjugateCL";
        case EquationClass::GeneralizedCL: return "GeneralizedCL";
        case EquationClass::HPZ: return "HPZ";
        case EquationClass::ConjugateHPZ: return "ConjugateHPZ";
        case EquationClass::GeneralizedKL1: return "GeneralizedKL1";
        case EquationClass::GeneralizedKL2: return "GeneralizedKL2";
        case EquationClass::GenericFactorized: return "GenericFactorized";
        case EquationClass::Generic: return "Generic";
    }
    return "Generic";
}

// Named parameters for the canonical family constructors. Every family uses
// gamma, omega0 (theta0 = 2*omega0) and the thermal parameter b (eta0 =
// -2*gamma*b); theta1, theta2, eta2 apply only where the family leaves them
// free.
struct CanonicalParams {
    double gamma = 1.0;
    double omega0 = 1.0;
    double b = 1.0;
    double theta1 = 0.0;
    double theta2 = 0.0;
    double eta2 = 0.0;
};

inline MasterEqCoefficients canonical(EquationClass cls, const CanonicalParams& p) {
    if (!(p.gamma > 0.0)) {
        throw DomainViolation("canonical: gamma must be positive");
    }
    if (!(p.omega0 > 0.0)) {
        throw DomainViolation("canonical: omega0 must be positive");
    }
    if (!(p.b > 0.0)) {
        throw DomainViolation("canonical: b must be positive");
    }
    double th0 = 2.0 * p.omega0;
    double eta0 = -2.0 * p.gamma * p.b;
    switch (cls) {
        case EquationClass::KL:
            return {p.gamma, {th0, 0.0, 0.0}, {eta0, 0.0, 0.0}};
        case EquationClass::CL:
            return {p.gamma, {th0, p.theta1, -p.gamma}, {eta0, eta0, 0.0}};
        case EquationClass::ConjugateCL:
            return {p.gamma, {th0, p.theta1, p.gamma}, {eta0, -eta0, 0.0}};
        case EquationClass::GeneralizedCL:
            if (!(std::abs(p.theta2) <= p.gamma)) {
                throw DomainViolation("canonical: GeneralizedCL requires |theta2| <= gamma");
            }
            return {p.gamma, {th0, 0.0, p.theta2}, {eta0, -eta0 * p.theta2 / p.gamma, 0.0}};
        case EquationClass::HPZ:
            return {p.gamma, {th0, p.theta1, -p.gamma}, {eta0, eta0, p.eta2}};
        case EquationClass::ConjugateHPZ:
            return {p.gamma, {th0, p.theta1, p.gamma}, {eta0, -eta0, p.eta2}};
        case EquationClass::GeneralizedKL1:
            return {p.gamma, {th0, p.theta1, 0.0}, {eta0, eta0 * p.theta1 / th0, 0.0}};
        case EquationClass::GeneralizedKL2:
            return {p.gamma, {th0, p.theta1, p.gamma * p.theta1 / th0}, {eta0, 0.0, 0.0}};
        case EquationClass::GenericFactorized:
        case EquationClass::Generic:
            break;
    }
    throw DomainViolation("canonical: no constructor for the generic classes");
}

inline EquationClass classify(const MasterEqCoefficients& c, double tol = 1e-9) {
    if (!(c.gamma > 0.0) || !(c.theta.v0 > 0.0)) {
        throw DomainViolation("classify requires gamma > 0 and theta0 > 0");
    }
    double scale = std::max({std::abs(c.gamma), std::abs(c.theta.v0), std::abs(c.theta.v1),
                             std::abs(c.theta.v2), std::abs(c.eta.v0), std::abs(c.eta.v1),
                             std::abs(c.eta.v2)});
    auto near = [&](double x, double y) { return std::abs(x - y) <= tol * scale; };
    double th1 = c.theta.v1, th2 = c.theta.v2;
    double e0 = c.eta.v0, e1 = c.eta.v1, e2 = c.eta.v2;
    if (near(th1, 0.0) && near(th2, 0.0) && near(e1, 0.0) && near(e2, 0.0)) {
        return EquationClass::KL;
    }
    if (near(th1, 0.0) && near(e2, 0.0) && near(e1, -e0 * th2 / c.gamma)
        && std::abs(th2) <= c.gamma + tol * scale) {
        return EquationClass::GeneralizedCL;
    }
    if (near(e2, 0.0) && near(e1, e0) && near(th2, -c.gamma)) {
        return EquationClass::CL;
    }
    if (near(e2, 0.0) && near(e1, -e0) && near(th2, c.gamma)) {
        return EquationClass::ConjugateCL;
    }
    if (near(e2, 0.0) && near(th2, 0.0) && near(e1, e0 * th1 / c.theta.v0)) {
        return EquationClass::GeneralizedKL1;
    }
    if (near(e2, 0.0) && near(e1, 0.0) && near(th2, c.gamma * th1 / c.theta.v0)) {
        return EquationClass::GeneralizedKL2;
    }
    if (near(e1, e0) && near(th2, -c.gamma)) {
        return EquationClass::HPZ;
    }
    if (near(e1, -e0) && near(th2, c.gamma)) {
        return EquationClass::ConjugateHPZ;
    }
    if (factorized_residual(c) <= tol) {
        return EquationClass::GenericFactorized;
    }
    return EquationClass::Generic;
}

// Image of the coefficients under the phase-space rotation (Q,P) -> (P,-Q),
// which flips the signs of the spatial components of theta and eta. HPZ and
// CL map onto their conjugate families; the generalized families map onto
// themselves.
inline MasterEqCoefficients conjugate_image(const MasterEqCoefficients& c) {
    return {c.gamma,
            {c.theta.v0, -c.theta.v1, -c.theta.v2},
            {c.eta.v0, -c.eta.v1, -c.eta.v2}};
}

// Thermal occupation parameter b = 1/2 + 1/(e^x - 1). The default exponent
// x = omega0/kT gives the high-temperature limit b -> kT/omega0; the
// half-exponent variant x = omega0/(2 kT) is kept selectable for comparison
// with the alternative convention (its high-T limit is 2 kT/omega0).
enum class ThermalExponent { full, half };

inline double thermal_b(double omega0, double kT, ThermalExponent form = ThermalExponent::full) {
    if (!(omega0 > 0.0) || !(kT > 0.0)) {
        throw DomainViolation("thermal_b requires omega0 > 0 and kT > 0");
    }
    double x = form == ThermalExponent::full ? omega0 / kT : omega0 / (2.0 * kT);
    return 0.5 + 1.0 / std::expm1(x);
}

// True when the stationary state is a Gibbs state: Gamma_1 and Gamma_2 vanish
// relative to Gamma_0. For such states Gamma_0 = -eta0/gamma is an identity
// and is recomputed as an internal tripwire.
inline bool gibbs_stationary(const MasterEqCoefficients& c, double tol = 1e-9) {
    Existence ex = existence(c);
    if (!ex.exists) {
        throw DomainViolation("gibbs_stationary requires an existing stationary state");
    }
    MinkVec3 G = gamma_vector(c);
    double g0_scale = std::max(std::abs(G.v0), 1e-300);
    bool gibbs = std::abs(G.v1) <= tol * g0_scale && std::abs(G.v2) <= tol * g0_scale;
    if (gibbs) {
        double expected = -c.eta.v0 / c.gamma;
        if (std::abs(G.v0 - expected) > 1e-8 * std::max(1.0, std::abs(expected))) {
            throw NumericError("gibbs_stationary: Gamma_0 != -eta0/gamma for a Gibbs state");
        }
    }
    return gibbs;
}

// Two-operator decomposition certificate: the generator is realized with
// Lindblad operators c(x + s_i d/dx), i = 1, 2, with real c and s_i. The
// family only reaches eta2 = 0; within it a witness exists iff
// gamma <= |eta0| and gamma^2 <= eta0^2 - eta1^2.
struct CPWitness {
    double c;
    double s1;
    double s2;
    struct Reconstructed {
        double gamma;
        double eta0;
        double eta1;
        double eta2;
    } reconstructed;
};

namespace detail {

inline CPWitness::Reconstructed reconstruct_from_witness(double c, double s1, double s2) {
    double d1 = c * s1;
    double d2 = c * s2;
    double gam = -2.0 * ((c * c - d1 * d1) + (c * c - d2 * d2));
    double eta0 = -2.0 * ((c * c + d1 * d1) + (c * c + d2 * d2));
    double eta1 = -2.0 * (2.0 * c * d1 + 2.0 * c * d2);
    return {gam, eta0, eta1, 0.0};
}

}  // namespace detail

inline std::optional<CPWitness> cp_decompose(const MasterEqCoefficients& c) {
    if (c.eta.v2 != 0.0) {
        throw UnsupportedRealization("cp_decompose supports only eta2 = 0 (real two-operator family)");
    }
    if (!(c.gamma > 0.0)) {
        throw DomainViolation("cp_decompose requires gamma > 0");
    }
    double e0 = c.eta.v0;
    double e1 = c.eta.v1;
    if (e0 > 0.0) {
        return std::nullopt;
    }
    double abs_e0 = std::abs(e0);
    if (!(c.gamma <= abs_e0 && c.gamma * c.gamma <= e0 * e0 - e1 * e1)) {
        return std::nullopt;
    }
    double denom = abs_e0 - c.gamma;
    if (!(denom > 0.0)) {
        return std::nullopt;
    }
    double cc = std::sqrt(denom / 8.0);
    double disc = std::sqrt(e0 * e0 - e1 * e1 - c.gamma * c.gamma);
    double s1 = (-e1 + disc) / denom;
    double s2 = (-e1 - disc) / denom;
    CPWitness w{cc, s1, s2, detail::reconstruct_from_witness(cc, s1, s2)};
    double rscale = std::max({std::abs(c.gamma), std::abs(e0), std::abs(e1), 1.0});
    if (std::abs(w.reconstructed.gamma - c.gamma) > 1e-10 * rscale
        || std::abs(w.reconstructed.eta0 - e0) > 1e-10 * rscale
        || std::abs(w.reconstructed.eta1 - e1) > 1e-10 * rscale) {
        throw NumericError("cp_decompose: reconstruction check failed");
    }
    return w;
}

}  // namespace gme
