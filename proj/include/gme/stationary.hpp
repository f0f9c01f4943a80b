#pragma once

#include <cmath>
#include <limits>

#include "gme/algebra.hpp"
#include "gme/errors.hpp"
#include "gme/propagator.hpp"

namespace gme {

enum class ExistenceReason { ok, gamma_nonpositive, overdamped_omega_ge_gamma };

struct Existence {
    bool exists;
    ExistenceReason reason;
};

// Stationary states require gamma > 0 and, in the overdamped regime, omega
// strictly below gamma (the relaxation rate gamma - omega must be positive).
inline Existence existence(const MasterEqCoefficients& c) {
    if (!(c.gamma > 0.0)) {
        return {false, ExistenceReason::gamma_nonpositive};
    }
    OmegaValue wv = omega_of(c);
    if (wv.omega_sq > 0.0 && wv.omega.real() >= c.gamma) {
        return {false, ExistenceReason::overdamped_omega_ge_gamma};
    }
    return {true, ExistenceReason::ok};
}

// Gamma = (-gamma^2 eta + (theta.eta) theta + gamma theta^eta) / (gamma (gamma^2 - omega^2)).
// Real arithmetic throughout; the prefactor is singular at gamma = 0 and at
// gamma^2 = omega^2.
inline MinkVec3 gamma_vector(const MasterEqCoefficients& c) {
    OmegaValue wv = omega_of(c);
    double gam = c.gamma;
    double w2 = wv.omega_sq;
    double scale = std::max({gam * gam, std::abs(w2), 1e-300});
    if (gam == 0.0 || std::abs(gam * gam - w2) <= 1e-10 * scale) {
        throw SingularGamma("gamma_vector undefined: gamma = 0 or gamma^2 = omega^2");
    }
    double pref = 1.0 / (gam * (gam * gam - w2));
    double te = dot(c.theta, c.eta);
    MinkVec3 wte = wedge(c.theta, c.eta);
    return {pref * (-gam * gam * c.eta.v0 + te * c.theta.v0 + gam * wte.v0),
            pref * (-gam * gam * c.eta.v1 + te * c.theta.v1 + gam * wte.v1),
            pref * (-gam * gam * c.eta.v2 + te * c.theta.v2 + gam * wte.v2)};
}

// Conditions that land within +/-1e-9 of their equality case are reported as
// boundary rather than forced to a side; threshold searches sit exactly there.
enum class Verdict { no, yes, boundary };

inline Verdict verdict_of(double margin, double tol = 1e-9) {
    if (std::abs(margin) <= tol) {
        return Verdict::boundary;
    }
    return margin > 0.0 ? Verdict::yes : Verdict::no;
}

struct StationaryReport {
    Existence existence;
    MinkVec3 gamma_vec{};
    double mu_st = std::numeric_limits<double>::quiet_NaN();
    double nu_st = std::numeric_limits<double>::quiet_NaN();
    double kappa_st = std::numeric_limits<double>::quiet_NaN();
    Verdict well_behaved = Verdict::no;
    Verdict positive = Verdict::no;
    double factorized_residual = 0.0;
    bool gibbs = false;
};

// Normalized magnitude of the factorization obstruction
// eta2 (theta2^2 - gamma^2) + eta0 (-theta0 theta2 + gamma theta1)
//   + eta1 (theta1 theta2 - gamma theta0),
// which is the numerator of Gamma_2: zero exactly when the stationary state
// factorizes (kappa_st = 0).
inline double factorized_residual(const MasterEqCoefficients& c) {
    double gam = c.gamma;
    const MinkVec3& th = c.theta;
    const MinkVec3& et = c.eta;
    double value = et.v2 * (th.v2 * th.v2 - gam * gam)
                 + et.v0 * (-th.v0 * th.v2 + gam * th.v1)
                 + et.v1 * (th.v1 * th.v2 - gam * th.v0);
    double scale = std::abs(et.v2) * (th.v2 * th.v2 + gam * gam)
                 + std::abs(et.v0) * (std::abs(th.v0 * th.v2) + std::abs(gam * th.v1))
                 + std::abs(et.v1) * (std::abs(th.v1 * th.v2) + std::abs(gam * th.v0));
    if (scale == 0.0) {
        return 0.0;
    }
    return std::abs(value) / scale;
}

inline StationaryReport stationary_params(const MasterEqCoefficients& c) {
    StationaryReport rep;
    rep.existence = existence(c);
    rep.factorized_residual = factorized_residual(c);
    if (!rep.existence.exists) {
        return rep;
    }
    rep.gamma_vec = gamma_vector(c);
    const MinkVec3& G = rep.gamma_vec;
    double g01 = G.v0 - G.v1;
    rep.well_behaved = verdict_of(g01);
    double neg_gsq = -dot(G, G);
    rep.positive = verdict_of(neg_gsq - 1.0);
    if (g01 != 0.0) {
        rep.mu_st = 1.0 / (2.0 * g01);
        rep.nu_st = (neg_gsq - 1.0) / (2.0 * g01);
        rep.kappa_st = -G.v2 / g01;
    }
    double g0_scale = std::max(std::abs(G.v0), 1e-300);
    rep.gibbs = std::abs(G.v1) <= 1e-9 * g0_scale && std::abs(G.v2) <= 1e-9 * g0_scale;
    return rep;
}

// The two printed stationary positivity tests, evaluated independently:
// first -eta.eta >= gamma^2 (the translationally invariant criterion from the
// earlier literature), second (theta.eta)^2/gamma^2 + theta.theta - eta.eta
// >= gamma^2 (the generic criterion).
struct DekkerComparison {
    bool dekker_ok;
    bool generic_ok;
};

inline DekkerComparison dekker_vs_generic(const MasterEqCoefficients& c) {
    if (!(c.gamma > 0.0)) {
        throw DomainViolation("dekker_vs_generic requires gamma > 0");
    }
    double g2 = c.gamma * c.gamma;
    double ee = dot(c.eta, c.eta);
    double te = dot(c.theta, c.eta);
    double tt = dot(c.theta, c.theta);
    return {-ee >= g2, te * te / g2 + tt - ee >= g2};
}

}  // namespace gme
