#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

#include "gme/algebra.hpp"
#include "gme/errors.hpp"
#include "gme/generators.hpp"
#include "gme/kernels.hpp"
#include "gme/propagator.hpp"

namespace gme {

// Gaussian density-matrix parameters at one instant:
// rho(Q, r) = sqrt(2 mu/pi) exp(-2 mu Q^2 - i kappa Q r - (mu+nu) r^2/2).
// mu > 0 is required for normalizability; nu >= 0 (given mu > 0) is
// equivalent to positive semidefiniteness, and nu may dip below zero under
// non-CP generators.
struct GaussianParams {
    double mu;
    double kappa;
    double nu;
};

struct SecondMoments {
    double xx;
    double pp;
    double xp_sym;

    double uncertainty_product() const { return xx * pp - xp_sym * xp_sym; }
};

inline SecondMoments second_moments(const GaussianParams& p) {
    if (!(p.mu > 0.0)) {
        throw DomainViolation("second_moments requires mu > 0");
    }
    return {1.0 / (4.0 * p.mu),
            p.mu + p.nu + p.kappa * p.kappa / (4.0 * p.mu),
            -p.kappa / (4.0 * p.mu)};
}

inline Complex density_at(const GaussianParams& p, double Q, double r) {
    if (!(p.mu > 0.0)) {
        throw DomainViolation("density_at requires mu > 0");
    }
    Complex exponent(-2.0 * p.mu * Q * Q - (p.mu + p.nu) * r * r / 2.0, -p.kappa * Q * r);
    return std::sqrt(2.0 * p.mu / M_PI) * std::exp(exponent);
}

inline double wigner_at(const GaussianParams& p, double Q, double P) {
    if (!(p.mu > 0.0)) {
        throw DomainViolation("wigner_at requires mu > 0");
    }
    double s = p.mu + p.nu;
    if (!(s > 0.0)) {
        throw NonNormalizable("wigner_at requires mu + nu > 0");
    }
    double expo = -(4.0 * p.mu * s + p.kappa * p.kappa) * Q * Q / (2.0 * s)
                - p.kappa * Q * P / s
                - P * P / (2.0 * s);
    return (1.0 / M_PI) * std::sqrt(p.mu / s) * std::exp(expo);
}

namespace detail {

// Right-hand side of the coupled rate equations in the variables
// y = (mu, kappa, s) with s = mu + nu.
inline void rate_rhs(const MasterEqCoefficients& c, const double y[3], double out[3]) {
    double mu = y[0];
    double ka = y[1];
    double s = y[2];
    double th01m = c.theta.v0 - c.theta.v1;
    double eta01m = c.eta.v0 - c.eta.v1;
    out[0] = (c.gamma + c.theta.v2) * mu + th01m * mu * ka + 2.0 * eta01m * mu * mu;
    out[1] = 0.5 * (c.theta.v0 + c.theta.v1) + c.theta.v2 * ka
           - 0.5 * th01m * (4.0 * mu * s - ka * ka)
           + 2.0 * c.eta.v2 * mu + 2.0 * eta01m * mu * ka;
    out[2] = -0.5 * (c.eta.v0 + c.eta.v1) - (c.gamma - c.theta.v2) * s
           + th01m * s * ka - c.eta.v2 * ka - 0.5 * eta01m * ka * ka;
}

inline GaussianParams rk4_integrate(const MasterEqCoefficients& c, const GaussianParams& init,
                                    double t, double dt) {
    double y[3] = {init.mu, init.kappa, init.mu + init.nu};
    long n = std::lround(t / dt);
    if (n < 1) {
        n = 1;
    }
    double h = t / static_cast<double>(n);
    double k1[3], k2[3], k3[3], k4[3], tmp[3];
    for (long i = 0; i < n; ++i) {
        rate_rhs(c, y, k1);
        for (int j = 0; j < 3; ++j) tmp[j] = y[j] + 0.5 * h * k1[j];
        rate_rhs(c, tmp, k2);
        for (int j = 0; j < 3; ++j) tmp[j] = y[j] + 0.5 * h * k2[j];
        rate_rhs(c, tmp, k3);
        for (int j = 0; j < 3; ++j) tmp[j] = y[j] + h * k3[j];
        rate_rhs(c, tmp, k4);
        for (int j = 0; j < 3; ++j) {
            y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        }
        if (!(y[0] > 1e-12 && y[0] < 1e12) || !std::isfinite(y[0])) {
            throw BlowUp("evolve_ode: mu left (1e-12, 1e12)");
        }
    }
    return {y[0], y[1], y[2] - y[0]};
}

// D(t) and the primed numerators of the closed-form solution. Complex
// intermediates; callers strip the (verified small) imaginary parts.
struct ClosedFormParts {
    Complex D;
    Complex mu_p;
    Complex kappa_p;
    Complex nu_p;
    double leading;
};

inline ClosedFormParts closed_form_parts(const MasterEqCoefficients& c,
                                         const GaussianParams& init, double t) {
    OmegaValue wv = omega_of(c);
    Complex w = wv.omega;
    double gam = c.gamma;
    double mu0 = init.mu;
    double ka0 = init.kappa;
    double nu0 = init.nu;
    CMinkVec3 th(c.theta);
    CMinkVec3 g = detail::g_vector(c, wv, t);
    PhiContext ctx = phi_context(mu0, ka0, nu0);
    double egt = std::exp(gam * t);
    Complex chwt = std::cosh(w * t);
    Complex vc1 = vcosh1(w, t);
    Complex vs = vsinh(w, t);
    Complex phi_th = phi(th, ctx);
    double th01m = c.theta.v0 - c.theta.v1;

    Complex d1 = 2.0 * mu0 * egt * (g.v0 - g.v1);
    Complex d2 = chwt;
    Complex d3 = th01m * phi_th * vc1;
    Complex d4 = -(c.theta.v2 + ka0 * th01m) * vs;
    Complex D = d1 + d2 + d3 + d4;
    double leading = std::max({std::abs(d1), std::abs(d2), std::abs(d3), std::abs(d4)});

    Complex mu_p = mu0 * egt;
    Complex kappa_p = -2.0 * mu0 * egt * g.v2 + ka0 * chwt
                    - c.theta.v2 * phi_th * vc1
                    - (-0.5 * (c.theta.v0 + c.theta.v1) + 0.5 * ctx.delta0_sq * th01m) * vs;
    Complex thg = dot(th, g);
    Complex gg = dot(g, g);
    Complex nu_p = (mu0 + nu0) * std::exp(-gam * t) - mu0 * egt * (gg + 1.0)
                 + phi(g, ctx) * chwt - thg * phi_th * vc1 + phi(wedge(th, g), ctx) * vs;
    return {D, mu_p, kappa_p, nu_p, leading};
}

inline double strip_imag(Complex z, const char* what) {
    if (std::abs(z.imag()) > 1e-8 * (1.0 + std::abs(z.real()))) {
        throw ImaginaryResidue(std::string("closed form: non-negligible imaginary part in ") + what);
    }
    return z.real();
}

}  // namespace detail

// Closed-form (mu, kappa, nu) at time t. The t=0 denominator D(0) = 1 is
// recomputed on every call as a transcription tripwire; the terms telescope
// exactly, so any deviation flags a broken kernel.
inline GaussianParams evolve_closed_form(const MasterEqCoefficients& c,
                                         const GaussianParams& init, double t) {
    if (!(init.mu > 0.0)) {
        throw DomainViolation("evolve_closed_form requires init.mu > 0");
    }
    detail::ClosedFormParts at0 = detail::closed_form_parts(c, init, 0.0);
    if (std::abs(at0.D - 1.0) > 1e-12) {
        throw NumericError("closed form self-test failed: D(0) != 1");
    }
    detail::ClosedFormParts parts = detail::closed_form_parts(c, init, t);
    if (std::abs(parts.D) < 1e-12 * parts.leading) {
        throw SingularDenominator("evolve_closed_form: D(t) vanished");
    }
    return {detail::strip_imag(parts.mu_p / parts.D, "mu"),
            detail::strip_imag(parts.kappa_p / parts.D, "kappa"),
            detail::strip_imag(parts.nu_p / parts.D, "nu")};
}

// RK4 on (mu, kappa, mu+nu), halving the step until two successive runs agree
// to 1e-9 relative or the step floor 1e-6 is reached.
inline GaussianParams evolve_ode(const MasterEqCoefficients& c, const GaussianParams& init,
                                 double t, double dt = 1e-2) {
    if (!(init.mu > 0.0)) {
        throw DomainViolation("evolve_ode requires init.mu > 0");
    }
    if (!(dt > 0.0)) {
        throw DomainViolation("evolve_ode requires dt > 0");
    }
    if (t == 0.0) {
        return init;
    }
    GaussianParams prev = detail::rk4_integrate(c, init, t, dt);
    while (dt * 0.5 >= 1e-6) {
        dt *= 0.5;
        GaussianParams cur = detail::rk4_integrate(c, init, t, dt);
        double scale = std::max({1.0, std::abs(cur.mu), std::abs(cur.kappa), std::abs(cur.nu)});
        double diff = std::max({std::abs(cur.mu - prev.mu), std::abs(cur.kappa - prev.kappa),
                                std::abs(cur.nu - prev.nu)});
        if (diff < 1e-9 * scale) {
            return cur;
        }
        prev = cur;
    }
    return prev;
}

// Block-by-block diagnostics of the matrix-pipeline route, for consistency
// tests: determinant of the lower-right block, the symmetry and symplectic
// residuals of the block relations, and the determinant-based mu.
struct PipelineDiagnostics {
    Complex det_d22;
    double sym1;
    double sym2;
    double sympl;
    double offdiag;
    double mu_from_det;
};

// Evolves the initial Gaussian through the 4x4 matrix representation:
// D = exp(-t K') rho'(0), then R = -D12 D22^{-1} carries (4mu, i kappa, mu+nu).
inline GaussianParams evolve_matrix_pipeline(const MasterEqCoefficients& c,
                                             const GaussianParams& init, double t,
                                             PipelineDiagnostics* diag = nullptr) {
    if (!(init.mu > 0.0)) {
        throw DomainViolation("evolve_matrix_pipeline requires init.mu > 0");
    }
    const Complex i(0.0, 1.0);
    Block2 R0;
    R0 << 4.0 * init.mu, i * init.kappa,
          i * init.kappa, init.mu + init.nu;
    Sympl4 rho0 = Sympl4::Identity();
    rho0.block<2, 2>(0, 2) = -R0;
    Sympl4 Kp = assemble_K(c, true).matrix;
    Sympl4 D = matrix_exp((-t * Kp).eval()) * rho0;
    Block2 D11 = block11(D), D12 = block12(D), D21 = block21(D), D22 = block22(D);
    Complex det_d22 = D22.determinant();
    if (std::abs(det_d22) < 1e-12) {
        throw SingularD22("evolve_matrix_pipeline: det D22 vanished");
    }
    Block2 R = -D12 * D22.inverse();
    double mu = R(0, 0).real() / 4.0;
    double ka = R(0, 1).imag();
    double nu = R(1, 1).real() - mu;
    if (diag) {
        Block2 s1 = D11.transpose() * D21;
        Block2 s2 = D12.transpose() * D22;
        Block2 sp = D11.transpose() * D22 - D21.transpose() * D12 - Block2::Identity();
        diag->det_d22 = det_d22;
        diag->sym1 = (s1 - s1.transpose()).cwiseAbs().maxCoeff();
        diag->sym2 = (s2 - s2.transpose()).cwiseAbs().maxCoeff();
        diag->sympl = sp.cwiseAbs().maxCoeff();
        diag->offdiag = std::abs(R(0, 1) - R(1, 0));
        diag->mu_from_det = init.mu * std::exp(c.gamma * t) / det_d22.real();
    }
    return {mu, ka, nu};
}

struct MinNuScan {
    double t_star;
    double nu_min;
};

namespace detail {

template <typename F>
double golden_section_min(F f, double a, double b, double tol = 1e-10) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (std::abs(b - a) > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace detail

// Minimum of nu(t) on [0, max(20, 10/gamma)]: 2000-point uniform scan plus
// golden-section refinement around the discrete minimum. The early-time dips
// that decide positivity are shallow, hence the dense grid.
inline MinNuScan scan_min_nu(const MasterEqCoefficients& c, const GaussianParams& init) {
    double T = c.gamma > 0.0 ? std::max(20.0, 10.0 / c.gamma) : 20.0;
    const int n = 2000;
    auto nu_at = [&](double t) { return evolve_closed_form(c, init, t).nu; };
    int imin = 0;
    double best = init.nu;
    for (int k = 0; k < n; ++k) {
        double t = T * static_cast<double>(k) / (n - 1);
        double v = nu_at(t);
        if (v < best) {
            best = v;
            imin = k;
        }
    }
    double lo = T * static_cast<double>(std::max(0, imin - 1)) / (n - 1);
    double hi = T * static_cast<double>(std::min(n - 1, imin + 1)) / (n - 1);
    double t_star = detail::golden_section_min(nu_at, lo, hi);
    return {t_star, nu_at(t_star)};
}

}  // namespace gme
