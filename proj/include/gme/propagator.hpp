#pragma once

#include <cmath>
#include <complex>

#include "gme/algebra.hpp"
#include "gme/errors.hpp"
#include "gme/generators.hpp"
#include "gme/kernels.hpp"

namespace gme {

enum class DampingRegime { underdamped, critically_damped, overdamped };

// omega^2 = -theta0^2 + theta1^2 + theta2^2 and its principal square root:
// real >= 0 when omega^2 >= 0, otherwise +i*sqrt(-omega^2).
struct OmegaValue {
    double omega_sq;
    Complex omega;
    DampingRegime regime;
};

inline OmegaValue omega_of(const MasterEqCoefficients& c) {
    double w2 = -c.theta.v0 * c.theta.v0 + c.theta.v1 * c.theta.v1 + c.theta.v2 * c.theta.v2;
    Complex w = w2 >= 0.0 ? Complex(std::sqrt(w2), 0.0) : Complex(0.0, std::sqrt(-w2));
    DampingRegime regime;
    if (std::abs(w2) <= 1e-12 * c.theta.v0 * c.theta.v0) {
        regime = DampingRegime::critically_damped;
    } else if (w2 < 0.0) {
        regime = DampingRegime::underdamped;
    } else {
        regime = DampingRegime::overdamped;
    }
    return {w2, w, regime};
}

// Unit vector theta/omega; complex for underdamped dynamics.
inline CMinkVec3 theta_hat(const MasterEqCoefficients& c, const OmegaValue& w) {
    return (1.0 / w.omega) * CMinkVec3(c.theta);
}

enum class Sign { plus, minus };

// Projection of v onto the light-like sector transverse to theta_hat:
// v - theta_hat (theta_hat . v) -/+ theta_hat ^ v. Output is light-like and
// (1/2)*projector is idempotent.
inline CMinkVec3 projector_pm(Sign sign, const CMinkVec3& v, const CMinkVec3& th) {
    Complex unit = dot(th, th);
    if (std::abs(unit - 1.0) > 1e-10) {
        throw DomainViolation("projector_pm requires a unit theta_hat (theta_hat . theta_hat = 1)");
    }
    CMinkVec3 base = v - dot(th, v) * th;
    CMinkVec3 wv = wedge(th, v);
    return sign == Sign::plus ? base - wv : base + wv;
}

// Coefficients of the seven-factor product form of the propagator. h, m0,
// m_plus, m_minus and g solve the Wei-Norman system for the generator; t is
// the evaluation time. sqrt_m0 is the continuously-tracked square root of m0
// (the principal branch flips sign once |omega| t passes pi, so the root is
// carried explicitly instead of recomputed from m0).
struct BCHCoefficients {
    double h;
    Complex m0;
    Complex m_plus;
    Complex m_minus;
    CMinkVec3 g;
    double t;
    Complex sqrt_m0;
};

namespace detail {

// g(t) in the grouped form eta*A + (theta.eta) theta * B - (theta^eta) * C
// with kernels regular across gamma = +/-omega. The two branches trade the
// cancellation-prone combinations for series-safe ones.
inline CMinkVec3 g_vector(const MasterEqCoefficients& c, const OmegaValue& wv, double t) {
    double gam = c.gamma;
    double w2 = wv.omega_sq;
    Complex w = wv.omega;
    CMinkVec3 th(c.theta);
    CMinkVec3 eta(c.eta);
    Complex A = 0.5 * (psi_k(gam - w, t) + psi_k(gam + w, t));
    Complex B, C;
    if (std::abs(w) >= 0.5 * std::max(gam, 1e-30)) {
        B = (psi_k(Complex(gam, 0.0), t) - A) / w2;
        C = (psi_k(gam - w, t) - psi_k(gam + w, t)) / (2.0 * w);
    } else {
        double denom = gam * (gam * gam - w2);
        if (std::abs(denom) < 1e-60) {
            throw SingularDenominator("g(t): gamma and omega both vanish");
        }
        double eg = std::exp(-gam * t);
        B = (-gam * gam * eg * vcosh1(w, t) - gam * eg * vsinh(w, t) + (1.0 - eg)) / denom;
        C = (gam * eg * vsinh(w, t) + eg * std::cosh(w * t) - 1.0) / (gam * gam - w2);
    }
    return A * eta + (dot(th, eta) * B) * th - C * wedge(th, eta);
}

}  // namespace detail

inline BCHCoefficients bch_coefficients(const MasterEqCoefficients& c, double t) {
    OmegaValue wv = omega_of(c);
    Complex w = wv.omega;
    double h = -c.gamma * t;
    Complex ch = std::cosh(w * t / 2.0);
    Complex sc = shc(w, t);
    Complex den = ch + Complex(0.0, 1.0) * c.theta.v0 * sc;
    if (std::abs(den) < 1e-12) {
        throw PoleInM0("bch_coefficients: m0 denominator cosh(wt/2) + i theta0 sinh(wt/2)/w vanished");
    }
    Complex sq = 1.0 / den;
    Complex m0 = sq * sq;
    Complex mp = -(Complex(0.0, c.theta.v1) + c.theta.v2) * sc * sq;
    Complex mm = -(Complex(0.0, c.theta.v1) - c.theta.v2) * sc * sq;
    CMinkVec3 g = detail::g_vector(c, wv, t);
    return {h, m0, mp, mm, g, t, sq};
}

// Coefficient vector of the raising-sector generators (O+, L1+, L2+) in the
// closed-form propagator, evaluated with cancellation-free kernels.
inline CMinkVec3 raising_sector_coefficients(const MasterEqCoefficients& c, double t) {
    OmegaValue wv = omega_of(c);
    double gam = c.gamma;
    Complex w = wv.omega;
    double w2 = wv.omega_sq;
    if (std::abs(gam) < 1e-30) {
        throw SingularDenominator("raising-sector coefficients undefined at gamma = 0");
    }
    CMinkVec3 th(c.theta);
    CMinkVec3 eta(c.eta);
    double scale = std::max({gam, std::abs(w), 1.0});
    Complex Sm = sinhc_pole(gam - w, t, scale);
    Complex Sp = sinhc_pole(gam + w, t, scale);
    Complex Ssum = Sm + Sp;
    Complex T;
    if (std::abs(w) >= 0.5 * std::max(gam, 1e-30)) {
        T = (Sm - Sp) / w;
    } else {
        T = 2.0 * (std::sinh(gam * t / 2.0) * std::cosh(w * t / 2.0)
                   - gam * std::cosh(gam * t / 2.0) * shc(w, t)) / (gam * gam - w2);
    }
    return Ssum * eta - T * ((dot(th, eta) / gam) * th + wedge(th, eta));
}

namespace detail {

inline Sympl4 K0_matrix(const MasterEqCoefficients& c) {
    return c.theta.v0 * generator_matrix(GeneratorName::L0)
         + c.theta.v1 * generator_matrix(GeneratorName::M1)
         + c.theta.v2 * generator_matrix(GeneratorName::M2);
}

inline Sympl4 K1_matrix(const MasterEqCoefficients& c) {
    return c.gamma * generator_matrix(GeneratorName::O0)
         + c.eta.v0 * generator_matrix(GeneratorName::OPlus)
         + c.eta.v1 * generator_matrix(GeneratorName::L1Plus)
         + c.eta.v2 * generator_matrix(GeneratorName::L2Plus);
}

inline Sympl4 anticommutator(const Sympl4& a, const Sympl4& b) {
    return a * b + b * a;
}

}  // namespace detail

// Closed-form propagator e^{-tK} = e^{gamma t/2} [ cosh(wt/2)cosh(gt/2) I
// + (2/(w g)) sinh(wt/2) sinh(gt/2) {K0,K1} - (2/w) sinh(wt/2) cosh(gt/2) K0
// - 2 cosh(wt/2) sinh(gt/2) O0 - Sigma . (O+, L1+, L2+) ].
inline Sympl4 propagator_closed_form(const MasterEqCoefficients& c, double t) {
    OmegaValue wv = omega_of(c);
    Complex w = wv.omega;
    double gam = c.gamma;
    Sympl4 K0 = detail::K0_matrix(c);
    Sympl4 H = detail::anticommutator(K0, detail::K1_matrix(c));
    CMinkVec3 Sig = raising_sector_coefficients(c, t);
    Complex chw = std::cosh(w * t / 2.0);
    Complex scw = shc(w, t);
    Complex chg = std::cosh(gam * t / 2.0);
    Complex shg = std::sinh(gam * t / 2.0);
    Complex scg = shc(Complex(gam, 0.0), t);
    Sympl4 M = chw * chg * Sympl4::Identity()
             + 2.0 * scw * scg * H
             - 2.0 * scw * chg * K0
             - 2.0 * chw * shg * generator_matrix(GeneratorName::O0)
             - Sig.v0 * generator_matrix(GeneratorName::OPlus)
             - Sig.v1 * generator_matrix(GeneratorName::L1Plus)
             - Sig.v2 * generator_matrix(GeneratorName::L2Plus);
    return std::exp(gam * t / 2.0) * M;
}

// Seven-factor product form. All factors except the O0 and M0 ones are
// I + coef*J thanks to J^2 = 0; those two use their cosh/sinh closures.
inline Sympl4 propagator_from_bch(const BCHCoefficients& b) {
    const Complex i(0.0, 1.0);
    Sympl4 I = Sympl4::Identity();
    Sympl4 ML0 = -i * generator_matrix(GeneratorName::L0);
    Sympl4 MM1 = -i * generator_matrix(GeneratorName::M1);
    Sympl4 MM2 = -i * generator_matrix(GeneratorName::M2);
    Sympl4 MMp = MM1 + i * MM2;
    Sympl4 MMm = MM1 - i * MM2;
    Sympl4 F_g2 = I + b.g.v2 * generator_matrix(GeneratorName::L2Plus);
    Sympl4 F_g1 = I + b.g.v1 * generator_matrix(GeneratorName::L1Plus);
    Sympl4 F_g0 = I + b.g.v0 * generator_matrix(GeneratorName::OPlus);
    Sympl4 F_h = std::exp(-b.h / 2.0)
               * (std::cosh(b.h / 2.0) * I + 2.0 * std::sinh(b.h / 2.0) * generator_matrix(GeneratorName::O0));
    Sympl4 F_mp = I + b.m_plus * MMp;
    Complex cosh_l = 0.5 * (b.sqrt_m0 + 1.0 / b.sqrt_m0);
    Complex sinh_l = 0.5 * (b.sqrt_m0 - 1.0 / b.sqrt_m0);
    Sympl4 F_m0 = cosh_l * I + 2.0 * sinh_l * ML0;
    Sympl4 F_mm = I + b.m_minus * MMm;
    return F_g2 * F_g1 * F_g0 * F_h * F_mp * F_m0 * F_mm;
}

// Spectral form built from the four eigenvalues +/-(gamma +/- omega)/2 of K'.
// Valid when omega*gamma != 0; used as an independent cross-check route.
inline Sympl4 propagator_spectral_form(const MasterEqCoefficients& c, double t) {
    OmegaValue wv = omega_of(c);
    Complex w = wv.omega;
    double gam = c.gamma;
    Complex beta = w * gam / 2.0;
    if (std::abs(beta) < 1e-12) {
        throw SingularDenominator("spectral form requires omega*gamma != 0");
    }
    Sympl4 K0 = detail::K0_matrix(c);
    Sympl4 K1 = detail::K1_matrix(c);
    Sympl4 K = K0 + K1;
    Sympl4 H = detail::anticommutator(K0, K1);
    Sympl4 AH = 0.5 * detail::anticommutator(K, H);
    double scale = std::max({gam, std::abs(w), 1.0});
    Complex cp = std::cosh((gam + w) * t / 2.0);
    Complex cm = std::cosh((gam - w) * t / 2.0);
    Complex Sp = sinhc_pole(gam + w, t, scale);
    Complex Sm = sinhc_pole(gam - w, t, scale);
    return 0.5 * (cp + cm) * Sympl4::Identity()
         + (cp - cm) / (2.0 * beta) * H
         - (Sp + Sm) * K
         - (Sp - Sm) / beta * AH;
}

// Scaling-and-squaring exponential with a truncated Taylor series; relative
// accuracy 1e-12 for matrices with norm up to 50.
inline Sympl4 matrix_exp(const Sympl4& M) {
    double norm = M.cwiseAbs().rowwise().sum().maxCoeff();
    if (!(norm < 1e4)) {
        throw NormOverflow("matrix_exp: norm too large");
    }
    int squarings = 0;
    double scaled = norm;
    while (scaled > 0.5) {
        scaled /= 2.0;
        ++squarings;
    }
    Sympl4 A = M / std::pow(2.0, squarings);
    Sympl4 result = Sympl4::Identity();
    Sympl4 term = Sympl4::Identity();
    for (int k = 1; k <= 40; ++k) {
        term = (term * A) / static_cast<double>(k);
        result += term;
        if (term.cwiseAbs().maxCoeff() < 1e-20) {
            break;
        }
    }
    for (int s = 0; s < squarings; ++s) {
        result = result * result;
    }
    return result;
}

}  // namespace gme
