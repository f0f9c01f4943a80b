#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <locale>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "gme/catalog.hpp"
#include "gme/config.hpp"
#include "gme/errors.hpp"
#include "gme/evolution.hpp"
#include "gme/propagator.hpp"
#include "gme/stationary.hpp"

namespace gme {

// Locale-independent decimal rendering at 12 significant digits, shared by
// the CSV and threshold outputs.
inline std::string format_number(double x) {
    std::ostringstream s;
    s.imbue(std::locale::classic());
    s << std::setprecision(12) << x;
    return s.str();
}

// Plain bisection. Requires a sign change over [lo, hi]; halves until the
// bracket width drops below tol, so identical inputs give identical output.
template <typename F>
double bisect(F&& f, double lo, double hi, double tol) {
    if (!(hi > lo)) {
        throw ParseError("bisection bracket must satisfy lo < hi");
    }
    if (!(tol > 0.0)) {
        throw ParseError("bisection tolerance must be positive");
    }
    double fa = f(lo);
    double fb = f(hi);
    if (!(fa * fb <= 0.0)) {
        throw NoSignChange("criterion does not change sign over [" + format_number(lo) + ", "
                           + format_number(hi) + "]: f(lo) = " + format_number(fa)
                           + ", f(hi) = " + format_number(fb));
    }
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (fa * fm <= 0.0) {
            hi = mid;
        } else {
            lo = mid;
            fa = fm;
        }
    }
    return 0.5 * (lo + hi);
}

namespace detail {

inline const char* regime_name(DampingRegime r) {
    switch (r) {
        case DampingRegime::underdamped: return "underdamped";
        case DampingRegime::critically_damped: return "critically_damped";
        case DampingRegime::overdamped: return "overdamped";
    }
    return "underdamped";
}

inline const char* reason_name(ExistenceReason r) {
    switch (r) {
        case ExistenceReason::ok: return "ok";
        case ExistenceReason::gamma_nonpositive: return "gamma_nonpositive";
        case ExistenceReason::overdamped_omega_ge_gamma: return "overdamped_omega_ge_gamma";
    }
    return "ok";
}

// Exit-code policy: 1 for configuration and domain errors, 2 for numeric
// failures, other codes returned directly by the command body.
template <typename Fn>
int run_guarded(Fn&& fn, std::ostream& err) {
    try {
        return fn();
    } catch (const NumericError& e) {
        err << "numeric error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

inline nlohmann::ordered_json json_number(double x) {
    if (std::isfinite(x)) return x == 0.0 ? 0.0 : x;
    return nullptr;
}

inline nlohmann::ordered_json json_verdict(Verdict v) {
    switch (v) {
        case Verdict::yes: return true;
        case Verdict::no: return false;
        case Verdict::boundary: return "boundary";
    }
    return false;
}

inline std::string csv_trajectory(const MasterEqCoefficients& c, const InitialState& init,
                                  double t_max, int samples) {
    GaussianParams p0{init.mu0, init.kappa0, init.nu0};
    std::string out = "t,mu,kappa,nu\n";
    for (int i = 0; i < samples; ++i) {
        double t = t_max * static_cast<double>(i) / static_cast<double>(samples - 1);
        GaussianParams p = evolve_closed_form(c, p0, t);
        out += format_number(t) + ',' + format_number(p.mu) + ',' + format_number(p.kappa) + ','
               + format_number(p.nu) + '\n';
    }
    return out;
}

}  // namespace detail

inline int cmd_evolve(const ScenarioConfig& cfg, bool require_stationary, std::ostream& out,
                      std::ostream& err) {
    return detail::run_guarded(
        [&]() -> int {
            if (require_stationary) {
                Existence ex = existence(cfg.coefficients);
                if (!ex.exists) {
                    err << "error: stationary state does not exist ("
                        << detail::reason_name(ex.reason) << ")\n";
                    return 3;
                }
            }
            out << detail::csv_trajectory(cfg.coefficients, cfg.init, cfg.t_max, cfg.samples);
            return 0;
        },
        err);
}

inline int cmd_analyze(const ScenarioConfig& cfg, double tol, std::ostream& out,
                       std::ostream& err) {
    return detail::run_guarded(
        [&]() -> int {
            const MasterEqCoefficients& c = cfg.coefficients;
            nlohmann::ordered_json doc;

            if (c.gamma > 0.0 && c.theta.v0 > 0.0) {
                doc["class"] = to_string(classify(c, tol));
            } else {
                doc["class"] = nullptr;
            }

            OmegaValue wv = omega_of(c);
            doc["omega_sq"] = wv.omega_sq;
            doc["regime"] = detail::regime_name(wv.regime);

            StationaryReport rep = stationary_params(c);
            doc["exists"] = rep.existence.exists;
            doc["reason"] = detail::reason_name(rep.existence.reason);
            if (rep.existence.exists) {
                doc["gamma_vec"] = {rep.gamma_vec.v0, rep.gamma_vec.v1, rep.gamma_vec.v2};
                doc["mu_st"] = detail::json_number(rep.mu_st);
                doc["kappa_st"] = detail::json_number(rep.kappa_st);
                doc["nu_st"] = detail::json_number(rep.nu_st);
                doc["well_behaved"] = detail::json_verdict(rep.well_behaved);
                doc["positive"] = detail::json_verdict(rep.positive);
            } else {
                doc["gamma_vec"] = nullptr;
                doc["mu_st"] = nullptr;
                doc["kappa_st"] = nullptr;
                doc["nu_st"] = nullptr;
                doc["well_behaved"] = nullptr;
                doc["positive"] = nullptr;
            }
            doc["factorized_residual"] = rep.factorized_residual;
            doc["gibbs"] = rep.existence.exists ? nlohmann::ordered_json(rep.gibbs)
                                                : nlohmann::ordered_json(nullptr);

            if (c.gamma > 0.0) {
                DekkerComparison d = dekker_vs_generic(c);
                doc["dekker_ok"] = d.dekker_ok;
                doc["generic_positive_ok"] = d.generic_ok;
            } else {
                doc["dekker_ok"] = nullptr;
                doc["generic_positive_ok"] = nullptr;
            }

            doc["cp_witness"] = nullptr;
            if (c.gamma > 0.0) {
                try {
                    if (std::optional<CPWitness> w = cp_decompose(c)) {
                        doc["cp_witness"] = {{"c", w->c}, {"s1", w->s1}, {"s2", w->s2}};
                    }
                } catch (const UnsupportedRealization&) {
                    // eta2 != 0 lies outside the two-operator family; report no witness.
                }
            }

            out << doc.dump(2) << '\n';
            return 0;
        },
        err);
}

inline int cmd_classify(const ScenarioConfig& cfg, double tol, std::ostream& out,
                        std::ostream& err) {
    return detail::run_guarded(
        [&]() -> int {
            out << to_string(classify(cfg.coefficients, tol)) << '\n';
            return 0;
        },
        err);
}

namespace detail {

inline double threshold_margin(const ScenarioConfig& cfg, const ThresholdSpec& spec, double x) {
    MasterEqCoefficients c = apply_scan(cfg, spec.coefficient, x);
    switch (spec.criterion) {
        case ThresholdCriterion::stationary_nu_zero: {
            StationaryReport rep = stationary_params(c);
            if (!rep.existence.exists) {
                throw DomainViolation(std::string("stationary state does not exist at scan point ")
                                      + format_number(x) + " (" + reason_name(rep.existence.reason)
                                      + ")");
            }
            // nu_st and -Gamma.Gamma - 1 vanish together (the latter is
            // nu_st rescaled by 2(Gamma_0 - Gamma_1)), but the rescaled
            // margin stays finite when the scan crosses the mu_st pole at
            // Gamma_0 = Gamma_1, so wide brackets remain usable.
            return -dot(rep.gamma_vec, rep.gamma_vec) - 1.0;
        }
        case ThresholdCriterion::overdamped_boundary:
            return omega_of(c).omega_sq;
        case ThresholdCriterion::cp_boundary: {
            if (c.eta.v2 != 0.0) {
                throw UnsupportedRealization(
                    "cp_boundary criterion applies only to eta2 = 0 families");
            }
            double margin_rate = -c.eta.v0 - c.gamma;
            double margin_disc = c.eta.v0 * c.eta.v0 - c.eta.v1 * c.eta.v1 - c.gamma * c.gamma;
            return std::min(margin_rate, margin_disc);
        }
        case ThresholdCriterion::min_traj_nu_zero: {
            GaussianParams p0{cfg.init.mu0, cfg.init.kappa0, cfg.init.nu0};
            return scan_min_nu(c, p0).nu_min;
        }
    }
    throw ParseError("unknown threshold criterion");
}

}  // namespace detail

inline int cmd_threshold(const ScenarioConfig& cfg, const ThresholdSpec& spec, std::ostream& out,
                         std::ostream& err) {
    return detail::run_guarded(
        [&]() -> int {
            double root = bisect([&](double x) { return detail::threshold_margin(cfg, spec, x); },
                                 spec.lo, spec.hi, spec.tolerance);
            out << format_number(root) << '\n';
            return 0;
        },
        err);
}

namespace detail {

struct FigureCurve {
    std::string tag;
    MasterEqCoefficients coefficients;
    InitialState init;
};

inline std::string tag_number(double x) {
    std::ostringstream s;
    s.imbue(std::locale::classic());
    s << x;
    return s.str();
}

inline std::vector<FigureCurve> figure_curves(const std::string& preset) {
    const InitialState unit{1.0, 1.0, 1.0};
    const double b0 = 0.6;
    const InitialState squeezed{1.0 / (4.0 * b0), 1.0, b0 - 1.0 / (4.0 * b0)};
    std::vector<FigureCurve> curves;
    auto add = [&](const std::string& tag, EquationClass cls, const CanonicalParams& p,
                   const InitialState& init) {
        curves.push_back({tag, canonical(cls, p), init});
    };
    if (preset == "fig1-left") {
        for (double eta2 : {1.0, 0.0, -1.0, -1.5}) {
            add("th1_0.5_eta2_" + tag_number(eta2), EquationClass::HPZ,
                {1.0, 1.0, 1.0, 0.5, 0.0, eta2}, unit);
        }
        add("th1_-0.5_eta2_-1.5", EquationClass::HPZ, {1.0, 1.0, 1.0, -0.5, 0.0, -1.5}, unit);
    } else if (preset == "fig1-right") {
        for (double eta2 : {-3.0, -2.0, 3.0, 7.0}) {
            add("th1_0.5_eta2_" + tag_number(eta2), EquationClass::ConjugateHPZ,
                {1.0, 1.0, 1.0, 0.5, 0.0, eta2}, unit);
        }
        add("th1_-0.5_eta2_7", EquationClass::ConjugateHPZ, {1.0, 1.0, 1.0, -0.5, 0.0, 7.0},
            unit);
    } else if (preset == "fig2-left") {
        add("CL_th1_0.2_b_2", EquationClass::CL, {1.0, 1.0, 2.0, 0.2, 0.0, 0.0}, squeezed);
        add("CL_th1_0.2_b_0.6", EquationClass::CL, {1.0, 1.0, 0.6, 0.2, 0.0, 0.0}, squeezed);
        add("CL_th1_-0.2_b_0.6", EquationClass::CL, {1.0, 1.0, 0.6, -0.2, 0.0, 0.0}, squeezed);
        add("cCL_th1_0.2_b_0.6", EquationClass::ConjugateCL, {1.0, 1.0, 0.6, 0.2, 0.0, 0.0},
            squeezed);
        add("cCL_th1_-0.2_b_0.6", EquationClass::ConjugateCL, {1.0, 1.0, 0.6, -0.2, 0.0, 0.0},
            squeezed);
    } else if (preset == "fig2-right") {
        for (double th2 : {-1.0, -0.86, -0.553, 0.0, 1.0}) {
            add("gCL_th2_" + tag_number(th2), EquationClass::GeneralizedCL,
                {1.0, 1.0, b0, 0.0, th2, 0.0}, squeezed);
        }
    } else if (preset == "fig3-left") {
        for (double th1 : {-1.106, -0.5, 0.0, 0.5, 1.106}) {
            add("gKL1_th1_" + tag_number(th1), EquationClass::GeneralizedKL1,
                {1.0, 1.0, b0, th1, 0.0, 0.0}, squeezed);
        }
    } else if (preset == "fig3-right") {
        for (double th1 : {-1.8, -1.0, 0.0, 1.0, 1.8}) {
            add("gKL2_th1_" + tag_number(th1), EquationClass::GeneralizedKL2,
                {1.0, 1.0, b0, th1, 0.0, 0.0}, squeezed);
        }
    } else {
        throw ParseError("unknown figure preset '" + preset
                         + "' (expected fig1-left, fig1-right, fig2-left, fig2-right, fig3-left, "
                           "or fig3-right)");
    }
    return curves;
}

}  // namespace detail

// Figure trajectories run to t = 40 so the terminal row sits on the
// stationary values; 2001 samples keep the early transient resolved.
inline constexpr double kFigureTMax = 40.0;
inline constexpr int kFigureSamples = 2001;

inline int cmd_figure(const std::string& preset, const std::string& out_dir, std::ostream& out,
                      std::ostream& err) {
    return detail::run_guarded(
        [&]() -> int {
            std::vector<detail::FigureCurve> curves = detail::figure_curves(preset);
            std::filesystem::path dir(out_dir);
            std::filesystem::create_directories(dir);
            std::vector<std::future<std::string>> jobs;
            jobs.reserve(curves.size());
            for (const detail::FigureCurve& curve : curves) {
                jobs.push_back(std::async(std::launch::async, [&, curve]() {
                    std::string csv = detail::csv_trajectory(curve.coefficients, curve.init,
                                                             kFigureTMax, kFigureSamples);
                    std::filesystem::path path = dir / (preset + "_" + curve.tag + ".csv");
                    std::ofstream f(path);
                    if (!f) {
                        throw ParseError("cannot open output file '" + path.string() + "'");
                    }
                    f << csv;
                    return path.string();
                }));
            }
            for (auto& job : jobs) {
                out << "wrote " << job.get() << '\n';
            }
            return 0;
        },
        err);
}

}  // namespace gme
