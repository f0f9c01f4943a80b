#pragma once

#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"

#include "gme/algebra.hpp"
#include "gme/catalog.hpp"
#include "gme/errors.hpp"

namespace gme {

struct InitialState {
    double mu0 = 1.0;
    double kappa0 = 1.0;
    double nu0 = 1.0;
};

// A fully validated run scenario. Coefficients either come in raw
// (gamma/theta*/eta*) or are expanded from a named class row; in the latter
// case the class and its named parameters are retained so threshold scans can
// re-expand the family instead of mutating a single raw coefficient.
struct ScenarioConfig {
    MasterEqCoefficients coefficients;
    std::optional<EquationClass> equation_class;
    std::optional<CanonicalParams> class_params;
    InitialState init;
    double t_max = 10.0;
    int samples = 201;
    ValidationMode mode = ValidationMode::physical;
};

enum class ThresholdCriterion {
    stationary_nu_zero,
    overdamped_boundary,
    cp_boundary,
    min_traj_nu_zero,
};

struct ThresholdSpec {
    std::string coefficient;
    double lo = 0.0;
    double hi = 0.0;
    ThresholdCriterion criterion = ThresholdCriterion::stationary_nu_zero;
    double tolerance = 1e-6;
};

namespace detail {

struct RawValue {
    std::string text;
    int line = 0;  // 0 when the document was JSON (no line tracking)
};

inline std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::string key_context(const std::string& key, const RawValue& v) {
    if (v.line > 0) {
        return "line " + std::to_string(v.line) + ", key '" + key + "'";
    }
    return "key '" + key + "'";
}

inline double parse_double(const std::string& key, const RawValue& v) {
    const char* begin = v.text.c_str();
    char* end = nullptr;
    double x = std::strtod(begin, &end);
    if (end == begin || *end != '\0') {
        throw ParseError(key_context(key, v) + ": expected a number, got '" + v.text + "'");
    }
    return x;
}

inline int parse_int(const std::string& key, const RawValue& v) {
    const char* begin = v.text.c_str();
    char* end = nullptr;
    long x = std::strtol(begin, &end, 10);
    if (end == begin || *end != '\0') {
        throw ParseError(key_context(key, v) + ": expected an integer, got '" + v.text + "'");
    }
    return static_cast<int>(x);
}

inline std::map<std::string, RawValue> parse_key_value_lines(const std::string& text) {
    std::map<std::string, RawValue> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string stripped = trim(line);
        if (stripped.empty()) continue;
        size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ParseError("line " + std::to_string(lineno) + ": expected key=value, got '"
                             + stripped + "'");
        }
        std::string key = trim(stripped.substr(0, eq));
        std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) {
            throw ParseError("line " + std::to_string(lineno) + ": empty key");
        }
        auto [it, inserted] = out.emplace(key, RawValue{value, lineno});
        if (!inserted) {
            throw ParseError("line " + std::to_string(lineno) + ": duplicate key '" + key
                             + "' (first seen on line " + std::to_string(it->second.line) + ")");
        }
    }
    return out;
}

inline std::map<std::string, RawValue> parse_json_document(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ParseError("JSON configuration must be a single object");
    }
    std::map<std::string, RawValue> out;
    for (auto& [key, value] : doc.items()) {
        std::string text_value;
        if (value.is_string()) {
            text_value = value.get<std::string>();
        } else if (value.is_number() || value.is_boolean()) {
            text_value = value.dump();
        } else {
            throw ParseError("key '" + key + "': JSON value must be a number or string");
        }
        out.emplace(key, RawValue{text_value, 0});
    }
    return out;
}

inline EquationClass class_from_name(const std::string& name, const RawValue& v) {
    if (name == "KL") return EquationClass::KL;
    if (name == "CL") return EquationClass::CL;
    if (name == "ConjugateCL") return EquationClass::ConjugateCL;
    if (name == "GeneralizedCL") return EquationClass::GeneralizedCL;
    if (name == "HPZ") return EquationClass::HPZ;
    if (name == "ConjugateHPZ") return EquationClass::ConjugateHPZ;
    if (name == "GeneralizedKL1") return EquationClass::GeneralizedKL1;
    if (name == "GeneralizedKL2") return EquationClass::GeneralizedKL2;
    throw ParseError(key_context("class", v) + ": unknown class '" + name
                     + "' (expected KL, CL, ConjugateCL, GeneralizedCL, HPZ, ConjugateHPZ, "
                       "GeneralizedKL1, or GeneralizedKL2)");
}

}  // namespace detail

inline constexpr const char* kRequiredKeysMessage =
    "required keys: gamma, theta0, theta1, theta2, eta0, eta1, eta2 "
    "(or: class plus gamma, omega0, b, theta1, theta2, eta2); "
    "optional keys: mu0, kappa0, nu0, b0, t_max, samples, mode";

inline ScenarioConfig parse_config(const std::string& text,
                                   std::optional<ValidationMode> mode_override = std::nullopt) {
    size_t first = text.find_first_not_of(" \t\r\n");
    std::map<std::string, detail::RawValue> kv;
    if (first != std::string::npos && text[first] == '{') {
        kv = detail::parse_json_document(text);
    } else {
        kv = detail::parse_key_value_lines(text);
    }
    if (kv.empty()) {
        throw ParseError(std::string("configuration is empty; ") + kRequiredKeysMessage);
    }

    std::set<std::string> seen;
    auto take = [&](const char* key) -> std::optional<detail::RawValue> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        seen.insert(key);
        return it->second;
    };

    ScenarioConfig cfg;

    auto mode_value = take("mode");
    if (mode_value) {
        if (mode_value->text == "physical") {
            cfg.mode = ValidationMode::physical;
        } else if (mode_value->text == "raw") {
            cfg.mode = ValidationMode::raw;
        } else {
            throw ParseError(detail::key_context("mode", *mode_value)
                             + ": expected 'physical' or 'raw', got '" + mode_value->text + "'");
        }
    }
    if (mode_override) cfg.mode = *mode_override;

    auto class_value = take("class");
    if (class_value) {
        EquationClass cls = detail::class_from_name(class_value->text, *class_value);
        for (const char* raw_key : {"theta0", "eta0", "eta1"}) {
            if (kv.count(raw_key)) {
                throw ParseError(std::string("key '") + raw_key
                                 + "' conflicts with 'class' (it is derived from the class row)");
            }
        }
        CanonicalParams p;
        if (auto v = take("gamma")) p.gamma = detail::parse_double("gamma", *v);
        if (auto v = take("omega0")) p.omega0 = detail::parse_double("omega0", *v);
        if (auto v = take("b")) p.b = detail::parse_double("b", *v);
        if (auto v = take("theta1")) p.theta1 = detail::parse_double("theta1", *v);
        if (auto v = take("theta2")) p.theta2 = detail::parse_double("theta2", *v);
        if (auto v = take("eta2")) p.eta2 = detail::parse_double("eta2", *v);
        cfg.coefficients = canonical(cls, p);
        cfg.equation_class = cls;
        cfg.class_params = p;
    } else {
        for (const char* bad_key : {"omega0", "b"}) {
            if (kv.count(bad_key)) {
                throw ParseError(std::string("key '") + bad_key
                                 + "' requires 'class' (raw coefficients use theta0 and eta0)");
            }
        }
        std::string missing;
        auto need = [&](const char* key) -> double {
            if (auto v = take(key)) return detail::parse_double(key, *v);
            missing += missing.empty() ? key : std::string(", ") + key;
            return 0.0;
        };
        double gamma = need("gamma");
        double th0 = need("theta0"), th1 = need("theta1"), th2 = need("theta2");
        double e0 = need("eta0"), e1 = need("eta1"), e2 = need("eta2");
        if (!missing.empty()) {
            throw ParseError("missing coefficient keys: " + missing + "; " + kRequiredKeysMessage);
        }
        cfg.coefficients = {gamma, {th0, th1, th2}, {e0, e1, e2}};
    }

    auto b0_value = take("b0");
    auto mu0_value = take("mu0");
    auto nu0_value = take("nu0");
    if (b0_value && (mu0_value || nu0_value)) {
        throw ParseError("key 'b0' cannot be combined with 'mu0' or 'nu0'");
    }
    if (b0_value) {
        double b0 = detail::parse_double("b0", *b0_value);
        if (!(b0 > 0.0)) {
            throw ParseError(detail::key_context("b0", *b0_value) + ": b0 must be positive");
        }
        cfg.init.mu0 = 1.0 / (4.0 * b0);
        cfg.init.nu0 = b0 - cfg.init.mu0;
    } else {
        if (mu0_value) cfg.init.mu0 = detail::parse_double("mu0", *mu0_value);
        if (nu0_value) cfg.init.nu0 = detail::parse_double("nu0", *nu0_value);
    }
    if (auto v = take("kappa0")) cfg.init.kappa0 = detail::parse_double("kappa0", *v);

    if (auto v = take("t_max")) cfg.t_max = detail::parse_double("t_max", *v);
    if (auto v = take("samples")) cfg.samples = detail::parse_int("samples", *v);

    for (const auto& [key, value] : kv) {
        if (!seen.count(key)) {
            throw ParseError(detail::key_context(key, value) + ": unknown key; "
                             + kRequiredKeysMessage);
        }
    }

    if (!(cfg.init.mu0 > 0.0)) {
        throw ParseError("mu0 must be positive (got " + std::to_string(cfg.init.mu0) + ")");
    }
    if (!(cfg.t_max > 0.0)) {
        throw ParseError("t_max must be positive (got " + std::to_string(cfg.t_max) + ")");
    }
    if (cfg.samples < 2) {
        throw ParseError("samples must be at least 2 (got " + std::to_string(cfg.samples) + ")");
    }
    validate(cfg.coefficients, cfg.mode);
    return cfg;
}

// Built-in scenario documents, selectable with --preset.
inline std::string preset_text(const std::string& name) {
    if (name == "fig1-left-solid") {
        return "# Underdamped bath, no cross-diffusion term\n"
               "class = HPZ\n"
               "gamma = 1\n"
               "omega0 = 1\n"
               "b = 1\n"
               "theta1 = 0.5\n"
               "eta2 = 0\n"
               "mu0 = 1\n"
               "kappa0 = 1\n"
               "nu0 = 1\n"
               "t_max = 40\n"
               "samples = 401\n";
    }
    throw ParseError("unknown preset '" + name + "' (known presets: fig1-left-solid)");
}

// Rebuilds the coefficient set with one scanned value substituted. For a
// class-based config the scan name addresses the named class parameter and
// the whole row is re-expanded, so dependent coefficients track the family;
// for a raw config the named coefficient is set directly. Scan points are
// validated in raw mode regardless of the base scenario's mode: brackets
// routinely touch the physical-regime boundary, which is often exactly the
// threshold being located.
inline MasterEqCoefficients apply_scan(const ScenarioConfig& cfg, const std::string& name,
                                       double x) {
    if (cfg.equation_class) {
        CanonicalParams p = *cfg.class_params;
        if (name == "gamma") p.gamma = x;
        else if (name == "omega0") p.omega0 = x;
        else if (name == "b") p.b = x;
        else if (name == "theta1") p.theta1 = x;
        else if (name == "theta2") p.theta2 = x;
        else if (name == "eta2") p.eta2 = x;
        else {
            throw ParseError("scan coefficient '" + name
                             + "' is not a class parameter (expected gamma, omega0, b, theta1, "
                               "theta2, or eta2)");
        }
        MasterEqCoefficients c = canonical(*cfg.equation_class, p);
        validate(c, ValidationMode::raw);
        return c;
    }
    MasterEqCoefficients c = cfg.coefficients;
    if (name == "gamma") c.gamma = x;
    else if (name == "theta0") c.theta.v0 = x;
    else if (name == "theta1") c.theta.v1 = x;
    else if (name == "theta2") c.theta.v2 = x;
    else if (name == "eta0") c.eta.v0 = x;
    else if (name == "eta1") c.eta.v1 = x;
    else if (name == "eta2") c.eta.v2 = x;
    else {
        throw ParseError("scan coefficient '" + name
                         + "' is not a coefficient (expected gamma, theta0, theta1, theta2, "
                           "eta0, eta1, or eta2)");
    }
    validate(c, ValidationMode::raw);
    return c;
}

inline ThresholdCriterion criterion_from_name(const std::string& name) {
    if (name == "stationary_nu_zero") return ThresholdCriterion::stationary_nu_zero;
    if (name == "overdamped_boundary") return ThresholdCriterion::overdamped_boundary;
    if (name == "cp_boundary") return ThresholdCriterion::cp_boundary;
    if (name == "min_traj_nu_zero") return ThresholdCriterion::min_traj_nu_zero;
    throw ParseError("unknown criterion '" + name
                     + "' (expected stationary_nu_zero, overdamped_boundary, cp_boundary, or "
                       "min_traj_nu_zero)");
}

}  // namespace gme
