#pragma once

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "gme/commands.hpp"
#include "gme/config.hpp"

namespace gme {

// Argument parsing and dispatch for the gme_cli tool, separated from main()
// so the test suite can drive it in-process. Exit codes: 0 success, 1
// configuration error, 2 numeric failure, 3 nonexistent stationary state
// requested.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact Gaussian evolutions of the generic damped quantum oscillator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string preset_name;
    std::string out_dir = ".";
    std::string criterion_name = "stationary_nu_zero";
    bool raw = false;
    bool require_stationary = false;
    double class_tol = 1e-9;
    ThresholdSpec tspec;

    auto add_scenario_flags = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "Path to a key=value or JSON scenario file");
        sub->add_option("--preset", preset_name, "Built-in scenario preset name");
        sub->add_flag("--raw", raw, "Accept any real coefficients (skip physical-range checks)");
    };

    CLI::App* evolve = app.add_subcommand("evolve", "Emit the (mu, kappa, nu) trajectory as CSV");
    add_scenario_flags(evolve);
    evolve->add_flag("--stationary", require_stationary,
                     "Fail with exit 3 unless a stationary state exists");

    CLI::App* analyze =
        app.add_subcommand("analyze", "Emit a JSON report: class, stationary state, positivity");
    add_scenario_flags(analyze);
    analyze->add_option("--tol", class_tol, "Classification tolerance (default 1e-9)");

    CLI::App* classify_cmd = app.add_subcommand("classify", "Print the equation class name");
    add_scenario_flags(classify_cmd);
    classify_cmd->add_option("--tol", class_tol, "Classification tolerance (default 1e-9)");

    CLI::App* threshold =
        app.add_subcommand("threshold", "Bisect one coefficient for a criterion boundary");
    add_scenario_flags(threshold);
    threshold->add_option("--scan", tspec.coefficient, "Coefficient or class parameter to scan")
        ->required();
    threshold->add_option("--lo", tspec.lo, "Bracket lower end")->required();
    threshold->add_option("--hi", tspec.hi, "Bracket upper end")->required();
    threshold->add_option("--criterion", criterion_name,
                          "stationary_nu_zero | overdamped_boundary | cp_boundary | "
                          "min_traj_nu_zero");
    threshold->add_option("--tol", tspec.tolerance, "Bisection tolerance (default 1e-6)");

    CLI::App* figure = app.add_subcommand("figure", "Write the CSV bundle for a figure preset");
    figure->add_option("--preset", preset_name,
                       "fig1-left | fig1-right | fig2-left | fig2-right | fig3-left | fig3-right")
        ->required();
    figure->add_option("--out", out_dir, "Output directory (default: current directory)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    auto load_scenario = [&]() -> ScenarioConfig {
        bool have_file = !config_path.empty();
        bool have_preset = !preset_name.empty();
        if (have_file == have_preset) {
            throw ParseError("exactly one of --config or --preset is required");
        }
        std::string text;
        if (have_preset) {
            text = preset_text(preset_name);
        } else {
            std::ifstream f(config_path);
            if (!f) {
                throw ParseError("cannot open configuration file '" + config_path + "'");
            }
            std::ostringstream buf;
            buf << f.rdbuf();
            text = buf.str();
        }
        std::optional<ValidationMode> mode_override;
        if (raw) {
            mode_override = ValidationMode::raw;
        }
        return parse_config(text, mode_override);
    };

    return detail::run_guarded(
        [&]() -> int {
            if (*evolve) {
                return cmd_evolve(load_scenario(), require_stationary, out, err);
            }
            if (*analyze) {
                return cmd_analyze(load_scenario(), class_tol, out, err);
            }
            if (*classify_cmd) {
                return cmd_classify(load_scenario(), class_tol, out, err);
            }
            if (*threshold) {
                tspec.criterion = criterion_from_name(criterion_name);
                return cmd_threshold(load_scenario(), tspec, out, err);
            }
            if (*figure) {
                return cmd_figure(preset_name, out_dir, out, err);
            }
            err << "error: no subcommand selected\n";
            return 1;
        },
        err);
}

}  // namespace gme
