// kanesim: trajectory simulator and noise-budget calculator for a
// gate-controlled nuclear-spin qubit under white gate-voltage noise.
//
// Subcommands: register-decay, rotation, budget, validate.
// Exit codes: 0 success, 1 check failure, 2 bad config.

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kanesim/commands.hpp"
#include "kanesim/config.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::uint64_t seed = 0;
    int n_traj = 0;
    double dt = 0.0;
    std::string out_dir;
    CLI::Option* seed_opt = nullptr;
    CLI::Option* traj_opt = nullptr;
    CLI::Option* dt_opt = nullptr;
    CLI::Option* out_opt = nullptr;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "Path to the JSON run config")->required();
    flags.seed_opt = cmd->add_option("--seed", flags.seed, "Override simulation.seed");
    flags.traj_opt = cmd->add_option("--traj", flags.n_traj, "Override simulation.n_traj");
    flags.dt_opt = cmd->add_option("--dt", flags.dt, "Override simulation.dt (seconds)");
    flags.out_opt = cmd->add_option("--out", flags.out_dir, "Override output.dir");
}

kanesim::RunConfig load_with_overrides(const CommonFlags& flags) {
    kanesim::RunConfig config = kanesim::load_run_config(flags.config_path);
    kanesim::CliOverrides overrides;
    if (flags.seed_opt->count() > 0) overrides.seed = flags.seed;
    if (flags.traj_opt->count() > 0) overrides.n_traj = flags.n_traj;
    if (flags.dt_opt->count() > 0) overrides.dt = flags.dt;
    if (flags.out_opt->count() > 0) overrides.out_dir = flags.out_dir;
    kanesim::apply_overrides(config, overrides);
    for (const auto& warning : config.device.warnings()) {
        std::cerr << "warning: " << warning << '\n';
    }
    return config;
}

void report_files(const kanesim::CommandArtifacts& artifacts) {
    if (!artifacts.csv_path.empty()) {
        std::cout << "wrote " << artifacts.csv_path.string() << '\n';
    }
    std::cout << "wrote " << artifacts.summary_path.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nuclear-spin qubit dephasing simulator and noise-budget tool"};
    app.require_subcommand(1);

    CommonFlags register_flags;
    CLI::App* reg = app.add_subcommand("register-decay",
                                       "Free-evolution ensemble vs the closed-form decay");
    add_common_flags(reg, register_flags);

    CommonFlags rotation_flags;
    CLI::App* rot = app.add_subcommand("rotation",
                                       "Driven ensemble vs the exact and approximate solutions");
    add_common_flags(rot, rotation_flags);

    CommonFlags budget_flags;
    kanesim::BudgetOptions budget_opts;
    std::vector<double> delta_range, v0_range;
    CLI::App* bud = app.add_subcommand("budget", "Noise budget from a target error probability");
    add_common_flags(bud, budget_flags);
    bud->add_option("--delta", budget_opts.delta, "Target error probability per operation")
        ->capture_default_str();
    bud->add_option("--delta-range", delta_range,
                    "Log-spaced delta sweep: MIN MAX (use with --delta-points)")
        ->expected(2);
    bud->add_option("--delta-points", budget_opts.delta_points, "Points in the delta sweep");
    bud->add_option("--v0-range", v0_range,
                    "Linear V_0 sweep: MIN MAX volts (use with --v0-points)")
        ->expected(2);
    bud->add_option("--v0-points", budget_opts.v0_points, "Points in the V_0 sweep");

    CommonFlags validate_flags;
    kanesim::ValidateOptions validate_opts;
    bool inject_fault = false;
    CLI::App* val = app.add_subcommand("validate", "Desk-scale cross-module consistency suite");
    add_common_flags(val, validate_flags);
    val->add_flag("--inject-rate-fault", inject_fault,
                  "Deliberately skew the analytic reference (self-test of the checks)")
        ->group("");  // hidden from --help

    CLI11_PARSE(app, argc, argv);

    try {
        if (reg->parsed()) {
            report_files(kanesim::cmd_register_decay(load_with_overrides(register_flags)));
            return 0;
        }
        if (rot->parsed()) {
            report_files(kanesim::cmd_rotation(load_with_overrides(rotation_flags)));
            return 0;
        }
        if (bud->parsed()) {
            if (!delta_range.empty()) {
                budget_opts.delta_range = {{delta_range[0], delta_range[1]}};
            }
            if (!v0_range.empty()) {
                budget_opts.v0_range = {{v0_range[0], v0_range[1]}};
            }
            report_files(kanesim::cmd_budget(load_with_overrides(budget_flags), budget_opts));
            return 0;
        }
        if (val->parsed()) {
            if (inject_fault) validate_opts.analytic_rate_scale = 1.1;
            const auto result = kanesim::cmd_validate(load_with_overrides(validate_flags),
                                                      validate_opts);
            std::cout << "wrote " << result.report_path.string() << '\n';
            for (const auto& check : result.report.at("checks")) {
                std::cout << (check.at("pass").get<bool>() ? "pass " : "FAIL ")
                          << check.at("name").get<std::string>() << '\n';
            }
            return result.all_pass ? 0 : 1;
        }
    } catch (const kanesim::ConfigError& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
