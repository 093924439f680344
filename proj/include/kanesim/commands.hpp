#pragma once

#include <array>
#include <filesystem>
#include <optional>

#include <json.hpp>

#include "kanesim/budget.hpp"
#include "kanesim/config.hpp"
#include "kanesim/engine.hpp"

namespace kanesim {

// Field overrides supplied on the command line; applied on top of the file.
struct CliOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<int> n_traj;
    std::optional<double> dt;
    std::optional<std::string> out_dir;
};

void apply_overrides(RunConfig& config, const CliOverrides& overrides);

// Reduced-rate simulation plan for the configured experiment. Register mode
// forces omega_rabi = 0; rotation mode requires device.B_ac > 0.
SimPlan make_plan(const RunConfig& config, Mode mode);

struct CommandArtifacts {
    std::filesystem::path csv_path;      // empty for commands with no CSV
    std::filesystem::path summary_path;
    nlohmann::json summary;
};

// Free-evolution ensemble against the closed-form decay. Writes
// register_decay.csv and register_decay_summary.json into the output dir.
// CSV columns: t, Px_mc, Py_mc, Pz_mc, stderr_x, stderr_y, stderr_z,
// Px_analytic, Py_analytic, Pz_analytic, worst_case_fidelity.
CommandArtifacts cmd_register_decay(const RunConfig& config);

// Driven ensemble against the exact and leading-order closed forms. Writes
// rotation.csv and rotation_summary.json. CSV columns: t, the MC mean and
// stderr triplets, the exact and approximate closed-form triplets, and the
// rotation fidelity.
CommandArtifacts cmd_rotation(const RunConfig& config);

struct BudgetOptions {
    double delta = 1e-5;
    // Optional log-spaced sweep over delta and linear sweep over V_0.
    std::optional<std::array<double, 2>> delta_range;
    int delta_points = 0;
    std::optional<std::array<double, 2>> v0_range;
    int v0_points = 0;
};

// Noise-budget report (budget.json): headline budget at opts.delta plus the
// requested sweeps. Every numeric output carries a units string.
CommandArtifacts cmd_budget(const RunConfig& config, const BudgetOptions& opts);

struct ValidateOptions {
    // Test hook: scales kappa in the analytic reference of the register
    // check (and nowhere else), so a deliberate mismatch must be caught.
    double analytic_rate_scale = 1.0;
};

struct ValidateArtifacts {
    bool all_pass = false;
    std::filesystem::path report_path;
    nlohmann::json report;
};

// Desk-scale cross-module consistency suite: register ensemble vs closed
// form, driven closed form vs the reference integrator, and the budget
// regression against the reference device. Writes validate_report.json.
ValidateArtifacts cmd_validate(const RunConfig& config, const ValidateOptions& opts = {});

}  // namespace kanesim
