#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "kanesim/bloch.hpp"

namespace kanesim {

enum class Mode {
    Register,  // free evolution, dephasing only
    Rotation,  // resonant drive plus dephasing
};

// Everything a trajectory run needs, in reduced units: the dephasing rate
// kappa (1/s) and Rabi rate Omega (rad/s) are the only physics inputs.
struct SimPlan {
    double kappa = 0.0;
    double omega_rabi = 0.0;
    double dt = 0.0;
    int n_steps = 0;
    int n_traj = 0;
    std::uint64_t seed = 0;
    PolarizationVector p0{};
    // Resource guard: n_traj * n_steps may not exceed this.
    std::uint64_t max_samples = std::uint64_t{1} << 32;

    // Throws std::invalid_argument on non-positive dt/counts, on the
    // accuracy guards kappa*dt <= 0.1 and omega_rabi*dt <= 0.1, on an
    // unphysical p0, or with "plan too large" when the sample cap is hit.
    void validate() const;
};

struct TrajectoryEnsemble {
    std::vector<double> times;                    // n_steps + 1 entries
    std::vector<PolarizationVector> mean_P;       // ensemble mean per sample
    std::vector<PolarizationVector> stderr_P;     // per-component standard error
    int n_traj = 0;
};

// One noise step of the undriven qubit: the sampled phase kick is the exact
// unitary exp(-i*theta*sigma_z) with theta = sqrt(kappa)*dW, which rotates
// (P_x,P_y) right-handedly about +z by 2*theta and leaves P_z untouched.
// That scaling is the unique choice whose per-step coherence multiplier
// averages to E[exp(2i*theta)] = exp(-2*kappa*dt), i.e. the ensemble decay
// carries no time-step bias at any dt (Gaussian characteristic function).
PolarizationVector step_register(const PolarizationVector& p, double dW, const SimPlan& plan);

// One step of the driven qubit: exact unitary of the piecewise-constant
// sampled generator, exp(-i*(theta_z*sigma_z + theta_y*sigma_y)) with
// theta_z = sqrt(kappa)*dW and theta_y = -omega_rabi*dt/2. The drive sign
// makes the noiseless limit rotate P by the angle -omega_rabi*t about +y.
// Unitary per step, so |P| is conserved exactly along every trajectory.
// With omega_rabi = 0 this calls step_register (bit-identical results).
PolarizationVector step_rotation(const PolarizationVector& p, double dW, const SimPlan& plan);

// Full sampled path of one trajectory, n_steps+1 states starting at p0.
// Deterministic in (plan.seed, traj_index).
std::vector<PolarizationVector> simulate_trajectory(const SimPlan& plan, Mode mode,
                                                    std::uint64_t traj_index);

// Ensemble mean and standard error over plan.n_traj independent
// trajectories. Deterministic in (seed, plan) and bitwise independent of
// n_threads: trajectories are accumulated per 256-trajectory block in index
// order and blocks are merged in block order, so the floating-point
// reduction tree is fixed.
TrajectoryEnsemble run_ensemble(const SimPlan& plan, Mode mode, int n_threads = 1);

struct ConvergenceRow {
    double dt;              // actual step used (total time is kept fixed)
    int n_steps;
    double max_abs_error;   // max |mean - reference| over samples/components
    double noise_floor;     // max standard error over samples/components
};

// Weak-convergence table: reruns the plan at each requested step size
// (rounded so n_steps*dt matches the plan's total time) and measures the
// worst deviation of the ensemble mean from a reference curve.
std::vector<ConvergenceRow> convergence_report(
    const SimPlan& plan, Mode mode,
    const std::function<PolarizationVector(double)>& reference,
    const std::vector<double>& dt_values, int n_threads = 1);

}  // namespace kanesim
