#include "kanesim/engine.hpp"

#include <array>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "kanesim/wiener.hpp"

namespace kanesim {

namespace {

constexpr int kBlockSize = 256;  // trajectories per reduction block, fixed for determinism

}  // namespace

void SimPlan::validate() const {
    if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
        throw std::invalid_argument("plan.kappa must be non-negative and finite");
    }
    if (!(omega_rabi >= 0.0) || !std::isfinite(omega_rabi)) {
        throw std::invalid_argument("plan.omega_rabi must be non-negative and finite");
    }
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw std::invalid_argument("plan.dt must be positive and finite");
    }
    if (n_steps < 1) throw std::invalid_argument("plan.n_steps must be at least 1");
    if (n_traj < 1) throw std::invalid_argument("plan.n_traj must be at least 1");
    if (kappa * dt > 0.1) {
        throw std::invalid_argument("plan.dt too coarse: kappa*dt exceeds 0.1");
    }
    if (omega_rabi * dt > 0.1) {
        throw std::invalid_argument("plan.dt too coarse: omega_rabi*dt exceeds 0.1");
    }
    if (static_cast<std::uint64_t>(n_traj) * static_cast<std::uint64_t>(n_steps) > max_samples) {
        throw std::invalid_argument("plan too large");
    }
    if (p0.norm() > 1.0 + 1e-9) {
        throw std::invalid_argument("unphysical polarization");
    }
}

PolarizationVector step_register(const PolarizationVector& p, double dW, const SimPlan& plan) {
    const double theta = std::sqrt(plan.kappa) * dW;
    const double c = std::cos(2.0 * theta);
    const double s = std::sin(2.0 * theta);
    return PolarizationVector{c * p.x - s * p.y, s * p.x + c * p.y, p.z};
}

PolarizationVector step_rotation(const PolarizationVector& p, double dW, const SimPlan& plan) {
    if (plan.omega_rabi == 0.0) {
        return step_register(p, dW, plan);
    }
    const double ty = -0.5 * plan.omega_rabi * plan.dt;
    const double tz = std::sqrt(plan.kappa) * dW;
    const double theta2 = ty * ty + tz * tz;
    if (theta2 == 0.0) return p;
    const double theta = std::sqrt(theta2);
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    // Axis-angle rotation of P by 2*theta about (0,ty,tz)/theta, written with
    // the unnormalized axis: sin(2t)/t = 2sc/t, (1-cos(2t))/t^2 = 2s^2/t^2.
    const double k1 = 2.0 * s * c / theta;
    const double k2 = 2.0 * s * s / theta2;
    const double cos2 = c * c - s * s;
    const double cross_x = ty * p.z - tz * p.y;
    const double cross_y = tz * p.x;  // axis has no x component
    const double cross_z = -ty * p.x;
    const double dot = ty * p.y + tz * p.z;
    return PolarizationVector{
        cos2 * p.x + k1 * cross_x,
        cos2 * p.y + k1 * cross_y + k2 * ty * dot,
        cos2 * p.z + k1 * cross_z + k2 * tz * dot,
    };
}

namespace {

// Shared trajectory walk so the per-path tests and the ensemble reduction
// execute exactly the same arithmetic. on_sample(k, P) fires at every
// sample index 0..n_steps.
template <typename OnSample>
void walk_trajectory(const SimPlan& plan, Mode mode, std::uint64_t traj_index,
                     OnSample&& on_sample) {
    WienerStream stream(plan.seed, traj_index);
    PolarizationVector p = plan.p0;
    on_sample(0, p);
    const bool driven = (mode == Mode::Rotation);
    for (int k = 1; k <= plan.n_steps; ++k) {
        const double dw = stream.next_increment(plan.dt);
        p = driven ? step_rotation(p, dw, plan) : step_register(p, dw, plan);
        on_sample(k, p);
    }
}

// Streaming mean/M2 per sample (Welford within a block, Chan across
// blocks). The merge order is fixed by block index, never by thread
// scheduling, so ensembles are bitwise reproducible at any thread count.
struct BlockMoments {
    long count = 0;
    std::vector<std::array<double, 6>> acc;  // mean x,y,z then M2 x,y,z

    explicit BlockMoments(std::size_t n_samples) : acc(n_samples, {0, 0, 0, 0, 0, 0}) {}

    void add_sample(std::size_t k, const PolarizationVector& p) {
        auto& a = acc[k];
        const double inv_n = 1.0 / static_cast<double>(count);
        const std::array<double, 3> v{p.x, p.y, p.z};
        for (int i = 0; i < 3; ++i) {
            const double d = v[i] - a[i];
            a[i] += d * inv_n;
            a[i + 3] += d * (v[i] - a[i]);
        }
    }

    void merge(const BlockMoments& other) {
        if (other.count == 0) return;
        if (count == 0) {
            *this = other;
            return;
        }
        const double na = static_cast<double>(count);
        const double nb = static_cast<double>(other.count);
        const double n = na + nb;
        for (std::size_t k = 0; k < acc.size(); ++k) {
            auto& a = acc[k];
            const auto& b = other.acc[k];
            for (int i = 0; i < 3; ++i) {
                const double d = b[i] - a[i];
                a[i] += d * (nb / n);
                a[i + 3] += b[i + 3] + d * d * (na * nb / n);
            }
        }
        count += other.count;
    }
};

BlockMoments accumulate_block(const SimPlan& plan, Mode mode, std::uint64_t first,
                              std::uint64_t last) {
    BlockMoments block(static_cast<std::size_t>(plan.n_steps) + 1);
    for (std::uint64_t traj = first; traj < last; ++traj) {
        ++block.count;
        walk_trajectory(plan, mode, traj,
                        [&block](int k, const PolarizationVector& p) { block.add_sample(k, p); });
    }
    return block;
}

}  // namespace

std::vector<PolarizationVector> simulate_trajectory(const SimPlan& plan, Mode mode,
                                                    std::uint64_t traj_index) {
    plan.validate();
    std::vector<PolarizationVector> path(static_cast<std::size_t>(plan.n_steps) + 1);
    walk_trajectory(plan, mode, traj_index,
                    [&path](int k, const PolarizationVector& p) { path[k] = p; });
    return path;
}

TrajectoryEnsemble run_ensemble(const SimPlan& plan, Mode mode, int n_threads) {
    plan.validate();
    if (n_threads < 1) throw std::invalid_argument("n_threads must be at least 1");

    const std::size_t n_samples = static_cast<std::size_t>(plan.n_steps) + 1;
    const std::uint64_t n_traj = static_cast<std::uint64_t>(plan.n_traj);
    const std::uint64_t n_blocks = (n_traj + kBlockSize - 1) / kBlockSize;

    std::vector<BlockMoments> blocks(n_blocks, BlockMoments(n_samples));
    const auto process = [&](std::uint64_t b) {
        const std::uint64_t first = b * kBlockSize;
        const std::uint64_t last = std::min(first + kBlockSize, n_traj);
        blocks[b] = accumulate_block(plan, mode, first, last);
    };

    if (n_threads == 1 || n_blocks == 1) {
        for (std::uint64_t b = 0; b < n_blocks; ++b) process(b);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> workers;
        const int used = static_cast<int>(std::min<std::uint64_t>(n_threads, n_blocks));
        workers.reserve(used);
        for (int w = 0; w < used; ++w) {
            workers.emplace_back([&] {
                for (;;) {
                    const std::uint64_t b = next.fetch_add(1);
                    if (b >= n_blocks) return;
                    process(b);
                }
            });
        }
        for (auto& t : workers) t.join();
    }

    BlockMoments total = std::move(blocks[0]);
    for (std::uint64_t b = 1; b < n_blocks; ++b) total.merge(blocks[b]);

    TrajectoryEnsemble out;
    out.n_traj = plan.n_traj;
    out.times.resize(n_samples);
    out.mean_P.resize(n_samples);
    out.stderr_P.resize(n_samples);
    const double n = static_cast<double>(total.count);
    for (std::size_t k = 0; k < n_samples; ++k) {
        out.times[k] = static_cast<double>(k) * plan.dt;
        const auto& a = total.acc[k];
        out.mean_P[k] = PolarizationVector{a[0], a[1], a[2]};
        if (total.count > 1) {
            const double scale = 1.0 / (n * (n - 1.0));
            out.stderr_P[k] = PolarizationVector{
                std::sqrt(a[3] * scale), std::sqrt(a[4] * scale), std::sqrt(a[5] * scale)};
        } else {
            out.stderr_P[k] = PolarizationVector{0.0, 0.0, 0.0};
        }
    }
    return out;
}

std::vector<ConvergenceRow> convergence_report(
    const SimPlan& plan, Mode mode,
    const std::function<PolarizationVector(double)>& reference,
    const std::vector<double>& dt_values, int n_threads) {
    plan.validate();
    const double total_time = plan.dt * plan.n_steps;
    std::vector<ConvergenceRow> rows;
    rows.reserve(dt_values.size());
    for (double dt_req : dt_values) {
        if (!(dt_req > 0.0)) throw std::invalid_argument("convergence dt must be positive");
        const int n = std::max(1, static_cast<int>(std::llround(total_time / dt_req)));
        SimPlan p = plan;
        p.n_steps = n;
        p.dt = total_time / n;
        const TrajectoryEnsemble ens = run_ensemble(p, mode, n_threads);
        double max_err = 0.0;
        double floor = 0.0;
        for (std::size_t k = 0; k < ens.times.size(); ++k) {
            const PolarizationVector ref = reference(ens.times[k]);
            max_err = std::max({max_err, std::abs(ens.mean_P[k].x - ref.x),
                                std::abs(ens.mean_P[k].y - ref.y),
                                std::abs(ens.mean_P[k].z - ref.z)});
            floor = std::max({floor, ens.stderr_P[k].x, ens.stderr_P[k].y, ens.stderr_P[k].z});
        }
        rows.push_back(ConvergenceRow{p.dt, p.n_steps, max_err, floor});
    }
    return rows;
}

}  // namespace kanesim
