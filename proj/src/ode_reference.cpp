#include "kanesim/ode_reference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kanesim {

namespace {

struct State {
    double x, y, z;
};

State rhs(const State& s, double kappa, double omega) {
    return State{-2.0 * kappa * s.x - omega * s.z, -2.0 * kappa * s.y, omega * s.x};
}

State axpy(const State& a, double h, const State& d) {
    return State{a.x + h * d.x, a.y + h * d.y, a.z + h * d.z};
}

State rk4_step(const State& s, double h, double kappa, double omega) {
    const State k1 = rhs(s, kappa, omega);
    const State k2 = rhs(axpy(s, 0.5 * h, k1), kappa, omega);
    const State k3 = rhs(axpy(s, 0.5 * h, k2), kappa, omega);
    const State k4 = rhs(axpy(s, h, k3), kappa, omega);
    return State{
        s.x + (h / 6.0) * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
        s.y + (h / 6.0) * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y),
        s.z + (h / 6.0) * (k1.z + 2.0 * k2.z + 2.0 * k3.z + k4.z),
    };
}

// Substep count for an interval of length dt at the accuracy target
// (2*kappa + omega)*h <= 5e-4.
long substeps_for(double dt, double kappa, double omega) {
    const double rate = 2.0 * kappa + omega;
    if (rate == 0.0 || dt == 0.0) return 1;
    return std::max(1L, static_cast<long>(std::ceil(rate * dt / 5e-4)));
}

State advance(State s, double dt, double kappa, double omega) {
    const long n = substeps_for(dt, kappa, omega);
    const double h = dt / static_cast<double>(n);
    for (long i = 0; i < n; ++i) s = rk4_step(s, h, kappa, omega);
    return s;
}

}  // namespace

PolarizationVector integrate_averaged_bloch(const PolarizationVector& p0, double kappa,
                                            double omega_rabi, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("t must be non-negative");
    const State s = advance(State{p0.x, p0.y, p0.z}, t, kappa, omega_rabi);
    return PolarizationVector{s.x, s.y, s.z};
}

std::vector<PolarizationVector> integrate_averaged_bloch_path(const PolarizationVector& p0,
                                                              double kappa, double omega_rabi,
                                                              const std::vector<double>& times) {
    std::vector<PolarizationVector> out;
    out.reserve(times.size());
    State s{p0.x, p0.y, p0.z};
    double t_prev = 0.0;
    for (double t : times) {
        if (!(t >= t_prev)) {
            throw std::invalid_argument("times must be ascending and non-negative");
        }
        s = advance(s, t - t_prev, kappa, omega_rabi);
        t_prev = t;
        out.push_back(PolarizationVector{s.x, s.y, s.z});
    }
    return out;
}

}  // namespace kanesim
