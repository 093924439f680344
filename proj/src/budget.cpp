#include "kanesim/budget.hpp"

#include <cmath>
#include <stdexcept>

namespace kanesim {

double ratio_bound_from_delta(double delta) {
    if (!(delta > 0.0)) {
        throw std::invalid_argument("error target must be positive");
    }
    if (!(delta < 0.5)) {
        throw std::invalid_argument("unreachable error target");
    }
    return -std::log1p(-2.0 * delta);
}

double pulse_area_ratio(double lambda, double tau) {
    if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be non-negative");
    if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
    return std::sqrt(lambda / tau);
}

ToleranceBudget compute_budget_from_ratio(const DeviceParameters& params, double ratio_bound) {
    if (!(ratio_bound > 0.0) || !std::isfinite(ratio_bound)) {
        throw std::invalid_argument("ratio bound must be positive and finite");
    }
    params.validate();
    if (!(params.V_0 > 0.0)) {
        throw std::invalid_argument("device.V_0 must be positive for a noise budget");
    }
    const double hbar = params.constants.hbar;
    const double t_op = tau_op(params);  // throws on B_ac = 0

    ToleranceBudget b;
    b.ratio_bound = ratio_bound;
    b.delta = 0.5 * -std::expm1(-ratio_bound);
    b.tau_op = t_op;
    b.tau_dec_min = t_op / ratio_bound;
    b.epsilon_max = ratio_bound * hbar * hbar / (2.0 * params.B_z * params.B_z * t_op);
    const double inv_conv = params.B_z / (params.eta * hbar * params.V_0);
    b.lambda_max = b.epsilon_max * inv_conv * inv_conv;
    b.pulse_area_ratio_max = std::sqrt(b.lambda_max / t_op);
    return b;
}

ToleranceBudget compute_budget(const DeviceParameters& params, double delta) {
    ToleranceBudget b = compute_budget_from_ratio(params, ratio_bound_from_delta(delta));
    b.delta = delta;
    return b;
}

PulseAreaStats pulse_area_statistics(double V_0, double lambda, double tau) {
    if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be non-negative");
    if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
    return PulseAreaStats{V_0 * tau, V_0 * std::sqrt(lambda * tau)};
}

}  // namespace kanesim
