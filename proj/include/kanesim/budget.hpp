#pragma once

#include "kanesim/device.hpp"

namespace kanesim {

// Noise budget derived from a target error probability per operation:
// everything an engineer needs to spec the gate-voltage source.
struct ToleranceBudget {
    double delta = 0.0;                 // target error probability (dimensionless)
    double ratio_bound = 0.0;           // max tau_op/tau_dec
    double tau_op = 0.0;                // s
    double tau_dec_min = 0.0;           // s
    double epsilon_max = 0.0;           // (J/T)^2*s
    double lambda_max = 0.0;            // s
    double pulse_area_ratio_max = 0.0;  // rms/mean pulse-area fluctuation bound
};

// Mean and rms fluctuation of the time-integrated gate-voltage pulse.
struct PulseAreaStats {
    double mean = 0.0;  // V*s
    double rms = 0.0;   // V*s
};

// Inverts delta = (1 - exp(-ratio))/2 exactly: ratio = -ln(1 - 2*delta).
// Throws std::invalid_argument for delta <= 0, and "unreachable error
// target" for delta >= 1/2.
double ratio_bound_from_delta(double delta);

// rms/mean pulse-area fluctuation sqrt(lambda/tau). Throws on tau <= 0.
double pulse_area_ratio(double lambda, double tau);

// Full chain from delta to the noise bounds:
//   ratio = -ln(1 - 2*delta)
//   epsilon_max = ratio * hbar^2 / (2 * B_z^2 * tau_op)
//   lambda_max = epsilon_max * (B_z / (eta * hbar * V_0))^2
//   pulse_area_ratio_max = sqrt(lambda_max / tau_op)
// Requires B_ac > 0 and V_0 > 0.
ToleranceBudget compute_budget(const DeviceParameters& params, double delta);

// Same chain with the tau_op/tau_dec bound supplied directly, for callers
// that want bounds far outside the range reachable through delta (the
// delta field is back-filled with (1 - exp(-ratio))/2, which saturates at
// 1/2 in double precision for large ratios).
ToleranceBudget compute_budget_from_ratio(const DeviceParameters& params, double ratio_bound);

// mean = V_0*tau, rms = V_0*sqrt(lambda*tau). Throws on tau <= 0.
PulseAreaStats pulse_area_statistics(double V_0, double lambda, double tau);

}  // namespace kanesim
