#pragma once

#include <string>
#include <vector>

#include "kanesim/constants.hpp"

namespace kanesim {

// Static description of one donor site: fields, gate bias, and the
// voltage-to-frequency tuning coefficient of the A-gate. Immutable after
// construction; share freely across threads.
struct DeviceParameters {
    double B_z = 2.0;      // static field (T)
    double B_ac = 1e-3;    // transverse drive amplitude (T)
    double V_0 = 1.0;      // A-gate bias (V)
    double eta = 0.0;      // voltage-to-frequency coefficient (Hz/V)
    double A_0 = 0.0;      // zero-bias hyperfine energy (J)
    PhysicalConstants constants{};

    // Throws std::invalid_argument naming the offending field. Requires
    // B_z > 0, B_ac >= 0, V_0 >= 0, eta > 0, A_0 >= 0, everything finite.
    void validate() const;

    // Non-fatal physical-regime complaints, e.g. a transverse drive above
    // 1% of the static field (rotating-frame accuracy degrades).
    std::vector<std::string> warnings() const;

    bool operator==(const DeviceParameters&) const = default;
};

// Voltage-noise strength lambda (s) and the equivalent Larmor-noise strength
// epsilon ((J/T)^2*s). Both fields are always populated; construct through
// the factories so the pair stays consistent.
struct NoiseSpec {
    double lambda = 0.0;
    double epsilon = 0.0;

    static NoiseSpec from_lambda(const DeviceParameters& params, double lambda);
    static NoiseSpec from_epsilon(const DeviceParameters& params, double epsilon);

    bool operator==(const NoiseSpec&) const = default;
};

// Effective coupling of the nuclear spin to the static field at gate bias V:
//   gamma(V) = -g_n*mu_n - (A_0 - hbar*eta*V) / B_z    (J/T)
// Total on valid parameters; negative V is accepted and evaluated as-is.
double gamma_of_voltage(const DeviceParameters& params, double V);

// Angular resonance frequency omega = 2*B_z*gamma/hbar (rad/s). The sign of
// gamma is carried through; callers interested in a frequency take |omega|.
double resonance_frequency(const DeviceParameters& params, double gamma);

// Noise-strength conversion epsilon = (eta*hbar*V_0/B_z)^2 * lambda and its
// inverse. The pair round-trips to relative error below 1e-12. The inverse
// throws std::invalid_argument when V_0 = 0 (conversion not invertible).
double epsilon_from_lambda(const DeviceParameters& params, double lambda);
double lambda_from_epsilon(const DeviceParameters& params, double epsilon);

// Duration of one resonant quarter-period operation:
//   tau_op = pi*hbar / (4*B_ac*g_n*mu_n)
// Throws std::invalid_argument "no drive field: operation time undefined"
// when B_ac = 0.
double tau_op(const DeviceParameters& params);

// Phase-coherence time under white gate noise:
//   tau_dec = hbar^2 / (2*B_z^2*epsilon)
// Throws std::invalid_argument "noiseless: decoherence time infinite" when
// epsilon = 0; callers may present that case as +infinity.
double tau_dec(const DeviceParameters& params, const NoiseSpec& noise);

// Reduced rates consumed by the dynamics modules. All simulation and
// closed-form code downstream works purely in (kappa, Omega, t), so SI
// inputs are folded exactly once, here.
//   kappa = B_z^2 * epsilon / hbar^2          dephasing rate (1/s)
//   Omega = 2 * B_ac * g_n * mu_n / hbar      Rabi rate (rad/s)
double dephasing_rate(const DeviceParameters& params, const NoiseSpec& noise);
double rabi_rate(const DeviceParameters& params);

}  // namespace kanesim
