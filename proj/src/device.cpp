#include "kanesim/device.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kanesim {

namespace {

void require_positive(double v, const char* field) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument(std::string(field) + " must be positive and finite");
    }
}

void require_non_negative(double v, const char* field) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument(std::string(field) + " must be non-negative and finite");
    }
}

}  // namespace

void PhysicalConstants::validate() const {
    require_positive(mu_B, "constants.mu_B");
    require_positive(mu_n, "constants.mu_n");
    require_positive(g_n, "constants.g_n");
    require_positive(hbar, "constants.hbar");
    const double ratio = mu_B / (g_n * mu_n);
    if (std::abs(ratio / kSplittingRatio - 1.0) > 1e-3) {
        throw std::invalid_argument(
            "constants: mu_B/(g_n*mu_n) violates the splitting-ratio anchor by more than 0.1%");
    }
}

void DeviceParameters::validate() const {
    constants.validate();
    require_positive(B_z, "device.B_z");
    require_non_negative(B_ac, "device.B_ac");
    require_non_negative(V_0, "device.V_0");
    require_positive(eta, "device.eta");
    require_non_negative(A_0, "device.A_0");
}

std::vector<std::string> DeviceParameters::warnings() const {
    std::vector<std::string> out;
    if (B_ac / B_z > 0.01) {
        out.push_back("B_ac exceeds 1% of B_z; the resonant-frame treatment assumes B_ac << B_z");
    }
    return out;
}

NoiseSpec NoiseSpec::from_lambda(const DeviceParameters& params, double lambda) {
    require_non_negative(lambda, "noise.lambda");
    return NoiseSpec{lambda, epsilon_from_lambda(params, lambda)};
}

NoiseSpec NoiseSpec::from_epsilon(const DeviceParameters& params, double epsilon) {
    require_non_negative(epsilon, "noise.epsilon");
    return NoiseSpec{lambda_from_epsilon(params, epsilon), epsilon};
}

double gamma_of_voltage(const DeviceParameters& params, double V) {
    const auto& c = params.constants;
    return -c.g_n * c.mu_n - (params.A_0 - c.hbar * params.eta * V) / params.B_z;
}

double resonance_frequency(const DeviceParameters& params, double gamma) {
    return 2.0 * params.B_z * gamma / params.constants.hbar;
}

namespace {

// (eta*hbar*V_0/B_z)^2, the lambda -> epsilon conversion factor.
double noise_conversion_factor(const DeviceParameters& params) {
    const double base = params.eta * params.constants.hbar * params.V_0 / params.B_z;
    return base * base;
}

}  // namespace

double epsilon_from_lambda(const DeviceParameters& params, double lambda) {
    require_non_negative(lambda, "lambda");
    return noise_conversion_factor(params) * lambda;
}

double lambda_from_epsilon(const DeviceParameters& params, double epsilon) {
    require_non_negative(epsilon, "epsilon");
    const double factor = noise_conversion_factor(params);
    if (factor == 0.0) {
        throw std::invalid_argument("zero gate bias: epsilon cannot be mapped back to lambda");
    }
    return epsilon / factor;
}

double tau_op(const DeviceParameters& params) {
    if (params.B_ac == 0.0) {
        throw std::invalid_argument("no drive field: operation time undefined");
    }
    const auto& c = params.constants;
    return std::numbers::pi * c.hbar / (4.0 * params.B_ac * c.g_n * c.mu_n);
}

double tau_dec(const DeviceParameters& params, const NoiseSpec& noise) {
    if (noise.epsilon == 0.0) {
        throw std::invalid_argument("noiseless: decoherence time infinite");
    }
    const double hbar = params.constants.hbar;
    return hbar * hbar / (2.0 * params.B_z * params.B_z * noise.epsilon);
}

double dephasing_rate(const DeviceParameters& params, const NoiseSpec& noise) {
    const double hbar = params.constants.hbar;
    return params.B_z * params.B_z * noise.epsilon / (hbar * hbar);
}

double rabi_rate(const DeviceParameters& params) {
    const auto& c = params.constants;
    return 2.0 * params.B_ac * c.g_n * c.mu_n / c.hbar;
}

}  // namespace kanesim
