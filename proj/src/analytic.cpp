#include "kanesim/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace kanesim {

namespace {

void require_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw std::invalid_argument("t must be non-negative and finite");
    }
}

void require_rate(double r, const char* name) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
        throw std::invalid_argument(std::string(name) + " must be non-negative and finite");
    }
}

}  // namespace

RotationSolutionParams::RotationSolutionParams(double kappa_, double omega_rabi_)
    : kappa(kappa_), omega_rabi(omega_rabi_) {
    require_rate(kappa, "kappa");
    require_rate(omega_rabi, "omega_rabi");
    alpha_reduced = std::sqrt(std::complex<double>(kappa * kappa - omega_rabi * omega_rabi, 0.0));
}

PolarizationVector register_polarization(const PolarizationVector& p0, double kappa, double t) {
    require_rate(kappa, "kappa");
    require_time(t);
    const double decay = std::exp(-2.0 * kappa * t);
    return PolarizationVector{decay * p0.x, decay * p0.y, p0.z};
}

namespace detail {

RotationEvaluation evaluate_rotation_solution(const PolarizationVector& p0, double kappa,
                                              double omega_rabi, double t) {
    require_rate(kappa, "kappa");
    require_rate(omega_rabi, "omega_rabi");
    require_time(t);
    using cd = std::complex<double>;
    const cd a = std::sqrt(cd(kappa * kappa - omega_rabi * omega_rabi, 0.0));
    const cd at = a * t;

    // Basis functions written with the decay folded in, so the overdamped
    // regime never forms cosh(a*t) - sinh(a*t) (catastrophic cancellation at
    // large kappa*t):
    //   C = e^{-kappa t} cosh(a t) = (E+ + E-)/2
    //   S = e^{-kappa t} sinh(a t)/a = (E+ - E-)/(2a)
    // with E+- = exp((+-a - kappa) t).
    const cd ep = std::exp((a - kappa) * t);
    const cd em = std::exp((-a - kappa) * t);
    const cd c = 0.5 * (ep + em);
    cd s;
    if (std::abs(at) < 1e-6) {
        const cd at2 = at * at;
        s = t * std::exp(-kappa * t) * (1.0 + at2 / 6.0 + at2 * at2 / 120.0);
    } else {
        s = 0.5 * (ep - em) / a;
    }

    const cd px = (c - kappa * s) * p0.x - omega_rabi * s * p0.z;
    const cd pz = (c + kappa * s) * p0.z + omega_rabi * s * p0.x;
    const double py = std::exp(-2.0 * kappa * t) * p0.y;

    const double residue = std::max(std::abs(px.imag()), std::abs(pz.imag()));
    return RotationEvaluation{PolarizationVector{px.real(), py, pz.real()}, residue};
}

}  // namespace detail

PolarizationVector rotation_polarization_exact(const PolarizationVector& p0,
                                               const RotationSolutionParams& params, double t) {
    const auto eval = detail::evaluate_rotation_solution(p0, params.kappa, params.omega_rabi, t);
    if (eval.imag_residue > 1e-10) {
        throw std::logic_error("driven-solution evaluation left an imaginary residue above 1e-10");
    }
    return eval.p;
}

PolarizationVector rotation_polarization_approx(const PolarizationVector& p0, double kappa,
                                                double omega_rabi, double t) {
    require_rate(kappa, "kappa");
    require_rate(omega_rabi, "omega_rabi");
    require_time(t);
    const double phase = -omega_rabi * t;
    const double c = std::cos(phase);
    const double s = std::sin(phase);
    const double d1 = std::exp(-kappa * t);
    const double d2 = std::exp(-2.0 * kappa * t);
    return PolarizationVector{
        d1 * (c * p0.x + s * p0.z),
        d2 * p0.y,
        d1 * (c * p0.z - s * p0.x),
    };
}

double register_fidelity(const PolarizationVector& p0, double kappa, double t) {
    require_rate(kappa, "kappa");
    require_time(t);
    const double decay = std::exp(-2.0 * kappa * t);
    return 0.5 * (1.0 + p0.z * p0.z + (p0.x * p0.x + p0.y * p0.y) * decay);
}

double worst_case_register_fidelity(double kappa, double t) {
    require_rate(kappa, "kappa");
    require_time(t);
    return 0.5 * (1.0 + std::exp(-2.0 * kappa * t));
}

double rotation_fidelity(const PolarizationVector& p0, double kappa, double t) {
    require_rate(kappa, "kappa");
    require_time(t);
    const double d1 = std::exp(-kappa * t);
    const double d2 = std::exp(-2.0 * kappa * t);
    return 0.5 * (1.0 + d2 * p0.y * p0.y + d1 * (p0.x * p0.x + p0.z * p0.z));
}

}  // namespace kanesim
