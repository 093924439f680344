#pragma once

#include <complex>

#include "kanesim/bloch.hpp"

namespace kanesim {

// Parameters of the undriven closed-form solution.
struct RegisterSolutionParams {
    double kappa = 0.0;  // dephasing rate (1/s)
};

// Parameters of the driven closed-form solution. alpha_reduced is the
// complex damping coefficient a = sqrt(kappa^2 - Omega^2) in rate units;
// it is computed on construction and goes imaginary in the underdamped
// regime kappa < Omega.
struct RotationSolutionParams {
    double kappa = 0.0;
    double omega_rabi = 0.0;
    std::complex<double> alpha_reduced{0.0, 0.0};

    RotationSolutionParams() = default;
    RotationSolutionParams(double kappa_, double omega_rabi_);
};

// Ensemble-averaged free evolution: (P_x,P_y) decay as exp(-2*kappa*t),
// P_z is conserved. Requires t >= 0 and kappa >= 0.
PolarizationVector register_polarization(const PolarizationVector& p0, double kappa, double t);

// Ensemble-averaged driven evolution, all three components:
//   prefactor exp(-kappa*t), hyperbolic functions of a*t with
//   a = sqrt(kappa^2 - Omega^2), mixing coefficients kappa/a and Omega/a,
//   P_y decaying as exp(-2*kappa*t).
// Evaluated with complex arithmetic in one code path; the imaginary residue
// must stay below 1e-10 (asserted) and the real part is returned. The
// degenerate a -> 0 limit switches to a short series for sinh(a*t)/a when
// |a|*t < 1e-6.
PolarizationVector rotation_polarization_exact(const PolarizationVector& p0,
                                               const RotationSolutionParams& params, double t);

// Leading-order form of the driven solution in the weak-noise regime:
// (P_x,P_z) rotate by the angle -Omega*t and damp as exp(-kappa*t), P_y
// damps as exp(-2*kappa*t).
PolarizationVector rotation_polarization_approx(const PolarizationVector& p0, double kappa,
                                                double omega_rabi, double t);

// Overlap fidelity Tr(rho(t) rho(0)) of the free evolution:
//   (1 + P_z0^2 + (P_x0^2 + P_y0^2) exp(-2*kappa*t)) / 2.
double register_fidelity(const PolarizationVector& p0, double kappa, double t);

// The same fidelity minimized over unit inputs (equatorial states):
//   (1 + exp(-2*kappa*t)) / 2.
double worst_case_register_fidelity(double kappa, double t);

// Overlap of the noisily-driven state with the noiselessly-driven one, at
// the leading approximation order:
//   (1 + exp(-2*kappa*t) P_y0^2 + exp(-kappa*t) (P_x0^2 + P_z0^2)) / 2.
double rotation_fidelity(const PolarizationVector& p0, double kappa, double t);

namespace detail {

struct RotationEvaluation {
    PolarizationVector p;
    double imag_residue;  // largest |imaginary part| discarded
};

// Exposed for tests: the complex evaluation behind
// rotation_polarization_exact, including the discarded imaginary residue.
RotationEvaluation evaluate_rotation_solution(const PolarizationVector& p0, double kappa,
                                              double omega_rabi, double t);

}  // namespace detail

}  // namespace kanesim
