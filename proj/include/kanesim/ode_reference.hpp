#pragma once

#include <vector>

#include "kanesim/bloch.hpp"

namespace kanesim {

// Fixed-step classic RK4 integration of the ensemble-averaged equations of
// motion,
//   dP_x/dt = -2*kappa*P_x - Omega*P_z
//   dP_y/dt = -2*kappa*P_y
//   dP_z/dt = +Omega*P_x,
// used as an independent cross-check of the closed-form solutions (and by
// the validate command). The step count is chosen internally so that
// (2*kappa + Omega)*h <= 5e-4, which keeps the global error well below
// 1e-9 over the time spans used here.

// State at a single time t >= 0, integrating from p0 at t = 0.
PolarizationVector integrate_averaged_bloch(const PolarizationVector& p0, double kappa,
                                            double omega_rabi, double t);

// States at an ascending list of times (first entry >= 0); integration is
// continuous across the intervals.
std::vector<PolarizationVector> integrate_averaged_bloch_path(const PolarizationVector& p0,
                                                              double kappa, double omega_rabi,
                                                              const std::vector<double>& times);

}  // namespace kanesim
