#pragma once

#include <complex>

namespace kanesim {

// Dimensionless polarization (Bloch) vector: rho = (I + P.sigma)/2.
// |P| = 1 is a pure state, |P| = 0 the maximally mixed state. Convention
// used throughout: sigma_z|0> = +|0>, so |0> maps to P = (0,0,1).
struct PolarizationVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const;

    bool operator==(const PolarizationVector&) const = default;
};

// 2x2 density matrix entries, row-major. Valid states are Hermitian,
// unit-trace, and positive semidefinite; see validate().
struct DensityOperator {
    std::complex<double> e00;
    std::complex<double> e01;
    std::complex<double> e10;
    std::complex<double> e11;

    // Throws std::invalid_argument if Hermiticity or unit trace is violated
    // beyond 1e-12, or an eigenvalue drops below -1e-12.
    void validate() const;
};

// rho = (I + P.sigma)/2. Throws std::invalid_argument "unphysical
// polarization" when |P| > 1 + 1e-9.
DensityOperator density_from_polarization(const PolarizationVector& p);

// P_i = Tr(rho sigma_i). Exact inverse of density_from_polarization on the
// unit ball (round-trip error below 1e-12).
PolarizationVector polarization_from_density(const DensityOperator& rho);

// Tr(rho_a rho_b) = (1 + Pa.Pb)/2. Symmetric; lands in [0,1] for valid
// states. This is the plain trace product, deliberately not the Uhlmann
// fidelity.
double trace_fidelity(const DensityOperator& rho_a, const DensityOperator& rho_b);

}  // namespace kanesim
