#include "kanesim/bloch.hpp"

#include <cmath>
#include <stdexcept>

namespace kanesim {

double PolarizationVector::norm() const {
    return std::sqrt(x * x + y * y + z * z);
}

void DensityOperator::validate() const {
    const double herm = std::abs(e01 - std::conj(e10));
    if (herm > 1e-12 || std::abs(e00.imag()) > 1e-12 || std::abs(e11.imag()) > 1e-12) {
        throw std::invalid_argument("density operator not Hermitian");
    }
    const std::complex<double> tr = e00 + e11;
    if (std::abs(tr - 1.0) > 1e-12) {
        throw std::invalid_argument("density operator trace differs from 1");
    }
    // Eigenvalues of a Hermitian unit-trace 2x2 matrix: (tr +- sqrt(tr^2 - 4 det))/2.
    const double det = (e00 * e11 - e01 * e10).real();
    const double disc = std::max(tr.real() * tr.real() - 4.0 * det, 0.0);
    const double lambda_min = 0.5 * (tr.real() - std::sqrt(disc));
    if (lambda_min < -1e-12) {
        throw std::invalid_argument("density operator not positive semidefinite");
    }
}

DensityOperator density_from_polarization(const PolarizationVector& p) {
    if (p.norm() > 1.0 + 1e-9) {
        throw std::invalid_argument("unphysical polarization");
    }
    using cd = std::complex<double>;
    return DensityOperator{
        cd(0.5 * (1.0 + p.z), 0.0),
        cd(0.5 * p.x, -0.5 * p.y),
        cd(0.5 * p.x, 0.5 * p.y),
        cd(0.5 * (1.0 - p.z), 0.0),
    };
}

PolarizationVector polarization_from_density(const DensityOperator& rho) {
    const std::complex<double> i(0.0, 1.0);
    return PolarizationVector{
        (rho.e01 + rho.e10).real(),
        (i * (rho.e01 - rho.e10)).real(),
        (rho.e00 - rho.e11).real(),
    };
}

double trace_fidelity(const DensityOperator& rho_a, const DensityOperator& rho_b) {
    return (rho_a.e00 * rho_b.e00 + rho_a.e01 * rho_b.e10 +
            rho_a.e10 * rho_b.e01 + rho_a.e11 * rho_b.e11)
        .real();
}

}  // namespace kanesim
