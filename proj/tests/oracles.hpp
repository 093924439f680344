// Independent cross-check machinery for the test suite. Everything here is
// deliberately written through a different algebraic route than the library
// code it checks: the stepping unitaries are applied as literal 2x2 complex
// matrix conjugations of the density matrix, never as axis-angle formulas
// on the polarization vector.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <random>

#include "kanesim/bloch.hpp"

namespace oracle {

using cd = std::complex<double>;
using Mat2 = std::array<cd, 4>;  // row-major 2x2

inline Mat2 matmul(const Mat2& a, const Mat2& b) {
    return Mat2{a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
                a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

inline Mat2 dagger(const Mat2& a) {
    return Mat2{std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])};
}

// exp(-i (ty*sigma_y + tz*sigma_z)) built from the closed form
// cos(|t|) I - i sin(|t|)/|t| (ty*sigma_y + tz*sigma_z).
inline Mat2 step_unitary(double ty, double tz) {
    const double theta = std::sqrt(ty * ty + tz * tz);
    const double c = std::cos(theta);
    const double sinc = (theta == 0.0) ? 1.0 : std::sin(theta) / theta;
    const cd i(0.0, 1.0);
    // H = ty*sigma_y + tz*sigma_z = [[tz, -i*ty], [i*ty, -tz]]
    return Mat2{c - i * sinc * tz, -i * sinc * (-i * ty), -i * sinc * (i * ty), c + i * sinc * tz};
}

// Conjugates rho(P) by the step unitary and reads the polarization back off
// the density matrix.
inline kanesim::PolarizationVector rotate_via_density(const kanesim::PolarizationVector& p,
                                                      double ty, double tz) {
    const Mat2 u = step_unitary(ty, tz);
    const Mat2 rho{cd(0.5 * (1.0 + p.z), 0.0), cd(0.5 * p.x, -0.5 * p.y),
                   cd(0.5 * p.x, 0.5 * p.y), cd(0.5 * (1.0 - p.z), 0.0)};
    const Mat2 out = matmul(matmul(u, rho), dagger(u));
    const cd i(0.0, 1.0);
    return kanesim::PolarizationVector{(out[1] + out[2]).real(), (i * (out[1] - out[2])).real(),
                                       (out[0] - out[3]).real()};
}

// Uniform point inside the unit ball (for random mixed states) or on the
// sphere (pure states). Plain mt19937_64 + rejection; test-local, fixed
// seeds, nothing shared with the library's stream construction.
inline kanesim::PolarizationVector random_in_ball(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (;;) {
        const double x = u(rng), y = u(rng), z = u(rng);
        if (x * x + y * y + z * z <= 1.0) return kanesim::PolarizationVector{x, y, z};
    }
}

inline kanesim::PolarizationVector random_on_sphere(std::mt19937_64& rng) {
    for (;;) {
        const auto p = random_in_ball(rng);
        const double n = p.norm();
        if (n > 0.1) return kanesim::PolarizationVector{p.x / n, p.y / n, p.z / n};
    }
}

}  // namespace oracle
