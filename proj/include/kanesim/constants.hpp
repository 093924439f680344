#pragma once

namespace kanesim {

// Electron-to-nuclear Zeeman splitting ratio for a P donor in Si. The nuclear
// g-factor below is fixed by this ratio rather than taken from tables, so the
// constant set is internally consistent: mu_B / (g_n * mu_n) == 1633.8.
inline constexpr double kSplittingRatio = 1633.8;

struct PhysicalConstants {
    double mu_B = 9.2740100783e-24;  // Bohr magneton (J/T), CODATA 2018
    double mu_n = 5.0507837461e-27;  // nuclear magneton (J/T), CODATA 2018
    double g_n = 9.2740100783e-24 / (kSplittingRatio * 5.0507837461e-27);
    double hbar = 1.054571817e-34;   // reduced Planck constant (J*s)

    // Throws std::invalid_argument naming the offending field if any value
    // is non-positive or non-finite, or if mu_B/(g_n*mu_n) strays from the
    // splitting-ratio anchor by more than 0.1%.
    void validate() const;

    bool operator==(const PhysicalConstants&) const = default;
};

}  // namespace kanesim
