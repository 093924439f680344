#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "kanesim/analytic.hpp"
#include "kanesim/ode_reference.hpp"
#include "oracles.hpp"

using namespace kanesim;

namespace {

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
    return out;
}

}  // namespace

TEST_CASE("undriven closed form") {
    const PolarizationVector p0{0.6, -0.48, 0.64};

    const PolarizationVector at0 = register_polarization(p0, 2.0, 0.0);
    CHECK(at0.x == p0.x);
    CHECK(at0.y == p0.y);
    CHECK(at0.z == p0.z);

    // Coherence halves when 2*kappa*t = ln 2; P_z never moves.
    const double t_half = std::log(2.0) / (2.0 * 2.0);
    const PolarizationVector at_half = register_polarization(p0, 2.0, t_half);
    CHECK(at_half.x == doctest::Approx(0.5 * p0.x).epsilon(1e-14));
    CHECK(at_half.y == doctest::Approx(0.5 * p0.y).epsilon(1e-14));
    CHECK(at_half.z == p0.z);

    const PolarizationVector frozen = register_polarization({0.8, 0.0, 0.25}, 0.5, 1.0);
    CHECK(frozen.x == doctest::Approx(0.8 * std::exp(-1.0)).epsilon(1e-15));
    CHECK(frozen.z == 0.25);
}

TEST_CASE("driven closed form reproduces frozen integrator values") {
    // Frozen from an independent high-resolution integration of the averaged
    // equations of motion.
    const PolarizationVector a =
        rotation_polarization_exact({0.0, 0.0, 1.0}, RotationSolutionParams(0.3, 1.0), 2.0);
    CHECK(a.x == doctest::Approx(-0.5429345700215531).epsilon(1e-8));
    CHECK(a.y == 0.0);
    CHECK(a.z == doctest::Approx(-0.018630730160709867).epsilon(1e-6));

    const PolarizationVector b = rotation_polarization_exact(
        {0.3, -0.5, 0.8}, RotationSolutionParams(0.7, 0.4), 1.5);
    CHECK(b.x == doctest::Approx(-0.16750110671125373).epsilon(1e-8));
    CHECK(b.y == doctest::Approx(-0.06122821412649182).epsilon(1e-12));
    CHECK(b.z == doctest::Approx(0.7932502941806527).epsilon(1e-8));
}

TEST_CASE("critically damped point has the known closed form") {
    // kappa = Omega: the damping coefficient vanishes and, from (1,0,0),
    // P_x(t) = -(kappa*t - 1)*exp(-kappa*t) ... at kappa*t = 2:
    // P_x = -exp(-2), P_z = 2*exp(-2).
    const PolarizationVector p =
        rotation_polarization_exact({1.0, 0.0, 0.0}, RotationSolutionParams(1.0, 1.0), 2.0);
    CHECK(p.x == doctest::Approx(-std::exp(-2.0)).epsilon(1e-12));
    CHECK(p.y == 0.0);
    CHECK(p.z == doctest::Approx(2.0 * std::exp(-2.0)).epsilon(1e-12));
    CHECK(p.x == doctest::Approx(-0.13533528323661184).epsilon(1e-12));
    CHECK(p.z == doctest::Approx(0.2706705664732247).epsilon(1e-12));
}

TEST_CASE("no drive collapses the driven solution onto the undriven one") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const PolarizationVector p0 = oracle::random_in_ball(rng);
        const double kappa = 3.0 * u(rng);
        const double t = 4.0 * u(rng);
        const PolarizationVector drv =
            rotation_polarization_exact(p0, RotationSolutionParams(kappa, 0.0), t);
        const PolarizationVector reg = register_polarization(p0, kappa, t);
        CHECK(std::abs(drv.x - reg.x) < 1e-12);
        CHECK(std::abs(drv.y - reg.y) < 1e-12);
        CHECK(std::abs(drv.z - reg.z) < 1e-12);
    }
}

TEST_CASE("no noise collapses the exact solution onto the leading-order one") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const PolarizationVector p0 = oracle::random_on_sphere(rng);
        const double omega = 0.1 + 5.0 * u(rng);
        const double t = 6.0 * u(rng);
        const PolarizationVector ex =
            rotation_polarization_exact(p0, RotationSolutionParams(0.0, omega), t);
        const PolarizationVector ap = rotation_polarization_approx(p0, 0.0, omega, t);
        CHECK(std::abs(ex.x - ap.x) < 1e-12);
        CHECK(std::abs(ex.y - ap.y) < 1e-12);
        CHECK(std::abs(ex.z - ap.z) < 1e-12);
    }
}

TEST_CASE("closed form agrees with the reference integrator across regimes") {
    std::mt19937_64 rng(59);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 24; ++i) {
        const double omega = std::pow(10.0, -1.0 + 2.0 * u(rng));     // 0.1 .. 10
        const double ratio = std::pow(10.0, -6.0 + 7.0 * u(rng));     // 1e-6 .. 10
        const double kappa = ratio * omega;
        const PolarizationVector p0 = oracle::random_on_sphere(rng);
        const RotationSolutionParams sol(kappa, omega);
        const double t_max = 5.0 / std::max(kappa, omega);
        for (const double t : linspace(0.0, t_max, 21)) {
            const PolarizationVector c = rotation_polarization_exact(p0, sol, t);
            const PolarizationVector r = integrate_averaged_bloch(p0, kappa, omega, t);
            CHECK(std::abs(c.x - r.x) < 1e-8);
            CHECK(std::abs(c.y - r.y) < 1e-8);
            CHECK(std::abs(c.z - r.z) < 1e-8);
        }
    }
}

TEST_CASE("path integration matches pointwise integration") {
    const PolarizationVector p0{0.6, -0.48, 0.64};
    const std::vector<double> times = linspace(0.0, 4.0, 9);
    const auto path = integrate_averaged_bloch_path(p0, 0.4, 1.3, times);
    REQUIRE(path.size() == times.size());
    for (std::size_t k = 0; k < times.size(); ++k) {
        const PolarizationVector single = integrate_averaged_bloch(p0, 0.4, 1.3, times[k]);
        CHECK(std::abs(path[k].x - single.x) < 1e-10);
        CHECK(std::abs(path[k].y - single.y) < 1e-10);
        CHECK(std::abs(path[k].z - single.z) < 1e-10);
    }
}

TEST_CASE("series branch hands over smoothly at the degenerate point") {
    // Straddle the |a|*t switch point with nearly-degenerate parameters on
    // both sides; each branch must still track the integrator.
    const PolarizationVector p0{0.8, 0.1, -0.59};
    const double kappa = 1.0, t = 1.0;
    for (const double x : {0.5e-6, 0.9e-6, 1.1e-6, 2.0e-6}) {
        // Underdamped side: a = i*x exactly when Omega^2 = kappa^2 + x^2.
        const double omega = std::sqrt(kappa * kappa + x * x);
        const PolarizationVector c =
            rotation_polarization_exact(p0, RotationSolutionParams(kappa, omega), t);
        const PolarizationVector r = integrate_averaged_bloch(p0, kappa, omega, t);
        CHECK(std::abs(c.x - r.x) < 1e-9);
        CHECK(std::abs(c.y - r.y) < 1e-9);
        CHECK(std::abs(c.z - r.z) < 1e-9);

        // Overdamped side: a = x when Omega^2 = kappa^2 - x^2.
        const double omega2 = std::sqrt(kappa * kappa - x * x);
        const PolarizationVector c2 =
            rotation_polarization_exact(p0, RotationSolutionParams(kappa, omega2), t);
        const PolarizationVector r2 = integrate_averaged_bloch(p0, kappa, omega2, t);
        CHECK(std::abs(c2.x - r2.x) < 1e-9);
        CHECK(std::abs(c2.z - r2.z) < 1e-9);
    }
}

TEST_CASE("imaginary residue of the complex evaluation stays negligible") {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        const double kappa = 5.0 * u(rng);
        const double omega = 5.0 * u(rng);
        const double t = 8.0 * u(rng);
        const auto eval = detail::evaluate_rotation_solution(oracle::random_in_ball(rng), kappa,
                                                             omega, t);
        CHECK(eval.imag_residue < 1e-10);
    }
}

TEST_CASE("damping coefficient closes the rate identity") {
    std::mt19937_64 rng(67);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double kappa = 10.0 * u(rng);
        const double omega = 10.0 * u(rng);
        const RotationSolutionParams sol(kappa, omega);
        const std::complex<double> lhs = sol.alpha_reduced * sol.alpha_reduced;
        const double rhs = kappa * kappa - omega * omega;
        CHECK(std::abs(lhs.real() - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
        CHECK(std::abs(lhs.imag()) <= 1e-12 * std::max(1.0, std::abs(rhs)));
        CHECK(sol.alpha_reduced.real() >= 0.0);  // principal branch
    }
}

TEST_CASE("averaged polarization never grows") {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const PolarizationVector p0 = oracle::random_on_sphere(rng);
        const double kappa = 3.0 * u(rng);
        const double omega = 3.0 * u(rng);
        const RotationSolutionParams sol(kappa, omega);
        double prev = p0.norm();
        for (const double t : linspace(0.05, 6.0, 60)) {
            const double cur = rotation_polarization_exact(p0, sol, t).norm();
            CHECK(cur <= prev + 1e-12);
            prev = cur;
        }
    }
}

TEST_CASE("leading-order solution is accurate deep in the weak-noise regime") {
    const double omega = 1.0;
    const double kappa = 1e-5 * omega;
    const RotationSolutionParams sol(kappa, omega);
    double worst = 0.0;
    for (const double t : linspace(0.0, std::numbers::pi / 2.0, 101)) {
        const PolarizationVector ex = rotation_polarization_exact({0.0, 0.0, 1.0}, sol, t);
        const PolarizationVector ap = rotation_polarization_approx({0.0, 0.0, 1.0}, kappa, omega, t);
        worst = std::max({worst, std::abs(ex.x - ap.x), std::abs(ex.y - ap.y),
                          std::abs(ex.z - ap.z)});
    }
    CHECK(worst < 1e-4);
    CHECK(worst > 0.0);  // the two forms are genuinely different routes
}

TEST_CASE("undriven overlap fidelity") {
    const PolarizationVector diag{1.0 / std::sqrt(2.0), 0.0, 1.0 / std::sqrt(2.0)};
    CHECK(register_fidelity(diag, 0.5, 1.0) ==
          doctest::Approx(0.8419698602928606).epsilon(1e-14));
    CHECK(register_fidelity({0.0, 0.0, 1.0}, 2.0, 5.0) == 1.0);
    CHECK(register_fidelity(diag, 0.0, 7.0) == 1.0);

    // Definition check against the generic overlap of density operators.
    std::mt19937_64 rng(73);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const PolarizationVector p0 = oracle::random_in_ball(rng);
        const double kappa = 2.0 * u(rng);
        const double t = 3.0 * u(rng);
        const double direct = register_fidelity(p0, kappa, t);
        const double via_rho = trace_fidelity(density_from_polarization(p0),
                                              density_from_polarization(
                                                  register_polarization(p0, kappa, t)));
        CHECK(direct == doctest::Approx(via_rho).epsilon(1e-12));
    }
}

TEST_CASE("worst case bounds every unit input and is attained on the equator") {
    const double kappa = 0.5, t = std::log(2.0);
    CHECK(worst_case_register_fidelity(kappa, t) == doctest::Approx(0.75).epsilon(1e-15));

    std::mt19937_64 rng(79);
    const double worst = worst_case_register_fidelity(0.8, 1.3);
    for (int i = 0; i < 300; ++i) {
        const PolarizationVector p0 = oracle::random_on_sphere(rng);
        CHECK(register_fidelity(p0, 0.8, 1.3) >= worst - 1e-12);
    }
    CHECK(register_fidelity({1.0, 0.0, 0.0}, 0.8, 1.3) ==
          doctest::Approx(worst).epsilon(1e-15));
    CHECK(register_fidelity({0.0, 1.0, 0.0}, 0.8, 1.3) ==
          doctest::Approx(worst).epsilon(1e-15));
}

TEST_CASE("driven fidelity values and identities") {
    CHECK(rotation_fidelity({0.0, 0.0, 1.0}, 1.0, 1.0) ==
          doctest::Approx(0.6839397205857212).epsilon(1e-14));

    // The y-pole is the worst driven input and collapses onto the undriven
    // worst case: both are (1 + exp(-2*kappa*t))/2.
    std::mt19937_64 rng(83);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const double kappa = 2.0 * u(rng);
        const double t = 3.0 * u(rng);
        CHECK(std::abs(rotation_fidelity({0.0, 1.0, 0.0}, kappa, t) -
                       worst_case_register_fidelity(kappa, t)) < 1e-12);
        const PolarizationVector p0 = oracle::random_on_sphere(rng);
        CHECK(rotation_fidelity(p0, kappa, t) >=
              rotation_fidelity({0.0, 1.0, 0.0}, kappa, t) - 1e-12);
    }
}

TEST_CASE("driven fidelity equals the overlap of noisy and noiseless drives") {
    std::mt19937_64 rng(89);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const PolarizationVector p0 = oracle::random_on_sphere(rng);
        const double kappa = 1.5 * u(rng);
        const double omega = 0.1 + 4.0 * u(rng);
        const double t = 3.0 * u(rng);
        const PolarizationVector noisy = rotation_polarization_approx(p0, kappa, omega, t);
        const PolarizationVector ideal = rotation_polarization_approx(p0, 0.0, omega, t);
        const double via_rho = trace_fidelity(density_from_polarization(noisy),
                                              density_from_polarization(ideal));
        CHECK(std::abs(rotation_fidelity(p0, kappa, t) - via_rho) < 1e-12);
    }
}

TEST_CASE("fidelities are bounded and non-increasing in time") {
    std::mt19937_64 rng(97);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const PolarizationVector p0 = oracle::random_on_sphere(rng);
        const double kappa = 2.0 * u(rng);
        double prev_reg = 1.0 + 1e-12, prev_rot = 1.0 + 1e-12;
        for (const double t : linspace(0.0, 5.0, 51)) {
            const double fr = register_fidelity(p0, kappa, t);
            const double fo = rotation_fidelity(p0, kappa, t);
            CHECK(fr >= 0.5 - 1e-12);
            CHECK(fr <= 1.0 + 1e-12);
            CHECK(fo >= 0.5 - 1e-12);
            CHECK(fo <= 1.0 + 1e-12);
            CHECK(fr <= prev_reg + 1e-12);
            CHECK(fo <= prev_rot + 1e-12);
            prev_reg = fr;
            prev_rot = fo;
        }
    }
}
