#include <doctest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "vacfric/dynamics.hpp"

using namespace vacfric;
using testsupport::rel_diff;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kHbar = 1.054571817e-27;
constexpr double kC = 2.99792458e10;
constexpr double kKB = 1.380649e-16;
const double kSigmaSmall = 2.3e4 * 8.9875517923e9;
const double kSigmaLarge = 2.0e5 * 8.9875517923e9;

double tau_oracle(double a, double rho, double sigma, double T)
{
    const double hc = kHbar * kC;
    return hc * hc * hc / kPi * rho * a * a * sigma / std::pow(kKB * T, 4);
}
} // namespace

TEST_CASE("moment of inertia")
{
    const auto sphere = ParticleGeometry::sphere(1e-5, 2.26);
    CHECK(rel_diff(moment_of_inertia(sphere), 3.78666635e-25) < 1e-8);
    for (double eta : {0.05, 0.2, 0.7}) {
        const auto disk = ParticleGeometry::oblate_spheroid(1e-5, eta, 2.26);
        CHECK(rel_diff(moment_of_inertia(disk) / moment_of_inertia(sphere), eta) < 1e-14);
    }
}

TEST_CASE("friction coefficient and stopping time scale as T^4")
{
    const double a = 1e-6;
    CHECK(rel_diff(friction_coefficient_beta(a, kSigmaSmall, 6.0), 16.0 * friction_coefficient_beta(a, kSigmaSmall, 3.0)) < 1e-13);
    const double beta = friction_coefficient_beta(a, kSigmaSmall, 3.0);
    const double theta = 2 * kPi * kKB * 3.0 / kHbar;
    CHECK(rel_diff(beta, kHbar * a * a * a * std::pow(theta, 4) / (30 * kPi * kPi * kC * kC * kC * kSigmaSmall)) < 1e-12);

    const auto g = ParticleGeometry::sphere(a, 2.26);
    CHECK(rel_diff(stopping_time_drude(g, kSigmaSmall, 6.0) / stopping_time_drude(g, kSigmaSmall, 3.0), 1.0 / 16.0) < 1e-13);
    CHECK(std::isinf(stopping_time_drude(g, kSigmaSmall, 0.0)));
    CHECK_THROWS_AS(stopping_time_drude(g, -1.0, 3.0), DomainError);
}

TEST_CASE("stopping time of a 100 nm grain in the microwave background")
{
    const auto g = ParticleGeometry::sphere(1e-5, 2.26);
    const double tau = stopping_time_drude(g, kSigmaLarge, 2.7);
    CHECK(rel_diff(tau, tau_oracle(1e-5, 2.26, kSigmaLarge, 2.7)) < 1e-9);
    CHECK(rel_diff(tau, 2.1160814e17) < 1e-7);
    const double gyr = seconds_to_years(tau) / 1e9;
    CHECK(gyr > 0.5);
    CHECK(gyr < 10.0);
    CHECK(rel_diff(tau, moment_of_inertia(g) / friction_coefficient_beta(g, kSigmaLarge, 2.7)) < 1e-12);
}

TEST_CASE("oblate spheroid slows down faster")
{
    const double a = 1e-5;
    const auto sphere = ParticleGeometry::sphere(a, 2.26);
    const auto disk = ParticleGeometry::oblate_spheroid(a, 0.2, 2.26);
    const double L = testsupport::depolarization_integral(0.2);
    const double ratio = stopping_time_drude(disk, kSigmaLarge, 2.7) / stopping_time_drude(sphere, kSigmaLarge, 2.7);
    CHECK(rel_diff(ratio, 9 * L * L) < 1e-9);
    CHECK(std::abs(ratio - 0.1401) < 1e-3);
    // Thin-disk limit L -> pi eta / 4; the leading correction is O(eta).
    for (double eta : {1e-4, 1e-3, 1e-2}) {
        const auto d = ParticleGeometry::oblate_spheroid(a, eta, 2.26);
        const double r = stopping_time_drude(d, kSigmaLarge, 2.7) / stopping_time_drude(sphere, kSigmaLarge, 2.7);
        CHECK(rel_diff(r, 9 * kPi * kPi / 16 * eta * eta) < 4.0 * eta);
    }
}

TEST_CASE("numeric stopping time on tabulated Drude data")
{
    const double a = 1e-6;
    const auto g = ParticleGeometry::sphere(a, 2.26);
    const auto table = testsupport::drude_table(kSigmaSmall, 1e-7, 10.0, 300);
    const auto particle = clausius_mossotti(g, MaterialModel::tabulated({table}), true);
    for (double T : {3.0, 30.0}) {
        const auto est = stopping_time_numeric(particle, T);
        CHECK(rel_diff(est.tau, stopping_time_drude(g, kSigmaSmall, T)) < 1e-2);
        CHECK(est.linear_regime_confirmed);
        CHECK(est.omega_probe == doctest::Approx(1e-3 * kKB * T / kHbar).epsilon(1e-12));
    }

    const auto analytic = drude_low_frequency(g, kSigmaSmall, false);
    const auto exact = stopping_time_numeric(analytic, 10.0);
    CHECK(rel_diff(exact.tau, stopping_time_drude(g, kSigmaSmall, 10.0)) < 1e-5);
}

TEST_CASE("linear spin-down decays exponentially")
{
    const double a = 1e-6;
    const double T0 = 10.0;
    const auto g = ParticleGeometry::sphere(a, 2.26);
    const auto p = drude_low_frequency(g, kSigmaSmall, false);
    const double tau = stopping_time_drude(g, kSigmaSmall, T0);
    const double Omega0 = 1e-2 * thermal_angular_frequency(T0);

    const auto traj = spin_down_trajectory(SpinSystem{p, T0, T0, Omega0}, SpinDownMode::fixed_T1, 0.0, 3.0 * tau);
    REQUIRE(traj.times.size() > 3);
    CHECK(traj.times.back() == doctest::Approx(3.0 * tau).epsilon(1e-12));
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        worst = std::max(worst, rel_diff(traj.omegas[i], Omega0 * std::exp(-traj.times[i] / tau)));
        const auto& e = traj.ledger[i];
        CHECK(rel_diff(e.stopping_power, e.p_rad + e.p_abs) < 1e-6);
        CHECK(traj.T1_path[i] == T0);
    }
    CHECK(worst < 1e-2);
}

TEST_CASE("quasistatic spin-down tracks the equilibrium temperature")
{
    const double T0 = 5.0;
    const auto g = ParticleGeometry::sphere(1e-6, 2.26);
    const auto p = drude_low_frequency(g, kSigmaSmall, false);
    const double tau = stopping_time_drude(g, kSigmaSmall, T0);
    const double Omega0 = 2.0 * thermal_angular_frequency(T0);
    OdeConfig ode;
    ode.tol = 1e-6;
    const auto traj = spin_down_trajectory(SpinSystem{p, T0, T0, Omega0}, SpinDownMode::quasistatic_equilibrium, 0.0,
                                           0.05 * tau, {}, ode);
    for (std::size_t i = 1; i < traj.omegas.size(); ++i) CHECK(traj.omegas[i] < traj.omegas[i - 1]);
    for (std::size_t i = 0; i < traj.ledger.size(); ++i) {
        CHECK(std::abs(traj.ledger[i].p_abs) < 1e-6 * traj.ledger[i].stopping_power);
    }
}

TEST_CASE("lossless particle keeps spinning")
{
    const auto g = ParticleGeometry::sphere(1e-6, 2.26);
    const auto p = clausius_mossotti(g, MaterialModel::tabulated({testsupport::lossless_table(4.0, 1e-6, 20.0, 30)}), true);
    const auto traj = spin_down_trajectory(SpinSystem{p, 5.0, 5.0, 1e12}, SpinDownMode::fixed_T1, 0.0, 1e10);
    CHECK(rel_diff(traj.omegas.back(), 1e12) < 1e-14);
}

TEST_CASE("spin-down failures")
{
    const auto g = ParticleGeometry::sphere(1e-6, 2.26);
    const auto p = drude_low_frequency(g, kSigmaSmall, false);
    const double tau = stopping_time_drude(g, kSigmaSmall, 10.0);
    OdeConfig ode;
    ode.max_steps = 3;
    try {
        spin_down_trajectory(SpinSystem{p, 10.0, 10.0, 1e11}, SpinDownMode::fixed_T1, 0.0, 3.0 * tau, {}, ode);
        FAIL("expected IntegrationError");
    } catch (const IntegrationError& e) {
        CHECK(e.is_numerical());
        CHECK(e.partial().times.size() >= 1);
        CHECK(e.partial().times.back() < 3.0 * tau);
    }
    CHECK_THROWS_AS(spin_down_trajectory(SpinSystem{p, 10.0, 10.0, 0.0}, SpinDownMode::fixed_T1, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(spin_down_trajectory(SpinSystem{p, 10.0, 10.0, 1e11}, SpinDownMode::fixed_T1, 1.0, 1.0), DomainError);
}
