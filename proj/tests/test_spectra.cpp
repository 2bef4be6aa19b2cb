#include <doctest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "vacfric/observables.hpp"
#include "vacfric/spectra.hpp"

using namespace vacfric;
using testsupport::rel_diff;

namespace {
const double kSigma = 2.0671e14;
const double kA = 1e-6;
const double kHbar = 1.054571817e-27;
const double kKB = 1.380649e-16;
const double kC = 2.99792458e10;

PolarizabilitySpec drude_sphere(bool correction = false)
{
    return drude_low_frequency(ParticleGeometry::sphere(kA, 2.26), kSigma, correction);
}
} // namespace

TEST_CASE("bose-einstein occupation")
{
    const double T = 50.0;
    const double w = kKB * T / kHbar;
    CHECK(rel_diff(bose_einstein(w, T), 1.0 / (std::exp(1.0) - 1.0)) < 1e-14);
    CHECK(bose_einstein(w, T) == doctest::Approx(0.581977).epsilon(1e-6));
    CHECK(bose_einstein(1e13, 0.0) == 0.0);
    CHECK(bose_einstein(-1e13, 0.0) == -1.0);
    CHECK(is_occupation_pole(bose_einstein(0.0, 10.0)));
    CHECK(is_occupation_pole(bose_einstein(0.0, 0.0)));
    CHECK_FALSE(is_occupation_pole(bose_einstein(1.0, 10.0)));

    std::mt19937_64 rng(17);
    for (int i = 0; i < 100; ++i) {
        const double Ti = testsupport::log_uniform(rng, 0.1, 1000.0);
        const double wi = testsupport::log_uniform(rng, 1e9, 1e16);
        CHECK(std::abs(bose_einstein(-wi, Ti) - (-1.0 - bose_einstein(wi, Ti))) < 1e-12 * std::max(1.0, bose_einstein(wi, Ti)));
    }
}

TEST_CASE("photonic density of states")
{
    CHECK(local_density_of_states(0.0) == 0.0);
    CHECK(rel_diff(local_density_of_states(2e14), 4.0 * local_density_of_states(1e14)) < 1e-15);
    const double c3 = kC * kC * kC;
    CHECK(rel_diff(local_density_of_states(1e15), 1e30 / (std::numbers::pi * std::numbers::pi * c3)) < 1e-14);
    CHECK(rel_diff(local_density_of_states(1e15), 3.7604355e-3) < 1e-7);
}

TEST_CASE("vacuum green tensor")
{
    using V = Eigen::Vector3d;
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-1e-4, 1e-4);
    for (int i = 0; i < 50; ++i) {
        const V r(u(rng), u(rng), u(rng));
        const V rp(u(rng), u(rng), u(rng));
        const double w = testsupport::log_uniform(rng, 1e12, 1e16);
        const auto G = vacuum_green_tensor(r, rp, w);
        const auto Gt = vacuum_green_tensor(rp, r, w);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) CHECK(std::abs(G(a, b) - Gt(b, a)) <= 1e-12 * G.cwiseAbs().maxCoeff());
    }

    const double w = 1e15;
    const double k = w / kC;
    CHECK(rel_diff(green_tensor_coincident_imag(w), 2.0 * k * k * k / 3.0) < 1e-14);

    // Near field: Im G_ii approaches 2 k^3 / 3.
    const double R_near = 1e-3 / k;
    const auto Gn = vacuum_green_tensor(V(R_near, 0, 0), V(0, 0, 0), w);
    for (int i = 0; i < 3; ++i) CHECK(rel_diff(Gn(i, i).imag(), 2.0 * k * k * k / 3.0) < 1e-5);

    // Far field: transverse ~ k^2 / R, longitudinal negligible.
    const double R_far = 1e3 / k;
    const auto Gf = vacuum_green_tensor(V(R_far, 0, 0), V(0, 0, 0), w);
    CHECK(rel_diff(std::abs(Gf(1, 1)), k * k / R_far) < 2e-3);
    CHECK(std::abs(Gf(0, 0)) / std::abs(Gf(1, 1)) < 3e-3);

    CHECK_THROWS_AS(vacuum_green_tensor(V(1, 2, 3), V(1, 2, 3), w), CoincidenceError);
}

TEST_CASE("fluctuation-dissipation correlators")
{
    CHECK(fdt_correlator(-1e13, 0.0, -1.0) == 0.0);
    const double T = 20.0;
    const double w = kKB * T / kHbar;
    CHECK(rel_diff(fdt_correlator(w, T, 1.0), 2.0 * kHbar * (1.0 + 1.0 / (std::exp(1.0) - 1.0))) < 1e-14);
    CHECK(fdt_correlator(w, T, 1.0) / (2.0 * kHbar) == doctest::Approx(1.581977).epsilon(1e-6));

    std::mt19937_64 rng(29);
    for (int i = 0; i < 100; ++i) {
        // hbar omega / kB T up to 50 keeps the reversed correlator clear of underflow.
        const double Ti = testsupport::log_uniform(rng, 0.5, 500.0);
        const double wi = testsupport::log_uniform(rng, 1e-4, 50.0) * kKB * Ti / kHbar;
        const double chi = testsupport::log_uniform(rng, 1e-3, 1e3);
        // S(-omega) with Im chi odd equals the reversed ordering 2 hbar n Im chi.
        const double s_neg = fdt_correlator(-wi, Ti, -chi);
        CHECK(rel_diff(s_neg, fdt_reversed_correlator(wi, Ti, chi)) < 1e-10);
        CHECK(rel_diff(s_neg / fdt_correlator(wi, Ti, chi), std::exp(-kHbar * wi / (kKB * Ti))) < 1e-10);
        CHECK(rel_diff(fdt_symmetrized_correlator(wi, Ti, chi),
                       0.5 * (fdt_correlator(wi, Ti, chi) + fdt_reversed_correlator(wi, Ti, chi))) < 1e-13);
    }
    const double ws = 3e13;
    CHECK(rel_diff(field_fluctuation_spectrum(ws, T),
                   2.0 * std::numbers::pi * fdt_symmetrized_correlator(ws, T, green_tensor_coincident_imag(ws))) < 1e-13);
}

TEST_CASE("gamma vanishes in detailed balance")
{
    const SpinSystem s{drude_sphere(true), 12.0, 12.0, 0.0};
    std::mt19937_64 rng(31);
    for (int i = 0; i < 100; ++i) {
        const double w = testsupport::log_uniform(rng, 1e8, 1e15);
        CHECK(gamma_spectral(s, w) == 0.0);
        CHECK(gamma_spectral(s, -w) == 0.0);
    }
    CHECK(gamma_spectral(s, 0.0) == 0.0);
}

TEST_CASE("zero-temperature emission lives below Omega")
{
    const double Omega = 1e12;
    const SpinSystem s{drude_sphere(true), 0.0, 0.0, Omega};
    for (double x : {-10.0, -1.0, -0.3, 1.0, 1.0001, 2.0, 50.0}) CHECK(gamma_spectral(s, x * Omega) == 0.0);
    for (double x : {0.01, 0.3, 0.7, 0.999}) CHECK(gamma_spectral(s, x * Omega) > 0.0);
}

TEST_CASE("gamma against the symbolic zero-temperature product")
{
    const double Omega = 1e12;
    const SpinSystem s{drude_sphere(false), 0.0, 0.0, Omega};
    const double w = 0.5 * Omega;
    const double pi = std::numbers::pi;
    const double rho0 = w * w / (pi * pi * kC * kC * kC);
    const double g = 3.0 * w * kA * kA * kA / (4.0 * pi * kSigma); // |g_perp(omega - Omega)|
    const double symbolic = (2.0 * pi * w * rho0 / 3.0) * 2.0 * g;
    CHECK(rel_diff(gamma_spectral(s, w), symbolic) < 1e-12);
}

TEST_CASE("channel decomposition")
{
    const SpinSystem s{drude_sphere(true), 7.0, 11.0, 3e12};
    std::mt19937_64 rng(37);
    for (int i = 0; i < 50; ++i) {
        const double w = (i % 2 ? 1.0 : -1.0) * testsupport::log_uniform(rng, 1e10, 1e14);
        const double total = gamma_spectral(s, w);
        const double parts = gamma_spectral(s, w, GammaChannel::perpendicular) + gamma_spectral(s, w, GammaChannel::parallel);
        CHECK(std::abs(total - parts) <= 1e-14 * std::abs(total));
    }
}

TEST_CASE("gamma is continuous through its removable points")
{
    const double Omega = 2e12;
    const SpinSystem s{drude_sphere(true), 9.0, 14.0, Omega};
    for (double at : {0.0, Omega}) {
        const double h = 1e-6 * Omega;
        const double left = gamma_spectral(s, at - h);
        const double mid = gamma_spectral(s, at);
        const double right = gamma_spectral(s, at + h);
        // Gamma itself vanishes like omega^2 at 0, so judge the jump against the band scale.
        const double scale = std::max({std::abs(left), std::abs(right), std::abs(gamma_spectral(s, 0.5 * Omega))});
        CHECK(std::abs(mid - 0.5 * (left + right)) <= 1e-4 * scale + 1e-300);
    }
}

TEST_CASE("static particle emission peak")
{
    const double T1 = 40.0;
    const SpinSystem s{drude_sphere(false), 0.0, T1, 0.0};
    const double peak = peak_emission_frequency(s);
    const double x = kHbar * peak / (kKB * T1);
    CHECK(rel_diff(x, testsupport::wien_root()) < 1e-5);
    CHECK(rel_diff(testsupport::wien_root(), 4.965114231744276) < 1e-14);
}

TEST_CASE("degree-5 homogeneity of the Drude emission spectrum")
{
    const double lambda = 2.0;
    const double T0 = 8.0, T1 = 13.0, Omega = 3e12;
    const SpinSystem s{drude_sphere(false), T0, T1, Omega};
    const SpinSystem scaled{drude_sphere(false), lambda * T0, lambda * T1, lambda * Omega};
    const Eigen::ArrayXd grid = log_spaced(1e10, 1e14, 20);
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        const double base = emission_spectrum(s, grid[i]);
        const double big = emission_spectrum(scaled, lambda * grid[i]);
        CHECK(rel_diff(big, std::pow(lambda, 5) * base) < 1e-10);
    }
}

TEST_CASE("spectral grids")
{
    const Eigen::ArrayXd g = log_spaced(1.0, 1000.0, 4);
    CHECK(g[0] == 1.0);
    CHECK(g[3] == 1000.0);
    CHECK(rel_diff(g[1], 10.0) < 1e-14);

    const SpinSystem s{drude_sphere(true), 5.0, 5.0, 0.0};
    const SpectralGrid zero = emission_spectrum_grid(s, log_spaced(1e10, 1e14, 16));
    CHECK((zero.values == 0.0).all());
    CHECK_THROWS_AS(emission_spectrum(s, 0.0), DomainError);
}

TEST_CASE("spin system validation")
{
    CHECK_THROWS_AS((SpinSystem{drude_sphere(), -1.0, 1.0, 0.0}.validate()), DomainError);
    CHECK_THROWS_AS((SpinSystem{drude_sphere(), 1.0, 1.0, -2.0}.validate()), DomainError);
    CHECK(SpinSystem{drude_sphere(), 2.7, 2.7, 1e10}.validity_warnings().empty());
    const auto big = drude_low_frequency(ParticleGeometry::sphere(1e-2, 2.26), kSigma, true);
    CHECK_FALSE(SpinSystem{big, 300.0, 300.0, 1e12}.validity_warnings().empty());
}

TEST_CASE("gamma against an extended-precision reference")
{
    using LD = long double;
    auto n = [](LD x) { return 1.0L / std::expm1(x); };
    // Occupations near -1 on the negative axis are compared through their small parts.
    auto dn = [&](LD x1, LD x0) { return x1 < 0 && x0 < 0 ? n(-x0) - n(-x1) : n(x1) - n(x0); };
    const LD hk = LD(kHbar) / LD(kKB);
    const LD c = 2.99792458e10L;
    const LD pi = 3.141592653589793238462643383279502884L;

    const auto p = drude_sphere(false);
    std::mt19937_64 rng(101);
    for (int i = 0; i < 60; ++i) {
        const double T0 = testsupport::log_uniform(rng, 0.05, 500.0);
        const double T1 = testsupport::log_uniform(rng, 0.05, 500.0);
        const double Omega = testsupport::log_uniform(rng, 1e9, 1e15);
        const SpinSystem s{p, T0, T1, Omega};
        const double scale = std::max({s.theta0(), s.theta1(), Omega});
        const double w = (i % 2 ? 1.0 : -1.0) * testsupport::log_uniform(rng, 1e-3 * scale, 60.0 * scale);
        const LD nu = LD(w) - LD(Omega);
        auto g = [&](LD x) { return 3.0L * x * LD(kA) * kA * kA / (4.0L * pi * LD(kSigma)); };
        const LD bracket = 2.0L * g(nu) * dn(hk * nu / T1, hk * w / T0) + g(w) * dn(hk * w / T1, hk * w / T0);
        const LD ref = 2.0L * LD(w) * w * w / (3.0L * pi * c * c * c) * bracket;
        if (ref == 0.0L || !std::isnormal(double(ref))) continue;
        CHECK(rel_diff(gamma_spectral(s, w), double(ref)) < 1e-12);
    }
}
