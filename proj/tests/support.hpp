#pragma once

// Shared oracles and generators for the test suites. Everything here is
// written independently of the library code paths it is used to check.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include <Eigen/Core>

#include "vacfric/constants.hpp"
#include "vacfric/material.hpp"

namespace testsupport {

inline double rel_diff(double a, double b)
{
    if (a == b) return 0.0;
    return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

/// Adaptive Simpson on [a, b].
inline double simpson(const std::function<double(double)>& f, double a, double b, double tol, int depth = 50)
{
    auto rule = [&](double lo, double hi, double flo, double fmid, double fhi) {
        return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    };
    std::function<double(double, double, double, double, double, double, double, int)> rec =
        [&](double lo, double hi, double flo, double fmid, double fhi, double whole, double eps, int d) {
            const double mid = 0.5 * (lo + hi);
            const double lm = 0.5 * (lo + mid);
            const double rm = 0.5 * (mid + hi);
            const double flm = f(lm);
            const double frm = f(rm);
            const double left = rule(lo, mid, flo, flm, fmid);
            const double right = rule(mid, hi, fmid, frm, fhi);
            if (d <= 0 || std::abs(left + right - whole) <= 15.0 * eps)
                return left + right + (left + right - whole) / 15.0;
            return rec(lo, mid, flo, flm, fmid, left, 0.5 * eps, d - 1) + rec(mid, hi, fmid, frm, fhi, right, 0.5 * eps, d - 1);
        };
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    return rec(a, b, fa, fm, fb, rule(a, b, fa, fm, fb), tol, depth);
}

/// Equatorial depolarization factor of an oblate spheroid with semi-axes
/// (1, 1, eta) from the ellipsoid integral (eta / 2) int_0^inf ds / ((s + 1)^2 sqrt(s + eta^2)),
/// mapped onto [0, 1) by s = t / (1 - t) and then t = 1 - u^2.
inline double depolarization_integral(double eta)
{
    auto integrand = [eta](double u) {
        if (u == 0.0) return 0.0;
        const double t = 1.0 - u * u;
        const double s = t / (1.0 - t);
        const double ds_du = 2.0 * u / ((1.0 - t) * (1.0 - t));
        return ds_du / ((s + 1.0) * (s + 1.0) * std::sqrt(s + eta * eta));
    };
    return 0.5 * eta * simpson(integrand, 0.0, 1.0, 1e-13);
}

/// Root of x = 5 (1 - exp(-x)) by Newton iteration from x = 5.
inline double wien_root()
{
    double x = 5.0;
    for (int i = 0; i < 100; ++i) {
        const double f = x - 5.0 * (1.0 - std::exp(-x));
        const double df = 1.0 - 5.0 * std::exp(-x);
        const double step = f / df;
        x -= step;
        if (std::abs(step) < 1e-15 * x) break;
    }
    return x;
}

/// Table sampled from eps = 1 + i 4 pi sigma0 / omega on a log grid (energies in eV).
inline vacfric::PermittivityTable drude_table(double sigma0, double e_lo_ev, double e_hi_ev, Eigen::Index n,
                                              const std::string& label = "drude-synthetic")
{
    vacfric::PermittivityTable t;
    t.label = label;
    t.grid.resize(n);
    t.eps_re.resize(n);
    t.eps_im.resize(n);
    const double lo = std::log(e_lo_ev);
    const double hi = std::log(e_hi_ev);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double e = std::exp(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
        const double w = e * 1.602176634e-12 / 1.054571817e-27;
        t.grid[i] = w;
        t.eps_re[i] = 1.0;
        t.eps_im[i] = 4.0 * std::numbers::pi * sigma0 / w;
    }
    return t;
}

/// Lossless dielectric with constant real permittivity.
inline vacfric::PermittivityTable lossless_table(double eps, double e_lo_ev, double e_hi_ev, Eigen::Index n)
{
    auto t = drude_table(1.0, e_lo_ev, e_hi_ev, n, "lossless");
    t.eps_re.setConstant(eps);
    t.eps_im.setZero();
    return t;
}

/// Drude metal with collisional damping plus a smooth interband absorption edge
/// switching on around `edge_ev`:
///   eps = 1 - wp^2 / (w (w + i gamma)) + i A (1 - exp(-(E / edge)^2)),  wp^2 = 4 pi sigma0 gamma.
inline vacfric::PermittivityTable interband_table(double sigma0, double gamma, double A, double edge_ev, double e_lo_ev,
                                                  double e_hi_ev, Eigen::Index n)
{
    auto t = drude_table(1.0, e_lo_ev, e_hi_ev, n, "graphite-style");
    const double wp2 = 4.0 * std::numbers::pi * sigma0 * gamma;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double w = t.grid[i];
        const double e = w * 1.054571817e-27 / 1.602176634e-12;
        const std::complex<double> drude = 1.0 - wp2 / (w * std::complex<double>(w, gamma));
        const double ib = A * (1.0 - std::exp(-(e / edge_ev) * (e / edge_ev)));
        t.eps_re[i] = drude.real();
        t.eps_im[i] = drude.imag() + ib;
    }
    return t;
}

/// Uniform draw on a log scale.
inline double log_uniform(std::mt19937_64& rng, double lo, double hi)
{
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
}

} // namespace testsupport
