#include "vacfric/spectra.hpp"

#include <algorithm>
#include <cstdio>

namespace vacfric {

namespace {

using K = Constants;

// g(nu) n(nu, T) given g(nu); at nu = 0 the product tends to g'(0) kB T / hbar.
double occupied(const PolarizabilitySpec& p, Polarization l, double g_nu, double nu, double T, double probe)
{
    if (nu == 0.0) {
        if (T == 0.0) return 0.0;
        return p.g_slope_at_zero(l, probe) * K::kB * T / K::hbar;
    }
    if (T == 0.0) return nu > 0.0 ? 0.0 : -g_nu;
    return g_nu / std::expm1(K::hbar * nu / (K::kB * T));
}

// n(nu, T1) - n(omega, T0) without the cancellation of two nearly equal
// occupations. With x = hbar nu / kB T1, y = hbar omega / kB T0 and d = x - y
// (formed from nu - omega and T0 - T1 directly):
//   x, y > 0:  -expm1(d) n(x) [1 + n(y)]
//   x, y < 0:  both occupations sit near -1, so subtract the small parts
//              n(-y) - n(-x) = expm1(-d) n(-x) [1 + n(-y)]
// Mixed signs, or |d| large, do not cancel and are subtracted directly.
// Returns NaN only at the poles.
double occupation_difference(double nu, double T1, double omega, double T0)
{
    if (nu == 0.0 || omega == 0.0) return std::nan("");
    const double h_k = K::hbar / K::kB;
    auto n = [](double x) { return 1.0 / std::expm1(x); };
    // 1 + n(x) = -n(-x) avoids the cancellation of -1 against n(x) ~ -1.
    auto n_plus_one = [](double x) { return -1.0 / std::expm1(-x); };
    if (T1 == 0.0 && T0 == 0.0) return (nu > 0.0 ? 0.0 : -1.0) - (omega > 0.0 ? 0.0 : -1.0);
    if (T1 == 0.0) {
        const double x0 = h_k * omega / T0;
        return nu > 0.0 ? -n(x0) : -n_plus_one(x0);
    }
    if (T0 == 0.0) {
        const double x1 = h_k * nu / T1;
        return omega > 0.0 ? n(x1) : n_plus_one(x1);
    }
    const double x1 = h_k * nu / T1;
    const double x0 = h_k * omega / T0;
    const double d = h_k * ((nu - omega) / T1 + omega * (T0 - T1) / (T0 * T1));
    const bool close = std::abs(d) <= 40.0;
    if (x1 > 0.0 && x0 > 0.0) return close ? -std::expm1(d) * n(x1) * n_plus_one(x0) : n(x1) - n(x0);
    if (x1 < 0.0 && x0 < 0.0) return close ? std::expm1(-d) * n(-x1) * n_plus_one(-x0) : n(-x0) - n(-x1);
    return n(x1) - n(x0);
}

double slope_probe(const SpinSystem& s)
{
    const double scale = std::max({s.theta0(), s.theta1(), s.Omega});
    return scale > 0.0 ? 1e-7 * scale : 1.0;
}

} // namespace

void SpinSystem::validate() const
{
    if (!(T0 >= 0.0) || !std::isfinite(T0)) throw DomainError("SpinSystem: T0 must be >= 0");
    if (!(T1 >= 0.0) || !std::isfinite(T1)) throw DomainError("SpinSystem: T1 must be >= 0");
    if (!(Omega >= 0.0) || !std::isfinite(Omega)) throw DomainError("SpinSystem: Omega must be >= 0");
}

std::vector<std::string> SpinSystem::validity_warnings() const
{
    std::vector<std::string> out;
    const double a = particle.geometry().radius();
    char buf[160];
    const double rot = Omega * a / K::c;
    if (rot >= 0.1) {
        std::snprintf(buf, sizeof buf, "dipole approximation: Omega a / c = %.3g is not small", rot);
        out.emplace_back(buf);
    }
    for (const auto& [name, T] : {std::pair{"T0", T0}, std::pair{"T1", T1}}) {
        const double x = K::kB * T * a / (K::c * K::hbar);
        if (x >= 0.1) {
            std::snprintf(buf, sizeof buf, "dipole approximation: kB %s a / (c hbar) = %.3g is not small", name, x);
            out.emplace_back(buf);
        }
    }
    return out;
}

double gamma_spectral(const SpinSystem& s, double omega, GammaChannel channel)
{
    // rho0 ~ omega^2 makes every term vanish at omega = 0.
    if (omega == 0.0) return 0.0;

    const PolarizabilitySpec& p = s.particle;
    const double probe = slope_probe(s);
    const double n0 = bose_einstein(omega, s.T0);
    double bracket = 0.0;

    if (channel != GammaChannel::parallel) {
        const double nu = omega - s.Omega;
        const double g_perp = p.g(Polarization::perpendicular, nu);
        const double dn = occupation_difference(nu, s.T1, omega, s.T0);
        bracket += 2.0 * (std::isnan(dn) ? occupied(p, Polarization::perpendicular, g_perp, nu, s.T1, probe) - g_perp * n0
                                         : g_perp * dn);
    }
    if (channel != GammaChannel::perpendicular) {
        const double g_par = p.g(Polarization::parallel, omega);
        const double dn = occupation_difference(omega, s.T1, omega, s.T0);
        bracket += std::isnan(dn) ? occupied(p, Polarization::parallel, g_par, omega, s.T1, probe) - g_par * n0
                                  : g_par * dn;
    }
    return 2.0 * K::pi * omega * local_density_of_states(omega) / 3.0 * bracket;
}

double emission_spectrum(const SpinSystem& s, double omega)
{
    if (!(omega > 0.0)) throw DomainError("emission_spectrum: omega must be positive");
    return K::hbar * omega * (gamma_spectral(s, omega) - gamma_spectral(s, -omega));
}

Eigen::ArrayXd log_spaced(double lo, double hi, Eigen::Index n)
{
    if (!(lo > 0.0) || !(hi > lo) || n < 2) throw DomainError("log_spaced: need 0 < lo < hi and n >= 2");
    Eigen::ArrayXd out = Eigen::ArrayXd::LinSpaced(n, std::log(lo), std::log(hi)).exp();
    out[0] = lo;
    out[n - 1] = hi;
    return out;
}

SpectralGrid emission_spectrum_grid(const SpinSystem& s, const Eigen::ArrayXd& omegas)
{
    SpectralGrid grid{omegas, Eigen::ArrayXd(omegas.size())};
    for (Eigen::Index i = 0; i < omegas.size(); ++i) {
        if (i > 0 && !(omegas[i] > omegas[i - 1])) throw DomainError("spectral grid must be strictly increasing");
        grid.values[i] = emission_spectrum(s, omegas[i]);
    }
    return grid;
}

SpectralGrid gamma_spectral_grid(const SpinSystem& s, const Eigen::ArrayXd& omegas)
{
    SpectralGrid grid{omegas, Eigen::ArrayXd(omegas.size())};
    for (Eigen::Index i = 0; i < omegas.size(); ++i) {
        if (i > 0 && !(omegas[i] > omegas[i - 1])) throw DomainError("spectral grid must be strictly increasing");
        grid.values[i] = gamma_spectral(s, omegas[i]);
    }
    return grid;
}

} // namespace vacfric
