#include "vacfric/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "vacfric/roots.hpp"

namespace vacfric {

double absorbed_power_at(const PolarizabilitySpec& particle, double T0, double T1, double Omega,
                         const QuadratureConfig& config)
{
    return compute_observables(SpinSystem{particle, T0, T1, Omega}, config).p_abs;
}

EquilibriumResult equilibrium_temperature(const PolarizabilitySpec& particle, double T0, double Omega,
                                          const QuadratureConfig& config, const EquilibriumOptions& options)
{
    if (!(T0 >= 0.0) || !std::isfinite(T0)) throw DomainError("equilibrium_temperature: T0 must be >= 0");
    if (!(Omega >= 0.0) || !std::isfinite(Omega)) throw DomainError("equilibrium_temperature: Omega must be >= 0");

    EquilibriumResult out;
    if (Omega == 0.0) {
        // Detailed balance: no rotation, no net exchange at T1 = T0.
        out.T1_star = T0;
        out.residual = absorbed_power_at(particle, T0, T0, 0.0, config);
        out.bracket_lo = out.bracket_hi = T0;
        return out;
    }

    std::size_t evals = 0;
    auto p_abs = [&](double T1) {
        ++evals;
        return absorbed_power_at(particle, T0, T1, Omega, config);
    };

    double lo = 0.0;
    double hi = 2.0 * std::max(T0, Constants::hbar * Omega / Constants::kB);
    const double f_lo = p_abs(lo);
    double f_hi = p_abs(hi);

    if (f_lo == 0.0 && f_hi == 0.0)
        throw NoEquilibriumError("equilibrium_temperature: P_abs vanishes identically (non-absorbing particle)");
    if (f_lo < 0.0) throw BracketError("equilibrium_temperature: P_abs < 0 at T1 = 0");

    std::size_t expansions = 0;
    while (f_hi > 0.0) {
        if (expansions == options.max_expansions) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "equilibrium_temperature: no sign change up to T1 = %.4e K", hi);
            throw BracketError(buf);
        }
        lo = hi;
        hi *= 2.0;
        f_hi = p_abs(hi);
        ++expansions;
    }
    double f_lo_b = lo == 0.0 ? f_lo : p_abs(lo);

    int samples = options.monotonicity_samples;
    if (samples < 0) samples = std::isfinite(particle.max_frequency()) ? 8 : 0;
    if (samples > 0) {
        double prev = f_lo_b;
        const double scale = std::max(std::abs(f_lo_b), std::abs(f_hi));
        for (int k = 1; k <= samples; ++k) {
            const double T1 = lo + (hi - lo) * k / (samples + 1);
            const double v = p_abs(T1);
            if (v > prev + 1e-6 * scale) {
                char buf[200];
                std::snprintf(buf, sizeof buf,
                              "equilibrium_temperature: P_abs increases with T1 near %.4e K; root may not be unique",
                              T1);
                throw NoEquilibriumError(buf);
            }
            prev = v;
        }
    }

    const auto root = brent_root(p_abs, lo, hi, f_lo_b, f_hi, 0.0, options.rel_tol);
    out.T1_star = root.root;
    out.residual = root.f_root;
    out.bracket_lo = root.lo;
    out.bracket_hi = root.hi;
    out.iterations = evals;
    return out;
}

std::vector<EquilibriumCurvePoint> equilibrium_curve(const PolarizabilitySpec& particle, double T0,
                                                     const Eigen::ArrayXd& omegas, const QuadratureConfig& config,
                                                     const EquilibriumOptions& options)
{
    if (!(T0 > 0.0)) throw DomainError("equilibrium_curve: T0 must be positive");
    const double theta0 = thermal_angular_frequency(T0);
    std::vector<EquilibriumCurvePoint> curve;
    curve.reserve(static_cast<std::size_t>(omegas.size()));
    for (Eigen::Index i = 0; i < omegas.size(); ++i) {
        EquilibriumCurvePoint pt;
        pt.Omega = omegas[i];
        pt.omega_over_theta0 = omegas[i] / theta0;
        try {
            pt.T1_over_T0 = equilibrium_temperature(particle, T0, omegas[i], config, options).T1_star / T0;
            pt.valid = true;
        } catch (const Error& e) {
            pt.error = e.what();
        }
        curve.push_back(std::move(pt));
    }
    return curve;
}

} // namespace vacfric
