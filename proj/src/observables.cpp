#include "vacfric/observables.hpp"

#include <algorithm>
#include <cstdio>
#include <vector>

#include "vacfric/roots.hpp"

namespace vacfric {

namespace {

using K = Constants;

std::vector<double> breakpoints(double cut, double Omega)
{
    std::vector<double> pts{-cut};
    if (Omega > 0.0 && Omega < cut) pts.push_back(-Omega);
    pts.push_back(0.0);
    if (Omega > 0.0 && Omega < cut) pts.push_back(Omega);
    pts.push_back(cut);
    return pts;
}

double relative_error(double value, double error, double l1)
{
    if (value != 0.0) return error / std::abs(value);
    return l1 > 0.0 ? error / l1 : 0.0;
}

template <int N, typename F>
QuadratureResult<N> integrate_gamma(const SpinSystem& s, const QuadratureConfig& config, double cut, F&& integrand)
{
    const auto pts = breakpoints(cut, s.Omega);
    return integrate_adaptive<N>(integrand, std::span<const double>(pts), config.rel_tol, config.abs_floor,
                                 config.max_subdivisions);
}

} // namespace

double frequency_cutoff(const SpinSystem& s, const QuadratureConfig& config, bool* truncated)
{
    s.validate();
    config.validate();
    const double C = config.cutoff_factor;
    double cut = s.Omega + C * std::max({s.theta0(), s.theta1(), s.Omega / C});
    bool trunc = false;
    const double limit = s.particle.max_frequency();
    if (cut > 0.0 && cut + s.Omega > limit) {
        char buf[200];
        if (s.particle.above_grid_policy() == AboveGridPolicy::error) {
            std::snprintf(buf, sizeof buf,
                          "integration range needs |omega| up to %.4e rad/s but material data ends at %.4e",
                          cut + s.Omega, limit);
            throw RangeError(buf);
        }
        cut = limit - s.Omega;
        trunc = true;
        if (!(cut > s.Omega)) {
            std::snprintf(buf, sizeof buf, "material data (max %.4e rad/s) does not cover the rotation band", limit);
            throw RangeError(buf);
        }
    }
    if (truncated) *truncated = trunc;
    return cut;
}

IntegralEstimate integrate_radiated_power(const SpinSystem& s, const QuadratureConfig& config)
{
    bool truncated = false;
    const double cut = frequency_cutoff(s, config, &truncated);
    if (cut == 0.0) return {0.0, 0.0, 0, 0.0, false};
    auto f = [&s](double w) { return Eigen::Matrix<double, 1, 1>(K::hbar * w * gamma_spectral(s, w)); };
    const auto r = integrate_gamma<1>(s, config, cut, f);
    return {r.value[0], r.error[0], r.evaluations, cut, truncated};
}

IntegralEstimate integrate_torque(const SpinSystem& s, const QuadratureConfig& config)
{
    bool truncated = false;
    const double cut = frequency_cutoff(s, config, &truncated);
    if (cut == 0.0) return {0.0, 0.0, 0, 0.0, false};
    auto f = [&s](double w) { return Eigen::Matrix<double, 1, 1>(-K::hbar * gamma_spectral(s, w)); };
    const auto r = integrate_gamma<1>(s, config, cut, f);
    return {r.value[0], r.error[0], r.evaluations, cut, truncated};
}

ObservableSet compute_observables(const SpinSystem& s, const QuadratureConfig& config)
{
    bool truncated = false;
    const double cut = frequency_cutoff(s, config, &truncated);
    ObservableSet out;
    out.Omega = s.Omega;
    out.omega_cut = cut;
    out.truncated = truncated;
    if (cut == 0.0) return out;

    auto f = [&s](double w) {
        const double gamma = gamma_spectral(s, w);
        return Eigen::Vector2d(-K::hbar * gamma, K::hbar * w * gamma);
    };
    const auto r = integrate_gamma<2>(s, config, cut, f);
    out.torque = r.value[0];
    out.p_rad = r.value[1];
    out.p_abs = absorbed_power(out);
    out.quad_error = std::max(relative_error(r.value[0], r.error[0], r.l1[0]),
                              relative_error(r.value[1], r.error[1], r.l1[1]));
    out.evaluations = r.evaluations;
    return out;
}

double absorbed_power(const ObservableSet& o)
{
    return -o.torque * o.Omega - o.p_rad;
}

double peak_emission_frequency(const SpinSystem& s, const QuadratureConfig& config, const PeakSearchConfig& peak)
{
    const double cut = frequency_cutoff(s, config);
    if (cut == 0.0) throw UndefinedPeakError("peak_emission_frequency: spectrum is identically zero");
    const Eigen::ArrayXd grid = log_spaced(1e-3 * cut, cut, peak.coarse_points);
    const SpectralGrid spectrum = emission_spectrum_grid(s, grid);

    Eigen::Index best = 0;
    const double best_value = spectrum.values.maxCoeff(&best);
    if (!(best_value > 0.0)) throw UndefinedPeakError("peak_emission_frequency: no positive emission on the scan grid");

    const double lo = grid[std::max<Eigen::Index>(best - 1, 0)];
    const double hi = grid[std::min<Eigen::Index>(best + 1, grid.size() - 1)];
    const auto refined = golden_section_maximize([&s](double w) { return emission_spectrum(s, w); }, lo, hi, peak.rel_tol);
    return refined.fx >= best_value ? refined.x : grid[best];
}

} // namespace vacfric
