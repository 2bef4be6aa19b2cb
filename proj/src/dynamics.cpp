#include "vacfric/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace vacfric {

namespace {

using K = Constants;

double shape_absorption_factor(const ParticleGeometry& g)
{
    if (g.shape() == ParticleGeometry::Shape::sphere) return 1.0;
    const double L = g.equatorial_depolarization();
    return g.aspect_ratio() / (9.0 * L * L);
}

} // namespace

double moment_of_inertia(const ParticleGeometry& g)
{
    const double a = g.radius();
    return 8.0 / 15.0 * K::pi * g.density() * a * a * a * a * a * g.aspect_ratio();
}

double friction_coefficient_beta(double a, double sigma0, double T0)
{
    if (!(a > 0.0)) throw DomainError("friction_coefficient_beta: radius must be positive");
    if (!(sigma0 > 0.0)) throw DomainError("friction_coefficient_beta: sigma0 must be positive");
    const double theta0 = thermal_angular_frequency(T0);
    return K::hbar * a * a * a * std::pow(theta0, 4) / (30.0 * K::pi * K::pi * K::c * K::c * K::c * sigma0);
}

double friction_coefficient_beta(const ParticleGeometry& g, double sigma0, double T0)
{
    return friction_coefficient_beta(g.radius(), sigma0, T0) * shape_absorption_factor(g);
}

double stopping_time_drude(const ParticleGeometry& g, double sigma0, double T0)
{
    if (!(sigma0 > 0.0)) throw DomainError("stopping_time_drude: sigma0 must be positive");
    if (!(T0 >= 0.0)) throw DomainError("stopping_time_drude: T0 must be >= 0");
    if (T0 == 0.0) return std::numeric_limits<double>::infinity();

    const double hc = K::hbar * K::c;
    const double kT = K::kB * T0;
    const double a = g.radius();
    double tau = hc * hc * hc / K::pi * g.density() * a * a * sigma0 / (kT * kT * kT * kT);
    if (g.shape() != ParticleGeometry::Shape::sphere) {
        const double L = g.equatorial_depolarization();
        tau *= 9.0 * L * L;
    }

    const double via_beta = moment_of_inertia(g) / friction_coefficient_beta(g, sigma0, T0);
    if (std::abs(via_beta - tau) > 1e-12 * tau)
        throw std::logic_error("stopping_time_drude: closed form disagrees with I / beta");
    return tau;
}

StoppingTimeEstimate stopping_time_numeric(const PolarizabilitySpec& particle, double T0, const QuadratureConfig& config)
{
    if (!(T0 > 0.0)) throw DomainError("stopping_time_numeric: T0 must be positive");
    const double I = moment_of_inertia(particle.geometry());

    auto probe = [&](double Omega, double* T1_out) {
        const double T1 = equilibrium_temperature(particle, T0, Omega, config).T1_star;
        const double M = compute_observables(SpinSystem{particle, T0, T1, Omega}, config).torque;
        if (!(M < 0.0)) throw RegimeError("stopping_time_numeric: torque does not oppose rotation at the probe");
        if (T1_out) *T1_out = T1;
        return -I * Omega / M;
    };

    StoppingTimeEstimate out;
    out.omega_probe = 1e-3 * K::kB * T0 / K::hbar;
    out.tau = probe(out.omega_probe, &out.T1_star);
    out.tau_half_probe = probe(0.5 * out.omega_probe, nullptr);
    out.relative_change = std::abs(out.tau_half_probe - out.tau) / out.tau;
    out.linear_regime_confirmed = out.relative_change <= 5e-3;
    if (out.relative_change > 2e-2) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "stopping_time_numeric: tau changes by %.2f%% when the probe is halved",
                      100.0 * out.relative_change);
        throw RegimeError(buf);
    }
    return out;
}

namespace {

// Dormand-Prince 5(4) tableau. The system is autonomous, so the stage times
// are not needed.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

struct RhsSample {
    double dlog_omega; // d ln(Omega) / dt
    double T1;
    ObservableSet obs;
};

} // namespace

SpinDownTrajectory spin_down_trajectory(const SpinSystem& system, SpinDownMode mode, double t_start, double t_end,
                                        const QuadratureConfig& config, const OdeConfig& ode)
{
    system.validate();
    if (!(system.Omega > 0.0)) throw DomainError("spin_down_trajectory: initial Omega must be positive");
    if (!(t_end > t_start)) throw DomainError("spin_down_trajectory: t_end must exceed t_start");
    if (!(ode.tol > 0.0)) throw DomainError("spin_down_trajectory: ODE tolerance must be positive");

    const double I = moment_of_inertia(system.particle.geometry());
    const double span = t_end - t_start;
    const double max_step = ode.max_step > 0.0 ? ode.max_step : span / 100.0;

    auto rhs = [&](double log_omega) {
        const double Omega = std::exp(log_omega);
        const double T1 = mode == SpinDownMode::fixed_T1
            ? system.T1
            : equilibrium_temperature(system.particle, system.T0, Omega, config).T1_star;
        RhsSample s{0.0, T1, compute_observables(SpinSystem{system.particle, system.T0, T1, Omega}, config)};
        s.dlog_omega = s.obs.torque / (I * Omega);
        return s;
    };

    SpinDownTrajectory traj;
    auto record = [&](double t, double log_omega, const RhsSample& s) {
        traj.times.push_back(t);
        traj.omegas.push_back(std::exp(log_omega));
        traj.T1_path.push_back(s.T1);
        traj.ledger.push_back({-s.obs.torque * s.obs.Omega, s.obs.p_rad, s.obs.p_abs});
    };

    double t = t_start;
    double y = std::log(system.Omega);
    RhsSample k1 = rhs(y);
    record(t, y, k1);

    double h = ode.initial_step;
    if (!(h > 0.0)) {
        const double rate = std::abs(k1.dlog_omega);
        h = rate > 0.0 ? std::min(max_step, 0.01 / rate) : max_step;
    }
    h = std::min({h, max_step, span});

    std::size_t steps = 0;
    while (t < t_end) {
        if (steps++ >= ode.max_steps) throw IntegrationError("spin_down_trajectory: step limit reached", traj);
        if (t + h > t_end) h = t_end - t;
        if (h <= 1e-13 * std::max(std::abs(t), span)) {
            throw IntegrationError("spin_down_trajectory: step size underflow", traj);
        }

        const double f1 = k1.dlog_omega;
        const double f2 = rhs(y + h * a21 * f1).dlog_omega;
        const double f3 = rhs(y + h * (a31 * f1 + a32 * f2)).dlog_omega;
        const double f4 = rhs(y + h * (a41 * f1 + a42 * f2 + a43 * f3)).dlog_omega;
        const double f5 = rhs(y + h * (a51 * f1 + a52 * f2 + a53 * f3 + a54 * f4)).dlog_omega;
        const double f6 = rhs(y + h * (a61 * f1 + a62 * f2 + a63 * f3 + a64 * f4 + a65 * f5)).dlog_omega;
        const double y_new = y + h * (b1 * f1 + b3 * f3 + b4 * f4 + b5 * f5 + b6 * f6);
        const RhsSample k7 = rhs(y_new);
        const double err_abs =
            std::abs(h * (e1 * f1 + e3 * f3 + e4 * f4 + e5 * f5 + e6 * f6 + e7 * k7.dlog_omega));
        const double err = err_abs / ode.tol;

        if (err <= 1.0) {
            t += h;
            y = y_new;
            k1 = k7;
            record(t, y, k1);
        }
        const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        h = std::min(h * factor, max_step);
    }
    return traj;
}

} // namespace vacfric
