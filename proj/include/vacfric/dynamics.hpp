#pragma once

// Rotational mechanics of the particle: moment of inertia, linear friction
// coefficient, stopping time (closed form and from the full torque) and the
// spin-down trajectory I dOmega/dt = M(Omega, T1).

#include <cstddef>
#include <vector>

#include "vacfric/equilibrium.hpp"
#include "vacfric/observables.hpp"

namespace vacfric {

/// About the symmetry axis: (8/15) pi rho a^5 eta.
double moment_of_inertia(const ParticleGeometry& geometry);

/// beta = hbar a^3 theta0^4 / (30 pi^2 c^3 sigma0) for a Drude sphere, so that
/// M ~ -beta Omega at low Omega and T1 = T0.
double friction_coefficient_beta(double a, double sigma0, double T0);

/// Same, including the eta / (9 L^2) absorption factor of an oblate spheroid.
double friction_coefficient_beta(const ParticleGeometry& geometry, double sigma0, double T0);

/// tau = (hbar c)^3 rho a^2 sigma0 / (pi (kB T0)^4), times 9 L^2 for an oblate
/// spheroid. Returns +infinity at T0 = 0.
double stopping_time_drude(const ParticleGeometry& geometry, double sigma0, double T0);

struct StoppingTimeEstimate {
    double tau = 0.0;             // s, from the probe at omega_probe
    double tau_half_probe = 0.0;  // s, from the probe at omega_probe / 2
    double omega_probe = 0.0;     // rad/s
    double T1_star = 0.0;         // particle temperature at the probe, K
    double relative_change = 0.0; // |tau_half_probe - tau| / tau
    bool linear_regime_confirmed = false; // relative_change <= 0.5 %
};

/// tau = -I Omega_probe / M(Omega_probe, T1*) with Omega_probe = 1e-3 kB T0 / hbar
/// and T1* the equilibrium temperature at the probe. Throws RegimeError when
/// halving the probe changes tau by more than 2 %.
StoppingTimeEstimate stopping_time_numeric(const PolarizabilitySpec& particle, double T0,
                                           const QuadratureConfig& config = {});

enum class SpinDownMode {
    fixed_T1,                // particle temperature held at system.T1
    quasistatic_equilibrium, // T1 re-solved at every evaluation
};

struct EnergyLedgerEntry {
    double stopping_power = 0.0; // -M Omega, erg/s
    double p_rad = 0.0;
    double p_abs = 0.0;
};

struct SpinDownTrajectory {
    std::vector<double> times;   // s
    std::vector<double> omegas;  // rad/s
    std::vector<double> T1_path; // K
    std::vector<EnergyLedgerEntry> ledger;
};

struct OdeConfig {
    double tol = 1e-8;            // per-step error target on ln(Omega)
    double max_step = 0.0;        // 0 picks (t_end - t_start) / 100
    double initial_step = 0.0;    // 0 picks an estimate from dOmega/dt
    std::size_t max_steps = 100000;
};

class IntegrationError : public Error {
public:
    IntegrationError(const std::string& what, SpinDownTrajectory partial)
        : Error(what, true), partial_(std::move(partial)) {}
    const SpinDownTrajectory& partial() const { return partial_; }

private:
    SpinDownTrajectory partial_;
};

/// Integrates I dOmega/dt = M(Omega, T1) from system.Omega at t_start to t_end
/// with an adaptive Dormand-Prince 5(4) scheme on ln(Omega). Every accepted
/// step is recorded together with its energy ledger.
SpinDownTrajectory spin_down_trajectory(const SpinSystem& system, SpinDownMode mode, double t_start, double t_end,
                                        const QuadratureConfig& config = {}, const OdeConfig& ode = {});

} // namespace vacfric
