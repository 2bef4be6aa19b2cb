#pragma once

// Stationary particle temperature: the root in T1 of P_abs(T1) = 0.

#include <string>
#include <vector>

#include <Eigen/Core>

#include "vacfric/observables.hpp"

namespace vacfric {

struct EquilibriumResult {
    double T1_star = 0.0;   // K
    double residual = 0.0;  // P_abs at T1_star, erg/s
    std::size_t iterations = 0; // P_abs evaluations
    double bracket_lo = 0.0; // K
    double bracket_hi = 0.0; // K
};

struct EquilibriumOptions {
    double rel_tol = 1e-10;         // on T1
    std::size_t max_expansions = 60;
    /// Samples used to confirm dP_abs/dT1 < 0 across the bracket before
    /// solving. -1 picks 8 for tabulated materials and 0 otherwise.
    int monotonicity_samples = -1;
};

/// P_abs(T1) for a particle spinning at Omega in a vacuum at T0.
double absorbed_power_at(const PolarizabilitySpec& particle, double T0, double T1, double Omega,
                         const QuadratureConfig& config = {});

/// Solves P_abs(T1) = 0 with Brent's method. The bracket starts at
/// [0, 2 max(T0, hbar Omega / kB)] and doubles its upper end until P_abs
/// changes sign. Omega = 0 returns T0 exactly.
EquilibriumResult equilibrium_temperature(const PolarizabilitySpec& particle, double T0, double Omega,
                                          const QuadratureConfig& config = {}, const EquilibriumOptions& options = {});

struct EquilibriumCurvePoint {
    double Omega = 0.0;
    double omega_over_theta0 = 0.0;
    double T1_over_T0 = 0.0;
    bool valid = false;
    std::string error; // populated when the point failed
};

/// T1*/T0 against Omega/theta0 for each Omega in `omegas` (rad/s). Failures
/// mark the point invalid instead of aborting the curve.
std::vector<EquilibriumCurvePoint> equilibrium_curve(const PolarizabilitySpec& particle, double T0,
                                                     const Eigen::ArrayXd& omegas,
                                                     const QuadratureConfig& config = {},
                                                     const EquilibriumOptions& options = {});

} // namespace vacfric
