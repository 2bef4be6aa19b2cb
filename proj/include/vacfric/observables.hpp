#pragma once

// Frictional torque, radiated power and absorbed power of a spinning particle
// by adaptive quadrature of Gamma(omega), plus the closed forms that hold for a
// Drude sphere when |alpha|^2 terms are dropped.

#include <cstddef>

#include "vacfric/constants.hpp"
#include "vacfric/quadrature.hpp"
#include "vacfric/spectra.hpp"

namespace vacfric {

struct ObservableSet {
    double Omega = 0.0;   // rad/s, rotation frequency the set was computed at
    double torque = 0.0;  // erg, z component
    double p_rad = 0.0;   // erg/s
    double p_abs = 0.0;   // erg/s
    double quad_error = 0.0; // largest relative error estimate of torque and p_rad
    std::size_t evaluations = 0;
    double omega_cut = 0.0;  // integration range is [-omega_cut, omega_cut]
    bool truncated = false;  // omega_cut was lowered to stay inside the material data
};

struct IntegralEstimate {
    double value = 0.0;
    double error = 0.0; // absolute
    std::size_t evaluations = 0;
    double omega_cut = 0.0;
    bool truncated = false;
};

/// Half-width of the integration range, Omega + C max(theta0, theta1, Omega / C),
/// lowered if needed so that omega_cut + Omega stays within the material data.
/// Sets `truncated` accordingly.
double frequency_cutoff(const SpinSystem& system, const QuadratureConfig& config, bool* truncated = nullptr);

/// P_rad = int hbar omega Gamma(omega) domega.
IntegralEstimate integrate_radiated_power(const SpinSystem& system, const QuadratureConfig& config = {});

/// M = -int hbar Gamma(omega) domega.
IntegralEstimate integrate_torque(const SpinSystem& system, const QuadratureConfig& config = {});

/// Torque and radiated power from one shared quadrature; p_abs by energy balance.
ObservableSet compute_observables(const SpinSystem& system, const QuadratureConfig& config = {});

/// P_abs = -M Omega - P_rad.
double absorbed_power(const ObservableSet& observables);

// ---------------------------------------------------------------------------
// Drude closed forms (sphere of radius a, Gaussian conductivity sigma0,
// temperatures in K). Exact for Im(alpha) = 3 omega a^3 / 4 pi sigma0 with the
// radiative correction dropped.

namespace detail {
template <typename Scalar>
Scalar drude_prefactor(Scalar a, Scalar sigma0)
{
    using K = PhysicalConstants<Scalar>;
    return K::hbar * a * a * a / (K::pi * K::pi * K::c * K::c * K::c * sigma0);
}
} // namespace detail

template <typename Scalar>
Scalar drude_radiated_power_closed(Scalar a, Scalar sigma0, Scalar Omega, Scalar T0, Scalar T1)
{
    const Scalar t0 = thermal_angular_frequency(T0);
    const Scalar t1 = thermal_angular_frequency(T1);
    const Scalar O2 = Omega * Omega;
    const Scalar bracket = Scalar(2) * O2 * O2 * O2 + Scalar(5) * O2 * O2 * t1 * t1
        + Scalar(3) * O2 * t1 * t1 * t1 * t1
        + Scalar(5) / Scalar(14) * (std::pow(t1, 6) - std::pow(t0, 6));
    return detail::drude_prefactor(a, sigma0) / Scalar(60) * bracket;
}

template <typename Scalar>
Scalar drude_torque_closed(Scalar a, Scalar sigma0, Scalar Omega, Scalar T0, Scalar T1)
{
    const Scalar t0 = thermal_angular_frequency(T0);
    const Scalar t1 = thermal_angular_frequency(T1);
    const Scalar O2 = Omega * Omega;
    const Scalar bracket = Scalar(6) * O2 * O2 + Scalar(10) * O2 * t1 * t1 + std::pow(t0, 4)
        + Scalar(3) * std::pow(t1, 4);
    return -detail::drude_prefactor(a, sigma0) * Omega / Scalar(120) * bracket;
}

template <typename Scalar>
Scalar drude_absorbed_closed(Scalar a, Scalar sigma0, Scalar Omega, Scalar T0, Scalar T1)
{
    const Scalar t0 = thermal_angular_frequency(T0);
    const Scalar t1 = thermal_angular_frequency(T1);
    const Scalar O2 = Omega * Omega;
    const Scalar bracket = Scalar(2) * O2 * O2 * O2 + O2 * (std::pow(t0, 4) - Scalar(3) * std::pow(t1, 4))
        + Scalar(5) / Scalar(7) * (std::pow(t0, 6) - std::pow(t1, 6));
    return detail::drude_prefactor(a, sigma0) / Scalar(120) * bracket;
}

struct PeakSearchConfig {
    Eigen::Index coarse_points = 256;
    double rel_tol = 1e-6;
};

/// Frequency maximizing dP_rad/domega over omega > 0: a log-spaced coarse scan
/// over [1e-3, 1] omega_cut brackets the maximum, golden-section search refines it.
double peak_emission_frequency(const SpinSystem& system, const QuadratureConfig& config = {},
                               const PeakSearchConfig& peak = {});

} // namespace vacfric
