#pragma once

// Physical constants and unit conversions. Everything inside the library is
// Gaussian-CGS; SI, eV and kelvin only appear at the I/O boundary and are
// converted here.

#include <numbers>

#include "vacfric/errors.hpp"

namespace vacfric {

/// CODATA 2018 values in Gaussian-CGS.
template <typename Scalar = double>
struct PhysicalConstants {
    static constexpr Scalar hbar = Scalar(1.054571817e-27);      // erg s
    static constexpr Scalar c = Scalar(2.99792458e10);           // cm/s
    static constexpr Scalar kB = Scalar(1.380649e-16);           // erg/K
    static constexpr Scalar coulomb_factor = Scalar(8.9875517923e9); // (4 pi eps0)^-1, SI
    static constexpr Scalar ev_to_erg = Scalar(1.602176634e-12);
    static constexpr Scalar year_to_s = Scalar(3.15576e7);       // Julian year
    static constexpr Scalar pi = std::numbers::pi_v<Scalar>;
};

using Constants = PhysicalConstants<double>;

/// theta = 2 pi kB T / hbar, the angular frequency scale of a bath at T.
template <typename Scalar>
Scalar thermal_angular_frequency(Scalar T)
{
    using K = PhysicalConstants<Scalar>;
    if (!(T >= Scalar(0))) throw DomainError("thermal_angular_frequency: negative temperature");
    return Scalar(2) * K::pi * K::kB * T / K::hbar;
}

/// Inverse of thermal_angular_frequency.
template <typename Scalar>
Scalar temperature_from_thermal_frequency(Scalar theta)
{
    using K = PhysicalConstants<Scalar>;
    if (!(theta >= Scalar(0))) throw DomainError("temperature_from_thermal_frequency: negative frequency");
    return theta * K::hbar / (Scalar(2) * K::pi * K::kB);
}

/// S/m to the Gaussian conductivity unit s^-1.
template <typename Scalar>
Scalar conductivity_si_to_gaussian(Scalar sigma_si)
{
    if (!(sigma_si >= Scalar(0))) throw DomainError("conductivity_si_to_gaussian: negative conductivity");
    return sigma_si * PhysicalConstants<Scalar>::coulomb_factor;
}

template <typename Scalar>
Scalar conductivity_gaussian_to_si(Scalar sigma)
{
    if (!(sigma >= Scalar(0))) throw DomainError("conductivity_gaussian_to_si: negative conductivity");
    return sigma / PhysicalConstants<Scalar>::coulomb_factor;
}

template <typename Scalar>
Scalar photon_energy_to_angular_frequency(Scalar energy_ev)
{
    using K = PhysicalConstants<Scalar>;
    if (!(energy_ev >= Scalar(0))) throw DomainError("photon_energy_to_angular_frequency: negative energy");
    return energy_ev * K::ev_to_erg / K::hbar;
}

template <typename Scalar>
Scalar angular_frequency_to_photon_energy(Scalar omega)
{
    using K = PhysicalConstants<Scalar>;
    if (!(omega >= Scalar(0))) throw DomainError("angular_frequency_to_photon_energy: negative frequency");
    return omega * K::hbar / K::ev_to_erg;
}

template <typename Scalar>
Scalar seconds_to_years(Scalar t)
{
    return t / PhysicalConstants<Scalar>::year_to_s;
}

} // namespace vacfric
