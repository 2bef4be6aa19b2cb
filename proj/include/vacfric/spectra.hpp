#pragma once

// Fluctuation kernels: Bose-Einstein occupation, free-space photonic density
// of states, vacuum Green tensor, fluctuation-dissipation correlators, and the
// spectral emission rate Gamma(omega) of a spinning particle.

#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "vacfric/constants.hpp"
#include "vacfric/polarizability.hpp"

namespace vacfric {

/// n(omega) = 1 / (exp(hbar omega / kB T) - 1).
///
/// T = 0 gives the two-sided limit: 0 for omega > 0 and -1 for omega < 0.
/// omega = 0 is a pole for every T and returns +infinity as an out-of-band
/// marker; test with `is_occupation_pole`.
template <typename Scalar>
Scalar bose_einstein(Scalar omega, Scalar T)
{
    using K = PhysicalConstants<Scalar>;
    if (omega == Scalar(0)) return std::numeric_limits<Scalar>::infinity();
    if (T == Scalar(0)) return omega > Scalar(0) ? Scalar(0) : Scalar(-1);
    return Scalar(1) / std::expm1(K::hbar * omega / (K::kB * T));
}

template <typename Scalar>
bool is_occupation_pole(Scalar n)
{
    return std::isinf(n);
}

/// Free-space local density of photonic states, omega^2 / (pi^2 c^3). Cavity
/// or surface environments would replace this single function.
template <typename Scalar>
Scalar local_density_of_states(Scalar omega)
{
    using K = PhysicalConstants<Scalar>;
    return omega * omega / (K::pi * K::pi * K::c * K::c * K::c);
}

/// Vacuum Green tensor G_ij(r, r', omega) relating a dipole at r' to the field
/// at r. Coincident points have no finite tensor; use the LDOS instead.
template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, 3, 3> vacuum_green_tensor(const Eigen::Matrix<Scalar, 3, 1>& r,
                                                              const Eigen::Matrix<Scalar, 3, 1>& r_prime,
                                                              Scalar omega)
{
    using C = std::complex<Scalar>;
    const Eigen::Matrix<Scalar, 3, 1> R = r - r_prime;
    const Scalar dist = R.norm();
    if (dist == Scalar(0))
        throw CoincidenceError("vacuum_green_tensor: r == r'; use local_density_of_states for the coincidence limit");
    const Scalar k = omega / PhysicalConstants<Scalar>::c;
    const Scalar kR = k * dist;
    const C i(Scalar(0), Scalar(1));
    const C phase = std::exp(i * kR) / (dist * dist * dist);
    const C diag = kR * kR + i * kR - Scalar(1);
    const C radial = kR * kR + Scalar(3) * i * kR - Scalar(3);
    const Eigen::Matrix<Scalar, 3, 1> n = R / dist;
    Eigen::Matrix<C, 3, 3> G = (-radial) * (n * n.transpose()).template cast<C>();
    G.diagonal().array() += diag;
    return phase * G;
}

/// Coincidence limit Im G_ii(r, r, omega) = (2 pi^2 omega / 3) rho0 = 2 k^3 / 3.
template <typename Scalar>
Scalar green_tensor_coincident_imag(Scalar omega)
{
    return Scalar(2) * PhysicalConstants<Scalar>::pi * PhysicalConstants<Scalar>::pi * omega / Scalar(3)
        * local_density_of_states(omega);
}

/// S(omega) = 2 hbar [n(omega) + 1] Im chi(omega), the <p(omega) q(omega')> ordering.
template <typename Scalar>
Scalar fdt_correlator(Scalar omega, Scalar T, Scalar im_chi)
{
    using K = PhysicalConstants<Scalar>;
    // 1 + n(x) = -1 / expm1(-x) keeps full precision for omega < 0.
    Scalar one_plus_n;
    if (omega == Scalar(0)) one_plus_n = std::numeric_limits<Scalar>::infinity();
    else if (T == Scalar(0)) one_plus_n = omega > Scalar(0) ? Scalar(1) : Scalar(0);
    else one_plus_n = Scalar(-1) / std::expm1(-K::hbar * omega / (K::kB * T));
    return Scalar(2) * K::hbar * one_plus_n * im_chi;
}

/// 2 hbar n(omega) Im chi(omega), the reversed <q(omega') p(omega)> ordering.
template <typename Scalar>
Scalar fdt_reversed_correlator(Scalar omega, Scalar T, Scalar im_chi)
{
    return Scalar(2) * PhysicalConstants<Scalar>::hbar * bose_einstein(omega, T) * im_chi;
}

/// Symmetrized correlator 2 hbar [n(omega) + 1/2] Im chi(omega).
template <typename Scalar>
Scalar fdt_symmetrized_correlator(Scalar omega, Scalar T, Scalar im_chi)
{
    return Scalar(2) * PhysicalConstants<Scalar>::hbar * (bose_einstein(omega, T) + Scalar(0.5)) * im_chi;
}

/// Coefficient of delta_ij delta(omega + omega') in the symmetrized vacuum
/// field correlator at a single point: (8 pi^3 hbar omega rho0 / 3) [n + 1/2].
template <typename Scalar>
Scalar field_fluctuation_spectrum(Scalar omega, Scalar T)
{
    using K = PhysicalConstants<Scalar>;
    return Scalar(8) * K::pi * K::pi * K::pi * K::hbar * omega * local_density_of_states(omega) / Scalar(3)
        * (bose_einstein(omega, T) + Scalar(0.5));
}

// ---------------------------------------------------------------------------

/// A particle at temperature T1 spinning at Omega about z inside a vacuum at T0.
struct SpinSystem {
    PolarizabilitySpec particle;
    double T0 = 0.0;    // K
    double T1 = 0.0;    // K
    double Omega = 0.0; // rad/s

    /// Throws DomainError for negative temperatures or rotation frequency.
    void validate() const;
    /// Dipole-approximation checks (Omega a / c and kB T a / c hbar below 0.1);
    /// violations are reported, not rejected.
    std::vector<std::string> validity_warnings() const;

    double theta0() const { return thermal_angular_frequency(T0); }
    double theta1() const { return thermal_angular_frequency(T1); }
};

/// Which absorption channel of Gamma to evaluate.
enum class GammaChannel { total, perpendicular, parallel };

/// Gamma(omega) = (2 pi omega rho0 / 3) { 2 g_perp(omega - Omega) [n1(omega - Omega) - n0(omega)]
///                                       + g_par(omega) [n1(omega) - n0(omega)] }.
/// The removable singularities at omega = 0 and omega = Omega are evaluated as
/// their limits.
double gamma_spectral(const SpinSystem& system, double omega, GammaChannel channel = GammaChannel::total);

/// dP_rad / domega = hbar omega [Gamma(omega) - Gamma(-omega)] for omega > 0.
double emission_spectrum(const SpinSystem& system, double omega);

struct SpectralGrid {
    Eigen::ArrayXd omegas;
    Eigen::ArrayXd values;
};

/// n points log-spaced over [lo, hi].
Eigen::ArrayXd log_spaced(double lo, double hi, Eigen::Index n);

SpectralGrid emission_spectrum_grid(const SpinSystem& system, const Eigen::ArrayXd& omegas);
SpectralGrid gamma_spectral_grid(const SpinSystem& system, const Eigen::ArrayXd& omegas);

} // namespace vacfric
