#pragma once

// Particle polarizabilities: quasistatic sphere and oblate-spheroid forms,
// radiative-reaction correction, absorption functions g_l and the lab-frame
// effective polarizability of a particle spinning about z.

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <vector>

#include <Eigen/Core>

#include "vacfric/constants.hpp"
#include "vacfric/material.hpp"

namespace vacfric {

/// Polarization relative to the rotation axis.
enum class Polarization { perpendicular, parallel };

// ---------------------------------------------------------------------------
// Scalar kernels

/// a^3 (eps - 1) / (eps + 2).
template <typename Scalar>
std::complex<Scalar> quasistatic_sphere_alpha(const std::complex<Scalar>& eps, Scalar a)
{
    const auto denom = eps + Scalar(2);
    if (denom == std::complex<Scalar>(0)) throw PoleError("quasistatic_sphere_alpha: eps = -2 (lossless plasmon pole)");
    return a * a * a * (eps - Scalar(1)) / denom;
}

/// Depolarization factor of an oblate spheroid for field along an equatorial
/// axis, aspect ratio eta = c/a in (0, 1]. L(1) = 1/3, L ~ (pi/4) eta as eta -> 0.
template <typename Scalar>
Scalar oblate_depolarization_equatorial(Scalar eta)
{
    if (!(eta > Scalar(0)) || eta > Scalar(1)) throw DomainError("oblate_depolarization_equatorial: eta must be in (0, 1]");
    if (eta == Scalar(1)) return Scalar(1) / Scalar(3);
    const Scalar e2 = (Scalar(1) - eta) * (Scalar(1) + eta);
    if (e2 < Scalar(1e-2)) {
        // Near-sphere series in e^2; the closed form cancels catastrophically here.
        return Scalar(1) / Scalar(3)
            - e2 * (Scalar(1) / Scalar(15)
            + e2 * (Scalar(4) / Scalar(105)
            + e2 * (Scalar(8) / Scalar(315)
            + e2 * (Scalar(64) / Scalar(3465)
            + e2 * (Scalar(128) / Scalar(9009))))));
    }
    const Scalar g = eta / std::sqrt(e2);
    const Scalar half_pi = PhysicalConstants<Scalar>::pi / Scalar(2);
    return g / (Scalar(2) * e2) * (half_pi - std::atan(g)) - g * g / Scalar(2);
}

/// Depolarization factor along the symmetry axis, 1 - 2 L_equatorial.
template <typename Scalar>
Scalar oblate_depolarization_axial(Scalar eta)
{
    return Scalar(1) - Scalar(2) * oblate_depolarization_equatorial(eta);
}

/// Quasistatic polarizability of an ellipsoid of volume-equivalent prefactor
/// a^3 eta / 3 along an axis with depolarization factor L.
template <typename Scalar>
std::complex<Scalar> quasistatic_ellipsoid_alpha(const std::complex<Scalar>& eps, Scalar a, Scalar eta, Scalar L)
{
    const auto denom = Scalar(1) + L * (eps - Scalar(1));
    if (denom == std::complex<Scalar>(0)) throw PoleError("quasistatic_ellipsoid_alpha: 1 + L (eps - 1) = 0");
    return a * a * a * eta / Scalar(3) * (eps - Scalar(1)) / denom;
}

template <typename Scalar>
std::complex<Scalar> quasistatic_spheroid_alpha_equatorial(const std::complex<Scalar>& eps, Scalar a, Scalar eta)
{
    return quasistatic_ellipsoid_alpha(eps, a, eta, oblate_depolarization_equatorial(eta));
}

template <typename Scalar>
std::complex<Scalar> quasistatic_spheroid_alpha_axial(const std::complex<Scalar>& eps, Scalar a, Scalar eta)
{
    return quasistatic_ellipsoid_alpha(eps, a, eta, oblate_depolarization_axial(eta));
}

/// Radiative-reaction strength 2 omega^3 / 3 c^3 (cm^-3).
template <typename Scalar>
Scalar radiative_reaction_coefficient(Scalar omega)
{
    const Scalar k = omega / PhysicalConstants<Scalar>::c;
    return Scalar(2) * k * k * k / Scalar(3);
}

/// alpha = alpha_qs / (1 - i (2 omega^3 / 3 c^3) alpha_qs).
template <typename Scalar>
std::complex<Scalar> radiation_reaction_correct(const std::complex<Scalar>& alpha_qs, Scalar omega)
{
    const std::complex<Scalar> i(Scalar(0), Scalar(1));
    return alpha_qs / (Scalar(1) - i * radiative_reaction_coefficient(omega) * alpha_qs);
}

/// Im(alpha) - (2 omega^3 / 3 c^3) |alpha|^2 for an already-corrected alpha.
template <typename Scalar>
Scalar absorption_from_alpha(const std::complex<Scalar>& alpha, Scalar omega)
{
    return alpha.imag() - radiative_reaction_coefficient(omega) * std::norm(alpha);
}

// ---------------------------------------------------------------------------
// Geometry

class ParticleGeometry {
public:
    enum class Shape { sphere, oblate_spheroid };

    static ParticleGeometry sphere(double radius_cm, double density_g_cm3);
    /// `radius_cm` is the equatorial radius, eta = polar / equatorial.
    static ParticleGeometry oblate_spheroid(double radius_cm, double eta, double density_g_cm3);

    Shape shape() const { return shape_; }
    double radius() const { return a_; }
    double aspect_ratio() const { return eta_; }
    double density() const { return density_; }
    double equatorial_depolarization() const { return oblate_depolarization_equatorial(eta_); }
    double axial_depolarization() const { return oblate_depolarization_axial(eta_); }
    double volume() const { return 4.0 / 3.0 * Constants::pi * a_ * a_ * a_ * eta_; }

private:
    ParticleGeometry(Shape s, double a, double eta, double rho);
    Shape shape_;
    double a_;
    double eta_;
    double density_;
};

// ---------------------------------------------------------------------------
// Polarizability bundles

/// Quasistatic polarizability for omega >= 0, including the omega = 0 limit.
using AlphaFunction = std::function<Complex(double)>;

struct WeightedAlpha {
    double weight;
    AlphaFunction alpha;
};

/// Weighted sum of polarizability functions; weights must be non-negative and
/// sum to 1.
AlphaFunction orientation_average(std::vector<WeightedAlpha> components);

/// Lab-frame polarizability of a particle spinning at Omega about z.
/// a_yy = a_xx and a_yx = -a_xy.
struct EffectivePolarizability {
    Complex axx;
    Complex axy;
    Complex azz;

    Eigen::Matrix3cd tensor() const;
};

/// Perpendicular and parallel polarizabilities of one particle, with
/// alpha(-omega) = conj(alpha(omega)) applied on every evaluation.
class PolarizabilitySpec {
public:
    PolarizabilitySpec(ParticleGeometry geometry, AlphaFunction alpha_perp, AlphaFunction alpha_par,
                       bool radiative_correction,
                       double max_frequency = std::numeric_limits<double>::infinity(),
                       AboveGridPolicy above_grid = AboveGridPolicy::truncate);

    const ParticleGeometry& geometry() const { return geometry_; }
    bool radiative_correction() const { return radiative_correction_; }
    /// Highest |omega| at which alpha is defined.
    double max_frequency() const { return max_frequency_; }
    AboveGridPolicy above_grid_policy() const { return above_grid_; }

    PolarizabilitySpec with_radiative_correction(bool on) const;

    /// Quasistatic (uncorrected) alpha_l(omega).
    Complex quasistatic(Polarization l, double omega) const;
    /// alpha_l(omega), radiatively corrected when the flag is on.
    Complex alpha(Polarization l, double omega) const;
    /// g_l(omega): Im alpha - (2 omega^3/3c^3)|alpha|^2 with correction, Im alpha without.
    double g(Polarization l, double omega) const;
    /// dg_l/domega at omega = 0, estimated from the odd function as g(probe)/probe.
    double g_slope_at_zero(Polarization l, double probe) const;

private:
    ParticleGeometry geometry_;
    AlphaFunction perp_;
    AlphaFunction par_;
    bool radiative_correction_;
    double max_frequency_;
    AboveGridPolicy above_grid_;
};

/// Clausius-Mossotti (sphere) or ellipsoid quasistatic response built from
/// the material permittivity. Tabulated materials are orientation-averaged at
/// the polarizability level.
PolarizabilitySpec clausius_mossotti(const ParticleGeometry& geometry, const MaterialModel& material,
                                     bool radiative_correction = true);

/// Low-frequency Drude response, alpha = (a^3 eta / 3) [1/L + i omega / (4 pi sigma0 L^2)]
/// per axis. For a sphere this is a^3 (1 + 3 i omega / 4 pi sigma0), whose
/// imaginary part is exactly 3 omega a^3 / 4 pi sigma0.
PolarizabilitySpec drude_low_frequency(const ParticleGeometry& geometry, double sigma0,
                                       bool radiative_correction = true);

EffectivePolarizability effective_polarizability(const PolarizabilitySpec& spec, double omega, double Omega);

} // namespace vacfric
