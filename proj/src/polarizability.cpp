#include "vacfric/polarizability.hpp"

#include <algorithm>
#include <utility>

namespace vacfric {

ParticleGeometry::ParticleGeometry(Shape s, double a, double eta, double rho)
    : shape_(s), a_(a), eta_(eta), density_(rho)
{
    if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("particle radius must be positive");
    if (!(eta > 0.0) || eta > 1.0) throw DomainError("aspect ratio eta must be in (0, 1]");
    if (!(rho > 0.0) || !std::isfinite(rho)) throw DomainError("particle density must be positive");
}

ParticleGeometry ParticleGeometry::sphere(double radius_cm, double density_g_cm3)
{
    return {Shape::sphere, radius_cm, 1.0, density_g_cm3};
}

ParticleGeometry ParticleGeometry::oblate_spheroid(double radius_cm, double eta, double density_g_cm3)
{
    return {Shape::oblate_spheroid, radius_cm, eta, density_g_cm3};
}

AlphaFunction orientation_average(std::vector<WeightedAlpha> components)
{
    if (components.empty()) throw ValidationError("orientation_average: no components");
    double sum = 0.0;
    for (const auto& c : components) {
        if (!(c.weight >= 0.0)) throw ValidationError("orientation_average: negative weight");
        if (!c.alpha) throw ValidationError("orientation_average: empty polarizability function");
        sum += c.weight;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw ValidationError("orientation_average: weights must sum to 1");
    if (components.size() == 1) return std::move(components.front().alpha);
    return [comps = std::move(components)](double omega) {
        Complex total{0.0, 0.0};
        for (const auto& c : comps) total += c.weight * c.alpha(omega);
        return total;
    };
}

Eigen::Matrix3cd EffectivePolarizability::tensor() const
{
    Eigen::Matrix3cd t = Eigen::Matrix3cd::Zero();
    t(0, 0) = axx;
    t(1, 1) = axx;
    t(0, 1) = axy;
    t(1, 0) = -axy;
    t(2, 2) = azz;
    return t;
}

PolarizabilitySpec::PolarizabilitySpec(ParticleGeometry geometry, AlphaFunction alpha_perp, AlphaFunction alpha_par,
                                       bool radiative_correction, double max_frequency, AboveGridPolicy above_grid)
    : geometry_(geometry),
      perp_(std::move(alpha_perp)),
      par_(std::move(alpha_par)),
      radiative_correction_(radiative_correction),
      max_frequency_(max_frequency),
      above_grid_(above_grid)
{
    if (!perp_ || !par_) throw ValidationError("PolarizabilitySpec: both polarizability functions are required");
    if (!(max_frequency_ > 0.0)) throw ValidationError("PolarizabilitySpec: max_frequency must be positive");
}

PolarizabilitySpec PolarizabilitySpec::with_radiative_correction(bool on) const
{
    PolarizabilitySpec copy = *this;
    copy.radiative_correction_ = on;
    return copy;
}

Complex PolarizabilitySpec::quasistatic(Polarization l, double omega) const
{
    const auto& f = l == Polarization::perpendicular ? perp_ : par_;
    const Complex a = f(std::abs(omega));
    return omega < 0.0 ? std::conj(a) : a;
}

Complex PolarizabilitySpec::alpha(Polarization l, double omega) const
{
    const Complex qs = quasistatic(l, omega);
    return radiative_correction_ ? radiation_reaction_correct(qs, omega) : qs;
}

double PolarizabilitySpec::g(Polarization l, double omega) const
{
    const Complex qs = quasistatic(l, omega);
    if (!radiative_correction_) return qs.imag();
    // Im(alpha) - k|alpha|^2 == Im(alpha_qs) / |1 - i k alpha_qs|^2 exactly for
    // the corrected alpha; this form has no cancellation and vanishes exactly
    // when alpha_qs is real.
    const Complex denom = 1.0 - Complex(0.0, 1.0) * radiative_reaction_coefficient(omega) * qs;
    return qs.imag() / std::norm(denom);
}

double PolarizabilitySpec::g_slope_at_zero(Polarization l, double probe) const
{
    return g(l, probe) / probe;
}

namespace {

// Quasistatic alpha along one axis from eps; omega = 0 uses the eps -> i inf
// limit (or the static real eps when there is no loss).
template <typename EpsFn>
AlphaFunction axis_alpha(const ParticleGeometry& geom, double L, EpsFn eps_at, std::optional<Complex> eps_static)
{
    const double a = geom.radius();
    const double eta = geom.aspect_ratio();
    const bool sphere = geom.shape() == ParticleGeometry::Shape::sphere;
    return [=](double omega) -> Complex {
        if (omega == 0.0) {
            if (!eps_static) return a * a * a * eta / (3.0 * L);
            return sphere ? quasistatic_sphere_alpha(*eps_static, a) : quasistatic_ellipsoid_alpha(*eps_static, a, eta, L);
        }
        const Complex eps = eps_at(omega);
        return sphere ? quasistatic_sphere_alpha(eps, a) : quasistatic_ellipsoid_alpha(eps, a, eta, L);
    };
}

} // namespace

PolarizabilitySpec clausius_mossotti(const ParticleGeometry& geometry, const MaterialModel& material,
                                     bool radiative_correction)
{
    const double L_eq = geometry.shape() == ParticleGeometry::Shape::sphere ? 1.0 / 3.0 : geometry.equatorial_depolarization();
    const double L_ax = geometry.shape() == ParticleGeometry::Shape::sphere ? 1.0 / 3.0 : geometry.axial_depolarization();

    if (const auto* drude = std::get_if<DrudeModel>(&material.variant())) {
        const DrudeModel m = *drude;
        auto eps = [m](double omega) { return m.permittivity(omega); };
        return PolarizabilitySpec(geometry, axis_alpha(geometry, L_eq, eps, std::nullopt),
                                  axis_alpha(geometry, L_ax, eps, std::nullopt), radiative_correction);
    }

    const auto& tab = std::get<TabulatedMaterial>(material.variant());
    std::vector<WeightedAlpha> perp;
    std::vector<WeightedAlpha> par;
    for (std::size_t k = 0; k < tab.tables.size(); ++k) {
        const PermittivityTable& table = tab.tables[k];
        auto eps = [table](double omega) { return interpolate_permittivity(table, omega); };
        std::optional<Complex> eps_static;
        if (!(table.eps_im[0] > 0.0)) eps_static = Complex(table.eps_re[0], 0.0);
        perp.push_back({tab.weights[k], axis_alpha(geometry, L_eq, eps, eps_static)});
        par.push_back({tab.weights[k], axis_alpha(geometry, L_ax, eps, eps_static)});
    }
    return PolarizabilitySpec(geometry, orientation_average(std::move(perp)), orientation_average(std::move(par)),
                              radiative_correction, material.max_frequency(), material.extrapolation().above_grid);
}

PolarizabilitySpec drude_low_frequency(const ParticleGeometry& geometry, double sigma0, bool radiative_correction)
{
    if (!(sigma0 > 0.0)) throw DomainError("drude_low_frequency: sigma0 must be positive");
    const double a = geometry.radius();
    const double eta = geometry.aspect_ratio();
    const bool sphere = geometry.shape() == ParticleGeometry::Shape::sphere;
    auto make = [=](double L) -> AlphaFunction {
        const double pref = a * a * a * eta / 3.0;
        const double re = pref / L;
        const double slope = pref / (4.0 * Constants::pi * sigma0 * L * L);
        return [re, slope](double omega) { return Complex(re, slope * omega); };
    };
    if (sphere) {
        // a^3 (1 + 3 i omega / 4 pi sigma0), written directly so Im alpha is
        // bit-for-bit the textbook expression.
        const double a3 = a * a * a;
        auto f = [a3, sigma0](double omega) {
            return Complex(a3, 3.0 * omega * a3 / (4.0 * Constants::pi * sigma0));
        };
        return PolarizabilitySpec(geometry, f, f, radiative_correction);
    }
    return PolarizabilitySpec(geometry, make(geometry.equatorial_depolarization()),
                              make(geometry.axial_depolarization()), radiative_correction);
}

EffectivePolarizability effective_polarizability(const PolarizabilitySpec& spec, double omega, double Omega)
{
    const Complex plus = spec.alpha(Polarization::perpendicular, omega + Omega);
    const Complex minus = spec.alpha(Polarization::perpendicular, omega - Omega);
    return {0.5 * (plus + minus), Complex(0.0, 0.5) * (plus - minus), spec.alpha(Polarization::parallel, omega)};
}

} // namespace vacfric
