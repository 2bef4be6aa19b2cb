#pragma once

// Complex permittivity of the particle material: the Drude model or
// tabulated optical data with log-log interpolation and a Drude tail below
// the tabulated range.

#include <complex>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "vacfric/constants.hpp"

namespace vacfric {

using Complex = std::complex<double>;

/// epsilon = 1 + i 4 pi sigma0 / omega. Negative omega returns the complex
/// conjugate of the value at |omega|.
template <typename Scalar>
std::complex<Scalar> drude_permittivity(Scalar omega, Scalar sigma0)
{
    if (omega == Scalar(0))
        throw SingularityError("drude_permittivity: omega = 0 is singular; use the Im(alpha) limit form");
    const Scalar im = Scalar(4) * PhysicalConstants<Scalar>::pi * sigma0 / std::abs(omega);
    return {Scalar(1), omega > Scalar(0) ? im : -im};
}

struct DrudeModel {
    double sigma0; // Gaussian conductivity, s^-1

    explicit DrudeModel(double sigma0_gaussian);
    Complex permittivity(double omega) const { return drude_permittivity(omega, sigma0); }
};

enum class CrystalOrientation { E_perp_c, E_par_c, isotropic };

std::string to_string(CrystalOrientation o);
CrystalOrientation parse_orientation(const std::string& s);

/// Measured eps(omega) on a strictly increasing angular-frequency grid.
struct PermittivityTable {
    std::string label;
    CrystalOrientation orientation = CrystalOrientation::isotropic;
    std::optional<double> radius_nm;
    Eigen::ArrayXd grid;   // rad/s
    Eigen::ArrayXd eps_re;
    Eigen::ArrayXd eps_im;

    /// Throws FormatError / ValidationError when the invariants are broken.
    void validate() const;
    double min_frequency() const { return grid[0]; }
    double max_frequency() const { return grid[grid.size() - 1]; }
    Eigen::Index size() const { return grid.size(); }
};

/// Reads the '#'-annotated CSV format (photon energy in eV, Re eps, Im eps).
PermittivityTable load_permittivity_table(std::istream& in);
PermittivityTable load_permittivity_table(const std::filesystem::path& path);

/// Writes a table in the same format; energies are printed with round-trip
/// precision.
void write_permittivity_table(std::ostream& out, const PermittivityTable& table);

/// Interpolated eps at omega > 0. Inside the grid Im eps is interpolated in
/// log-log (linear when an endpoint is zero) and Re eps linearly in log omega.
/// Below the grid Im eps follows a 1/omega tail and Re eps is held. Above the
/// grid a RangeError is thrown.
Complex interpolate_permittivity(const PermittivityTable& table, double omega);

/// Same as interpolate_permittivity but accepts any omega != 0 and applies
/// eps(-omega) = conj(eps(omega)).
Complex table_permittivity(const PermittivityTable& table, double omega);

struct DrudeFit {
    double sigma0;       // s^-1
    double residual_rms; // relative RMS spread of omega Im(eps) / 4 pi over the window
    bool flagged;        // residual above 1e-2: data is not Drude-like in the window
    std::size_t nodes;
};

/// Least-squares sigma0 from the nodes inside [omega_lo, omega_hi].
DrudeFit fit_drude_sigma(const PermittivityTable& table, double omega_lo, double omega_hi);

enum class AboveGridPolicy {
    truncate, // integrals stop at the highest tabulated frequency
    error,    // integrals that need frequencies above the grid fail
};

struct ExtrapolationPolicy {
    // Below the grid a 1/omega Drude tail is always used for Im eps.
    AboveGridPolicy above_grid = AboveGridPolicy::truncate;
};

struct TabulatedMaterial {
    std::vector<PermittivityTable> tables;
    std::vector<double> weights; // orientation weights, sum to 1
};

class MaterialModel {
public:
    using Variant = std::variant<DrudeModel, TabulatedMaterial>;

    static MaterialModel drude(double sigma0_gaussian);

    /// Default weights: a single table gets 1; an (E_perp_c, E_par_c) pair gets
    /// (2/3, 1/3); anything else is weighted equally.
    static MaterialModel tabulated(std::vector<PermittivityTable> tables,
                                   std::vector<double> weights = {},
                                   ExtrapolationPolicy policy = {});

    const Variant& variant() const { return variant_; }
    const ExtrapolationPolicy& extrapolation() const { return policy_; }
    bool is_drude() const { return std::holds_alternative<DrudeModel>(variant_); }

    /// Highest frequency at which every component is defined (inf for Drude).
    double max_frequency() const;

private:
    MaterialModel(Variant v, ExtrapolationPolicy p) : variant_(std::move(v)), policy_(p) {}
    Variant variant_;
    ExtrapolationPolicy policy_;
};

std::vector<double> default_orientation_weights(const std::vector<PermittivityTable>& tables);

} // namespace vacfric
