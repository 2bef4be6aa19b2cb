#pragma once

// Globally adaptive 7/15-point Gauss-Kronrod quadrature for vector-valued
// integrands. All components share the same subdivision, so related
// integrals (torque and power, for instance) are computed in one pass.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "vacfric/errors.hpp"

namespace vacfric {

struct QuadratureConfig {
    double rel_tol = 1e-8;
    double abs_floor = 0.0;       // absolute error accepted regardless of rel_tol
    double cutoff_factor = 40.0;  // C in omega_cut = Omega + C max(theta0, theta1, Omega / C)
    std::size_t max_subdivisions = 4000;

    /// rel_tol in (1e-14, 1e-2), cutoff_factor >= 10, abs_floor >= 0.
    void validate() const;
};

inline void QuadratureConfig::validate() const
{
    if (!(rel_tol > 1e-14 && rel_tol < 1e-2)) throw ValidationError("QuadratureConfig: rel_tol must lie in (1e-14, 1e-2)");
    if (!(cutoff_factor >= 10.0)) throw ValidationError("QuadratureConfig: cutoff_factor must be >= 10");
    if (!(abs_floor >= 0.0)) throw ValidationError("QuadratureConfig: abs_floor must be >= 0");
    if (max_subdivisions == 0) throw ValidationError("QuadratureConfig: max_subdivisions must be positive");
}

template <int N>
struct QuadratureResult {
    using Vector = Eigen::Matrix<double, N, 1>;
    Vector value;
    Vector error;  // absolute error estimate per component
    Vector l1;     // integral of |f| per component
    std::size_t evaluations = 0;
    std::size_t intervals = 0;
};

/// Thrown when the error target is not met within the subdivision budget.
/// Carries the partial result.
class QuadratureError : public Error {
public:
    QuadratureError(const std::string& what, Eigen::VectorXd partial, Eigen::VectorXd error)
        : Error(what, true), partial_(std::move(partial)), error_(std::move(error)) {}
    const Eigen::VectorXd& partial() const { return partial_; }
    const Eigen::VectorXd& error_estimate() const { return error_; }

private:
    Eigen::VectorXd partial_;
    Eigen::VectorXd error_;
};

namespace detail {

// Kronrod abscissae (descending, last is the centre) and weights; the Gauss
// weights belong to the odd-indexed Kronrod nodes.
inline constexpr std::array<double, 8> gk15_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> gk15_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> g7_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <int N>
struct Panel {
    using Vector = Eigen::Matrix<double, N, 1>;
    double lo, hi;
    Vector value, error, l1;
};

template <int N, typename F>
Panel<N> gk15(F& f, double lo, double hi, Eigen::Index dim)
{
    using Vector = Eigen::Matrix<double, N, 1>;
    const double centre = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);

    const Vector fc = f(centre);
    Vector kronrod = gk15_weights[7] * fc;
    Vector gauss = g7_weights[3] * fc;
    Vector abs_sum = gk15_weights[7] * fc.cwiseAbs();
    std::array<Vector, 15> samples;
    samples[7] = fc;

    for (int j = 0; j < 7; ++j) {
        const double dx = half * gk15_nodes[j];
        const Vector f1 = f(centre - dx);
        const Vector f2 = f(centre + dx);
        samples[j] = f1;
        samples[14 - j] = f2;
        kronrod += gk15_weights[j] * (f1 + f2);
        abs_sum += gk15_weights[j] * (f1.cwiseAbs() + f2.cwiseAbs());
        if (j % 2 == 1) gauss += g7_weights[j / 2] * (f1 + f2);
    }

    const Vector mean = 0.5 * kronrod;
    Vector asc = gk15_weights[7] * (fc - mean).cwiseAbs();
    for (int j = 0; j < 7; ++j)
        asc += gk15_weights[j] * ((samples[j] - mean).cwiseAbs() + (samples[14 - j] - mean).cwiseAbs());

    Panel<N> p{lo, hi, kronrod * half, Vector(dim), abs_sum * std::abs(half)};
    asc *= std::abs(half);
    const Vector diff = ((kronrod - gauss) * half).cwiseAbs();
    constexpr double eps = std::numeric_limits<double>::epsilon();
    for (Eigen::Index i = 0; i < dim; ++i) {
        double err = diff[i];
        if (asc[i] != 0.0 && err != 0.0) err = asc[i] * std::min(1.0, std::pow(200.0 * err / asc[i], 1.5));
        err = std::max(err, 50.0 * eps * p.l1[i]);
        p.error[i] = err;
    }
    return p;
}

} // namespace detail

/// Integrates f over [points.front(), points.back()] with the interior points
/// as fixed breakpoints. Converged when every component satisfies
/// error <= max(abs_floor, rel_tol |value|, 64 eps l1).
template <int N, typename F>
QuadratureResult<N> integrate_adaptive(F&& f, std::span<const double> points, double rel_tol, double abs_floor,
                                       std::size_t max_subdivisions, Eigen::Index dim = N)
{
    using Vector = Eigen::Matrix<double, N, 1>;
    if (points.size() < 2) throw DomainError("integrate_adaptive: need at least two points");
    for (std::size_t i = 1; i < points.size(); ++i)
        if (!(points[i] > points[i - 1])) throw DomainError("integrate_adaptive: breakpoints must be strictly increasing");

    std::size_t evaluations = 0;
    auto counted = [&](double x) -> Vector {
        ++evaluations;
        return f(x);
    };

    std::vector<detail::Panel<N>> panels;
    panels.reserve(points.size() + max_subdivisions);
    for (std::size_t i = 1; i < points.size(); ++i)
        panels.push_back(detail::gk15<N>(counted, points[i - 1], points[i], dim));

    constexpr double eps = std::numeric_limits<double>::epsilon();
    std::size_t splits = 0;
    while (true) {
        Vector value = Vector::Zero(dim);
        Vector error = Vector::Zero(dim);
        Vector l1 = Vector::Zero(dim);
        for (const auto& p : panels) {
            value += p.value;
            error += p.error;
            l1 += p.l1;
        }
        Vector tol(dim);
        bool done = true;
        for (Eigen::Index i = 0; i < dim; ++i) {
            tol[i] = std::max({abs_floor, rel_tol * std::abs(value[i]), 64.0 * eps * l1[i]});
            if (error[i] > tol[i]) done = false;
        }
        if (done) return {value, error, l1, evaluations, panels.size()};

        // Split the panel contributing the largest share of a violated budget.
        std::size_t worst = panels.size();
        double worst_score = 0.0;
        for (std::size_t k = 0; k < panels.size(); ++k) {
            const auto& p = panels[k];
            const double mid = 0.5 * (p.lo + p.hi);
            if ((p.hi - p.lo) <= 4.0 * eps * std::max(std::abs(mid), 1e-300)) continue;
            double score = 0.0;
            for (Eigen::Index i = 0; i < dim; ++i) {
                if (error[i] <= tol[i]) continue;
                const double s = tol[i] > 0.0 ? p.error[i] / tol[i] : p.error[i] * 1e300;
                score = std::max(score, s);
            }
            if (score > worst_score) {
                worst_score = score;
                worst = k;
            }
        }
        if (worst == panels.size() || splits >= max_subdivisions) {
            const Eigen::VectorXd partial = value;
            const Eigen::VectorXd err = error;
            throw QuadratureError("integrate_adaptive: tolerance not reached after " + std::to_string(splits) +
                                      " subdivisions",
                                  partial, err);
        }
        const auto old = panels[worst];
        const double mid = 0.5 * (old.lo + old.hi);
        panels[worst] = detail::gk15<N>(counted, old.lo, mid, dim);
        panels.push_back(detail::gk15<N>(counted, mid, old.hi, dim));
        ++splits;
    }
}

/// Scalar convenience wrapper.
template <typename F>
QuadratureResult<1> integrate_adaptive_scalar(F&& f, std::span<const double> points, double rel_tol,
                                              double abs_floor = 0.0, std::size_t max_subdivisions = 4000)
{
    auto wrapped = [&](double x) { return Eigen::Matrix<double, 1, 1>(f(x)); };
    return integrate_adaptive<1>(wrapped, points, rel_tol, abs_floor, max_subdivisions);
}

} // namespace vacfric
