#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>

#include "vacfric/errors.hpp"

namespace vacfric {

template <typename Scalar>
struct RootResult {
    Scalar root;
    Scalar f_root;
    Scalar lo, hi; // final bracket
    std::size_t iterations;
};

/// Brent's method (inverse quadratic / secant steps safeguarded by bisection)
/// on a sign-changing bracket. Stops when the half-bracket is below
/// (2 eps + rel_tol / 2) |x| + x_tol / 2 or f vanishes.
template <typename Scalar, typename F>
RootResult<Scalar> brent_root(F&& f, Scalar a, Scalar b, Scalar fa, Scalar fb, Scalar x_tol, Scalar rel_tol = Scalar(0),
                              std::size_t max_iter = 200)
{
    if ((fa > 0 && fb > 0) || (fa < 0 && fb < 0)) throw BracketError("brent_root: no sign change on the bracket");
    constexpr Scalar eps = std::numeric_limits<Scalar>::epsilon();
    if (fa == Scalar(0)) return {a, fa, a, a, 0};
    if (fb == Scalar(0)) return {b, fb, b, b, 0};

    Scalar c = a, fc = fa;
    Scalar d = b - a, e = d;
    for (std::size_t iter = 1; iter <= max_iter; ++iter) {
        if ((fb > 0 && fc > 0) || (fb < 0 && fc < 0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const Scalar tol = (Scalar(2) * eps + Scalar(0.5) * rel_tol) * std::abs(b) + Scalar(0.5) * x_tol;
        const Scalar m = Scalar(0.5) * (c - b);
        if (std::abs(m) <= tol || fb == Scalar(0))
            return {b, fb, std::min(b, c), std::max(b, c), iter};

        if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
            Scalar p, q;
            const Scalar s = fb / fa;
            if (a == c) {
                p = Scalar(2) * m * s;
                q = Scalar(1) - s;
            } else {
                const Scalar qq = fa / fc;
                const Scalar r = fb / fc;
                p = s * (Scalar(2) * m * qq * (qq - r) - (b - a) * (r - Scalar(1)));
                q = (qq - Scalar(1)) * (r - Scalar(1)) * (s - Scalar(1));
            }
            if (p > 0) q = -q;
            else p = -p;
            if (Scalar(2) * p < std::min(Scalar(3) * m * q - std::abs(tol * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol ? d : (m > 0 ? tol : -tol);
        fb = f(b);
    }
    throw BracketError("brent_root: iteration limit reached");
}

template <typename Scalar>
struct MaximumResult {
    Scalar x;
    Scalar fx;
    std::size_t iterations;
};

/// Golden-section search for the maximum of a unimodal f on [a, b] until the
/// bracket is below rel_tol |x|.
template <typename Scalar, typename F>
MaximumResult<Scalar> golden_section_maximize(F&& f, Scalar a, Scalar b, Scalar rel_tol, std::size_t max_iter = 500)
{
    const Scalar inv_phi = (std::sqrt(Scalar(5)) - Scalar(1)) / Scalar(2);
    Scalar x1 = b - inv_phi * (b - a);
    Scalar x2 = a + inv_phi * (b - a);
    Scalar f1 = f(x1);
    Scalar f2 = f(x2);
    std::size_t iter = 0;
    while (iter < max_iter && (b - a) > rel_tol * std::abs(Scalar(0.5) * (a + b))) {
        ++iter;
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    return f1 > f2 ? MaximumResult<Scalar>{x1, f1, iter} : MaximumResult<Scalar>{x2, f2, iter};
}

} // namespace vacfric
