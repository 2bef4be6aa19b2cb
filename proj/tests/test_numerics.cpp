#include <doctest.h>

#include <cmath>
#include <vector>

#include "vacfric/quadrature.hpp"
#include "vacfric/roots.hpp"

using namespace vacfric;

TEST_CASE("adaptive quadrature on known integrals")
{
    const std::vector<double> pi_range{0.0, std::numbers::pi};
    const auto r = integrate_adaptive_scalar([](double x) { return std::sin(x); }, pi_range, 1e-12);
    CHECK(std::abs(r.value[0] - 2.0) < 1e-12);
    CHECK(r.error[0] < 1e-11);

    // Endpoint singularity.
    const std::vector<double> unit{0.0, 1.0};
    const auto s = integrate_adaptive_scalar([](double x) { return x > 0.0 ? 1.0 / std::sqrt(x) : 0.0; }, unit, 1e-9);
    CHECK(std::abs(s.value[0] - 2.0) < 1e-8);

    // Kink handled by a breakpoint.
    const std::vector<double> kinked{-1.0, 0.3, 2.0};
    const auto k = integrate_adaptive_scalar([](double x) { return std::abs(x - 0.3); }, kinked, 1e-12);
    CHECK(std::abs(k.value[0] - (0.5 * 1.3 * 1.3 + 0.5 * 1.7 * 1.7)) < 1e-12);
    CHECK(k.evaluations == 30);
}

TEST_CASE("vector-valued quadrature shares one subdivision")
{
    const std::vector<double> range{0.0, 1.0};
    auto f = [](double x) { return Eigen::Vector3d(std::exp(x), x * x, std::cos(10.0 * x)); };
    const auto r = integrate_adaptive<3>(f, range, 1e-12, 0.0, 1000);
    CHECK(std::abs(r.value[0] - (std::exp(1.0) - 1.0)) < 1e-12);
    CHECK(std::abs(r.value[1] - 1.0 / 3.0) < 1e-13);
    CHECK(std::abs(r.value[2] - std::sin(10.0) / 10.0) < 1e-12);
    CHECK(r.l1[1] == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("quadrature failure carries the partial result")
{
    const std::vector<double> range{0.0, 1.0};
    auto nasty = [](double x) { return Eigen::Matrix<double, 1, 1>(std::sin(1.0 / (x + 1e-4))); };
    try {
        integrate_adaptive<1>(nasty, range, 1e-12, 0.0, 3);
        FAIL("expected QuadratureError");
    } catch (const QuadratureError& e) {
        CHECK(e.is_numerical());
        CHECK(e.partial().size() == 1);
        CHECK(e.error_estimate()[0] > 0.0);
    }
    const std::vector<double> bad{1.0, 0.0};
    CHECK_THROWS_AS(integrate_adaptive_scalar([](double) { return 1.0; }, bad, 1e-8), DomainError);
}

TEST_CASE("quadrature configuration bounds")
{
    QuadratureConfig c;
    CHECK_NOTHROW(c.validate());
    c.rel_tol = 1e-15;
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c.rel_tol = 1e-8;
    c.cutoff_factor = 5.0;
    CHECK_THROWS_AS(c.validate(), ValidationError);
}

TEST_CASE("brent root")
{
    auto f = [](double x) { return std::cos(x) - x; };
    const auto r = brent_root(f, 0.0, 1.0, f(0.0), f(1.0), 0.0, 1e-14);
    CHECK(std::abs(r.root - 0.7390851332151607) < 1e-14);
    CHECK(r.lo <= r.root);
    CHECK(r.hi >= r.root);

    auto cubic = [](double x) { return (x - 2.0) * (x * x + 1.0); };
    const auto c = brent_root(cubic, -10.0, 10.0, cubic(-10.0), cubic(10.0), 1e-13);
    CHECK(std::abs(c.root - 2.0) < 1e-12);

    CHECK_THROWS_AS(brent_root(cubic, 3.0, 4.0, cubic(3.0), cubic(4.0), 1e-12), BracketError);
    const auto exact = brent_root(cubic, 2.0, 4.0, 0.0, cubic(4.0), 1e-12);
    CHECK(exact.root == 2.0);
}

TEST_CASE("golden section maximum")
{
    const auto m = golden_section_maximize([](double x) { return -(x - 2.5) * (x - 2.5) + 1.0; }, 1.0, 4.0, 1e-10);
    CHECK(std::abs(m.x - 2.5) < 1e-8);
    CHECK(m.fx == doctest::Approx(1.0));
}
