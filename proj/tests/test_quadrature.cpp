#include <doctest.h>

#include <cmath>

#include "polaron/constants.hpp"
#include "polaron/quadrature.hpp"

using namespace polaron;
using constants::pi;

TEST_SUITE("quadrature") {

TEST_CASE("Gauss-Legendre nodes integrate polynomials exactly")
{
    for (int n : {2, 8, 16, 32}) {
        const auto& rule = quadrature::gauss_legendre(n);
        REQUIRE(rule.nodes.size() == static_cast<std::size_t>(n));
        double w_sum = 0.0;
        for (double w : rule.weights) w_sum += w;
        CHECK(w_sum == doctest::Approx(2.0).epsilon(1e-14));
        // Exact through degree 2n-1: check x^(2n-2) on [-1, 1].
        double moment = 0.0;
        for (int i = 0; i < n; ++i)
            moment += rule.weights[i] * std::pow(rule.nodes[i], 2 * n - 2);
        CHECK(moment == doctest::Approx(2.0 / (2 * n - 1)).epsilon(1e-12));
    }
}

TEST_CASE("composite integration of smooth functions")
{
    CHECK(quadrature::integrate([](double x) { return std::exp(x); }, 0.0, 1.0, 4) ==
          doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
    CHECK(quadrature::integrate([](double x) { return 1.0 / (1.0 + x * x); }, 0.0, 1.0, 8) ==
          doctest::Approx(pi / 4.0).epsilon(1e-14));
}

TEST_CASE("oscillatory integration with half-period panels")
{
    // int_0^L cos(w x) dx = sin(w L)/w over many periods.
    const double w = 37.0, L = 25.0;
    const double ref = std::sin(w * L) / w;
    CHECK(quadrature::integrate_oscillatory([w](double x) { return std::cos(w * x); }, 0.0, L,
                                            pi / w) == doctest::Approx(ref).epsilon(1e-11));
    // Damped oscillation: int_0^inf e^{-x} cos(10x) = 1/101.
    CHECK(quadrature::integrate_oscillatory(
              [](double x) { return std::exp(-x) * std::cos(10.0 * x); }, 0.0, 40.0,
              pi / 10.0) == doctest::Approx(1.0 / 101.0).epsilon(1e-12));
}

}  // TEST_SUITE
