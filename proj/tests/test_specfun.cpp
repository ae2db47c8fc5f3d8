#include <doctest.h>

#include <cmath>

#include "polaron/constants.hpp"
#include "polaron/quadrature.hpp"
#include "polaron/specfun.hpp"

using namespace polaron;
using constants::pi;

TEST_SUITE("specfun") {

TEST_CASE("erfc against its integral representation")
{
    // erfc(x) = (2/sqrt(pi)) int_x^inf e^{-t^2} dt, truncated far into the tail.
    for (double x : {0.0, 0.3, 1.0, 2.4, 2.6, 5.0, 10.0}) {
        const double ref = 2.0 / std::sqrt(pi) *
                           quadrature::integrate([](double t) { return std::exp(-t * t); },
                                                 x, x + 30.0, 600);
        CHECK(specfun::erfc(x) == doctest::Approx(ref).epsilon(1e-12));
    }
    CHECK(specfun::erfc(-1.0) == doctest::Approx(2.0 - specfun::erfc(1.0)).epsilon(1e-14));
    CHECK(specfun::erfc(0.0) == doctest::Approx(1.0));
}

TEST_CASE("erfcx stays finite and consistent for large arguments")
{
    for (double x : {0.1, 1.0, 2.4, 2.6, 8.0, 20.0})
        CHECK(specfun::erfcx(x) ==
              doctest::Approx(std::exp(x * x) * specfun::erfc(x)).epsilon(1e-12));
    // Asymptotic tail erfcx(x) ~ 1/(sqrt(pi) x) (1 - 1/(2x^2) + 3/(4x^4)).
    const double x = 1e4;
    const double asym = (1.0 - 0.5 / (x * x)) / (std::sqrt(pi) * x);
    CHECK(specfun::erfcx(x) == doctest::Approx(asym).epsilon(1e-10));
}

TEST_CASE("exponential integrals against quadrature")
{
    // E1(x) = int_x^inf e^{-t}/t dt.
    for (double x : {0.1, 0.5, 1.0, 1.5, 4.0, 20.0}) {
        const double ref = quadrature::integrate([](double t) { return std::exp(-t) / t; },
                                                 x, x + 60.0, 800);
        CHECK(specfun::expint_e1(x) == doctest::Approx(ref).epsilon(1e-11));
        CHECK(specfun::expint_ei(-x) == doctest::Approx(-ref).epsilon(1e-11));
        CHECK(specfun::expint_e1_scaled(x) ==
              doctest::Approx(std::exp(x) * ref).epsilon(1e-11));
    }
    // Scaled version survives arguments where e^x overflows: e^x E1(x) ~ 1/x.
    const double big = 1e8;
    CHECK(specfun::expint_e1_scaled(big) == doctest::Approx(1.0 / big).epsilon(1e-7));
    CHECK_THROWS(specfun::expint_e1(0.0));
}

TEST_CASE("bessel_j0 against the cosine integral representation")
{
    // J0(x) = (1/pi) int_0^pi cos(x sin(theta)) dtheta.
    for (double x : {0.0, 0.5, 3.0, 11.5, 12.5, 30.0, 80.0}) {
        const double ref = quadrature::integrate(
                               [x](double th) { return std::cos(x * std::sin(th)); }, 0.0, pi,
                               400) /
                           pi;
        CHECK(specfun::bessel_j0(x) == doctest::Approx(ref).epsilon(1e-9));
    }
    CHECK(specfun::bessel_j0(-3.0) == doctest::Approx(specfun::bessel_j0(3.0)));
}

TEST_CASE("bessel_k0 against the cosh integral representation")
{
    // K0(x) = int_0^inf e^{-x cosh t} dt.
    for (double x : {0.2, 1.0, 4.0, 7.5, 8.5, 20.0}) {
        const double t_max = std::acosh(750.0 / x);
        const double ref = quadrature::integrate(
            [x](double t) { return std::exp(-x * std::cosh(t)); }, 0.0, t_max, 800);
        CHECK(specfun::bessel_k0(x) == doctest::Approx(ref).epsilon(1e-9));
    }
    CHECK_THROWS(specfun::bessel_k0(0.0));
}

TEST_CASE("bessel_i against its integral representation")
{
    // I_n(x) = (1/pi) int_0^pi e^{x cos th} cos(n th) dth.
    for (int n : {0, 1, 3}) {
        for (double x : {0.3, 2.0, 9.0}) {
            const double ref =
                quadrature::integrate(
                    [&](double th) { return std::exp(x * std::cos(th)) * std::cos(n * th); },
                    0.0, pi, 400) /
                pi;
            CHECK(specfun::bessel_i(n, x) == doctest::Approx(ref).epsilon(1e-11));
        }
    }
}

TEST_CASE("spherical j0")
{
    CHECK(specfun::sph_bessel_j0(0.0) == doctest::Approx(1.0));
    CHECK(specfun::sph_bessel_j0(1e-5) == doctest::Approx(1.0 - 1e-10 / 6.0));
    CHECK(specfun::sph_bessel_j0(2.0) == doctest::Approx(std::sin(2.0) / 2.0));
}

TEST_CASE("generalized Laguerre against explicit low orders")
{
    for (double x : {0.0, 0.4, 2.0}) {
        for (int k : {0, 1, 4}) {
            CHECK(specfun::laguerre(0, k, x) == doctest::Approx(1.0));
            CHECK(specfun::laguerre(1, k, x) == doctest::Approx(1.0 + k - x));
            const double l2 = 0.5 * (x * x - 2.0 * (k + 2.0) * x + (k + 1.0) * (k + 2.0));
            CHECK(specfun::laguerre(2, k, x) == doctest::Approx(l2).epsilon(1e-14));
        }
    }
    // L_n^k obey (n+1) L_{n+1} = (2n+1+k-x) L_n - (n+k) L_{n-1}; check a
    // mid-order value against the closed-form sum for n = 5, k = 2.
    const double x = 1.3;
    double sum = 0.0;
    for (int i = 0; i <= 5; ++i) {
        double binom = 1.0;  // C(n+k, n-i) with n = 5, k = 2
        for (int j = 0; j < 5 - i; ++j) binom *= (7.0 - j) / (5.0 - i - j);
        double xi = 1.0;
        double fact = 1.0;
        for (int j = 1; j <= i; ++j) {
            xi *= -x;
            fact *= j;
        }
        sum += binom * xi / fact;
    }
    CHECK(specfun::laguerre(5, 2, x) == doctest::Approx(sum).epsilon(1e-13));
}

}  // TEST_SUITE
