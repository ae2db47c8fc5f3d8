#pragma once

// Special functions implemented in-repo so the numerical core carries no
// external dependencies. Accuracy targets: erfc/Ei better than 1e-10
// (relative), Bessel functions better than 1e-8.

namespace polaron::specfun {

// Complementary error function for x >= 0. Series for small arguments,
// Lentz continued fraction beyond.
double erfc(double x);

// Scaled complement erfcx(x) = e^{x^2} erfc(x), x >= 0; stays finite for
// large x where the product of the factors over/underflows.
double erfcx(double x);

// Exponential integral Ei(x) for x < 0 and the principal-value extension
// for x > 0 (series + continued fraction).
double expint_ei(double x);

// E1(x) = -Ei(-x) for x > 0.
double expint_e1(double x);

// Scaled integral e^x E1(x), x > 0; finite for arbitrarily large x.
double expint_e1_scaled(double x);

// Bessel function of the first kind, order zero.
double bessel_j0(double x);

// Modified Bessel function of the second kind, order zero (x > 0).
double bessel_k0(double x);

// Modified Bessel function of the first kind, integer order n >= 0.
double bessel_i(int n, double x);

// Spherical Bessel function j0(x) = sin(x)/x, stable near zero.
double sph_bessel_j0(double x);

// Generalized Laguerre polynomial L_n^k(x), n >= 0, k >= 0.
double laguerre(int n, int k, double x);

}  // namespace polaron::specfun
