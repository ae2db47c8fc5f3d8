#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "polaron/bogoliubov.hpp"
#include "polaron/model.hpp"

namespace polaron::coupling {

// Dimensionless coupling context; all lengths in units of xi, energies g n0.
struct Context {
    double sigma_over_xi = 0.0;
    double kappa_over_g = 0.0;
    double d_over_xi = 0.0;
    int dimension = 1;
};

// Gaussian form factor f(q) = exp(-q^2 sigma^2/4) exp(i q r), without the
// 1/sqrt(Omega) normalization (absorbed into quadrature weights).
std::complex<double> form_factor(double q, double sigma_over_xi, double r_over_xi);

// Thermodynamic-limit density of |M_{0,q}|^2: small-q ~ |f|^2/q (acoustic),
// large-q ~ |f|^2/q^4. Rejects q = 0.
double coupling_density(double q, const Context& ctx);

// BEC response Green's function; 1D 0.5 e^{-2|r|}, 2D K0(2|r|)/pi,
// 3D e^{-2|r|}/(2 pi |r|). Rejects r = 0 in 2D/3D.
double green_function(double r_over_xi, int dimension);

// Gaussian-smeared Green's function G(r, sigma): closed forms at r = 0,
// momentum-space quadrature otherwise; G(r, 0) = green_function(r).
double g_function(double r_over_xi, double sigma_over_xi, int dimension);

// Direct quadrature route for any (r, sigma > 0); independent of the r = 0
// closed forms, used as their cross-check.
double g_function_quadrature(double r_over_xi, double sigma_over_xi, int dimension);

// V(r) = 2 (kappa/g)^2 (d/xi)^D G(r, sigma) in g n0 units; V(0) = 2 E_p.
double interaction_potential(double r_over_xi, const Context& ctx);

// E_p = (kappa/g)^2 (d/xi)^D G(0, sigma) in g n0 units.
double polaronic_shift(const Context& ctx);

// Same in nK, using the SI interaction energy from the derived scales.
double polaronic_shift_nk(const Context& ctx, const model::DerivedScales& scales);

// J~/J = exp{-Sum m(q)[1-cos(q a)](2N+1)} over the grid; in (0, 1].
double effective_hopping(const bogoliubov::PhononGrid& grid, double a_over_xi);

// Condensate deformation along a line through the impurities, in units of
// kappa/(g sqrt(n0) xi^D). Each site is (position/xi, occupation).
std::vector<double> deformation_profile(const std::vector<std::pair<double, double>>& sites,
                                        const std::vector<double>& positions,
                                        const Context& ctx);

// Polaron band relative to the band center: E(k) = -2 J~ cos(k a).
double polaron_band(double k_times_a, double effective_hopping_j);

struct CouplingTable {
    double polaronic_shift_gn0 = 0.0;
    double polaronic_shift_nk = 0.0;
    double effective_hopping_factor = 1.0;  // J~/J at `temperature`
    double temperature_gn0 = 0.0;
    std::vector<std::pair<double, double>> potential;  // (r/xi, V in g n0)
    double alpha = 0.0;
    bool validity_warning = false;
};

Context make_context(const model::SystemParams& params, const model::DerivedScales& scales);

// Builds E_p, J~/J at the configured temperature and V(r) samples.
CouplingTable build_coupling_table(const model::SystemParams& params,
                                   const model::DerivedScales& scales,
                                   const std::vector<double>& separations_over_xi);

}  // namespace polaron::coupling
