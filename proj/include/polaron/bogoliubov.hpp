#pragma once

#include <utility>
#include <vector>

#include "polaron/model.hpp"

namespace polaron::bogoliubov {

// Dimensionless units throughout: momenta q~ = q xi, energies in g n0.

// (epsilon~, omega~) = (q~^2/2, q~ sqrt(q~^2+4)/2). Rejects q~ < 0.
std::pair<double, double> dispersion(double q);

// Bogoliubov (u, v) amplitudes up to the 1/sqrt(Omega) normalization;
// u^2 - v^2 = 1. Rejects q~ = 0 (divergent).
std::pair<double, double> bog_coefficients(double q);

// Bose occupation N = 1/(e^{omega/T} - 1); N = 0 at T = 0.
double thermal_occupation(double omega, double temperature);

// Quadrature grid over the radial phonon momentum used by all
// thermodynamic-limit sums Sum_{q != 0} -> integral. The coupling density
// m_i is defined so that Sum_{q != 0} |M_{0,q}|^2 F(q~) = Sum_i w_i m_i F(q~_i)
// for isotropic F, in g n0 units.
struct PhononGrid {
    std::vector<double> q;           // nodes, strictly increasing, q_1 > 0
    std::vector<double> weight;
    std::vector<double> eps;
    std::vector<double> omega;
    std::vector<double> occupation;  // N_i at `temperature`
    std::vector<double> m;           // coupling density at the nodes
    double q_max = 0.0;
    int dimension = 1;
    double temperature = 0.0;        // g n0 units
    double polaronic_shift = 0.0;    // E_p from the grid integral, g n0 units
    int points_per_panel = 0;
    int panels = 0;
};

struct GridInputs {
    double sigma_over_xi = 0.0;
    double kappa_over_g = 0.0;
    double d_over_xi = 0.0;
    int dimension = 1;
    double temperature = 0.0;  // g n0 units
};

// Composite Gauss-Legendre grid on [0, q_max] with q_max = 6 sqrt(2) xi/sigma.
// The panel count is doubled until E_p changes by less than `tol` relative;
// fails if convergence needs more than max_nodes nodes. `min_nodes` keeps the
// final grid fine enough for the oscillatory memory-kernel integrands even
// when E_p alone converges on a coarse grid.
PhononGrid build_phonon_grid(const GridInputs& in, double tol = 1e-9,
                             int max_nodes = 16384, int min_nodes = 4096);

// Same inputs, twice the panels; used by refinement oracles.
PhononGrid refine_grid(const PhononGrid& grid, const GridInputs& in);

}  // namespace polaron::bogoliubov
