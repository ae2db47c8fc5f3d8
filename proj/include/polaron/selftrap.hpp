#pragma once

#include <optional>

#include "polaron/model.hpp"

namespace polaron::selftrap {

// Gaussian variational energy of a self-trapped impurity, g n0 units:
//   E(sigma) = (m_b/m_a) [ (D/4)(xi/sigma)^2 - alpha' G(0, sigma) ]
// with alpha' = (|kappa|/g)(m_a/m_b) alpha. mass_ratio = m_b / m_a.
double variational_energy(double sigma_over_xi, double alpha_prime,
                          double mass_ratio, int dimension);

// alpha' from the physical parameters.
double alpha_prime(const model::SystemParams& params, const model::DerivedScales& scales);

struct SelfTrapResult {
    bool bound = false;
    std::optional<double> sigma_star;  // sigma*/xi, present iff bound
    double energy_min = 0.0;           // E(sigma*) in g n0 units, bound only
    double alpha_prime = 0.0;
    int dimension = 1;
    bool boundary_ambiguous = false;   // grid minimum sat at a scan endpoint
};

// Log-grid scan of E(sigma) over sigma/xi in [0.05, 1e3] (ceiling 1e5 in 2D,
// where sigma* diverges at threshold) plus golden-section refinement.
SelfTrapResult minimize_energy(double alpha_prime, double mass_ratio, int dimension);

// Critical coupling for self-trapping: 0 in 1D (always bound), bisected on
// the bound/unbound predicate in 2D/3D (bracket width < 1e-3 relative).
double critical_alpha(int dimension);

}  // namespace polaron::selftrap
