#include "polaron/selftrap.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "polaron/coupling.hpp"

namespace polaron::selftrap {

double variational_energy(double sigma_over_xi, double alpha_prime,
                          double mass_ratio, int dimension)
{
    if (sigma_over_xi <= 0.0)
        throw std::invalid_argument("variational_energy: requires sigma > 0");
    if (mass_ratio <= 0.0)
        throw std::invalid_argument("variational_energy: requires mass_ratio > 0");
    const double kinetic = 0.25 * dimension / (sigma_over_xi * sigma_over_xi);
    const double binding =
        alpha_prime * coupling::g_function(0.0, sigma_over_xi, dimension);
    return mass_ratio * (kinetic - binding);
}

double alpha_prime(const model::SystemParams& params, const model::DerivedScales& scales)
{
    const auto validity = model::validity_alpha(params, scales);
    return std::fabs(params.kappa_over_g) *
           (params.impurity_mass / params.boson_mass) * validity.alpha;
}

namespace {

// Golden-section minimization in log sigma.
double golden_minimize(double lo, double hi, double alpha_prime, double mass_ratio,
                       int dimension)
{
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = std::log(lo), b = std::log(hi);
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    auto f = [&](double x) {
        return variational_energy(std::exp(x), alpha_prime, mass_ratio, dimension);
    };
    double fc = f(c), fd = f(d);
    while (b - a > 1e-10) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    return std::exp(0.5 * (a + b));
}

}  // namespace

SelfTrapResult minimize_energy(double alpha_prime, double mass_ratio, int dimension)
{
    if (dimension < 1 || dimension > 3)
        throw std::invalid_argument("minimize_energy: dimension must be 1, 2 or 3");

    SelfTrapResult result;
    result.alpha_prime = alpha_prime;
    result.dimension = dimension;
    if (alpha_prime <= 0.0) return result;  // kinetic only, unbound

    const double sigma_lo = 0.05;
    // sigma* diverges at the 2D threshold; extend the ceiling there.
    const double sigma_hi = (dimension == 2) ? 1e5 : 1e3;
    const int n_points = (dimension == 2) ? 700 : 400;

    std::vector<double> sigma(n_points), energy(n_points);
    for (int i = 0; i < n_points; ++i) {
        sigma[i] = sigma_lo * std::pow(sigma_hi / sigma_lo,
                                       static_cast<double>(i) / (n_points - 1));
        energy[i] = variational_energy(sigma[i], alpha_prime, mass_ratio, dimension);
    }

    // Bound iff E(sigma) has a finite-sigma minimum; the 3D minimum is
    // metastable (E > 0) right at threshold, so look for interior local
    // minima rather than the global one.
    int best = -1;
    for (int i = 1; i + 1 < n_points; ++i)
        if (energy[i] < energy[i - 1] && energy[i] < energy[i + 1] &&
            (best < 0 || energy[i] < energy[best]))
            best = i;

    if (best < 0) {
        int lowest = 0;
        for (int i = 1; i < n_points; ++i)
            if (energy[i] < energy[lowest]) lowest = i;
        result.boundary_ambiguous =
            (lowest == 0 || lowest == n_points - 1) && energy[lowest] < 0.0;
        return result;  // no interior minimum on the scan: unbound
    }

    const double sigma_star =
        golden_minimize(sigma[best - 1], sigma[best + 1], alpha_prime, mass_ratio, dimension);
    result.bound = true;
    result.sigma_star = sigma_star;
    result.energy_min = variational_energy(sigma_star, alpha_prime, mass_ratio, dimension);
    return result;
}

double critical_alpha(int dimension)
{
    if (dimension == 1) return 0.0;  // bound for arbitrarily small coupling
    if (dimension != 2 && dimension != 3)
        throw std::invalid_argument("critical_alpha: dimension must be 1, 2 or 3");

    auto bound_at = [&](double alpha) {
        return minimize_energy(alpha, 1.0, dimension).bound;
    };
    double lo = (dimension == 2) ? 1.0 : 10.0;
    double hi = (dimension == 2) ? 20.0 : 60.0;
    if (bound_at(lo) || !bound_at(hi))
        throw std::runtime_error("critical_alpha: bracket does not straddle the threshold");
    while (hi - lo > 1e-4 * hi) {
        const double mid = 0.5 * (lo + hi);
        (bound_at(mid) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace polaron::selftrap
