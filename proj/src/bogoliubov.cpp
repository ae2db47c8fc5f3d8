#include "polaron/bogoliubov.hpp"

#include <cmath>
#include <stdexcept>

#include "polaron/coupling.hpp"
#include "polaron/quadrature.hpp"

namespace polaron::bogoliubov {

std::pair<double, double> dispersion(double q)
{
    if (q < 0.0) throw std::invalid_argument("dispersion: requires q >= 0");
    const double eps = 0.5 * q * q;
    return {eps, std::sqrt(eps * (eps + 2.0))};
}

std::pair<double, double> bog_coefficients(double q)
{
    if (q <= 0.0) throw std::invalid_argument("bog_coefficients: requires q > 0");
    const auto [eps, omega] = dispersion(q);
    const double ratio = (eps + 1.0) / omega;
    return {std::sqrt(0.5 * (ratio + 1.0)), -std::sqrt(0.5 * (ratio - 1.0))};
}

double thermal_occupation(double omega, double temperature)
{
    if (omega <= 0.0) throw std::invalid_argument("thermal_occupation: requires omega > 0");
    if (temperature < 0.0) throw std::invalid_argument("thermal_occupation: requires T >= 0");
    if (temperature == 0.0) return 0.0;
    const double x = omega / temperature;
    if (x > 700.0) return 0.0;
    return 1.0 / std::expm1(x);
}

namespace {

constexpr int kPointsPerPanel = 16;

PhononGrid assemble(const GridInputs& in, double q_max, int panels)
{
    PhononGrid grid;
    grid.dimension = in.dimension;
    grid.temperature = in.temperature;
    grid.q_max = q_max;
    grid.points_per_panel = kPointsPerPanel;
    grid.panels = panels;

    const coupling::Context ctx{in.sigma_over_xi, in.kappa_over_g, in.d_over_xi,
                                in.dimension};
    const auto& rule = quadrature::gauss_legendre(kPointsPerPanel);
    const double h = q_max / panels;
    grid.q.reserve(panels * kPointsPerPanel);
    for (int p = 0; p < panels; ++p) {
        const double mid = (p + 0.5) * h;
        for (int i = 0; i < kPointsPerPanel; ++i) {
            const double q = mid + 0.5 * h * rule.nodes[i];
            const double w = 0.5 * h * rule.weights[i];
            const auto [eps, omega] = dispersion(q);
            grid.q.push_back(q);
            grid.weight.push_back(w);
            grid.eps.push_back(eps);
            grid.omega.push_back(omega);
            grid.occupation.push_back(thermal_occupation(omega, in.temperature));
            grid.m.push_back(in.kappa_over_g == 0.0 ? 0.0 : coupling::coupling_density(q, ctx));
        }
    }
    // E_p = Sum hbar omega |M|^2 over the grid.
    double ep = 0.0;
    for (std::size_t i = 0; i < grid.q.size(); ++i)
        ep += grid.weight[i] * grid.m[i] * grid.omega[i];
    grid.polaronic_shift = ep;
    return grid;
}

}  // namespace

PhononGrid build_phonon_grid(const GridInputs& in, double tol, int max_nodes, int min_nodes)
{
    if (in.sigma_over_xi <= 0.0) throw std::invalid_argument("build_phonon_grid: sigma must be > 0");
    if (tol <= 0.0) throw std::invalid_argument("build_phonon_grid: tol must be > 0");
    const double q_max = 6.0 * std::sqrt(2.0) / in.sigma_over_xi;

    int panels = 4;
    PhononGrid grid = assemble(in, q_max, panels);
    bool converged = false;
    while (panels * 2 * kPointsPerPanel <= max_nodes) {
        PhononGrid finer = assemble(in, q_max, panels * 2);
        const double scale = std::max(std::fabs(finer.polaronic_shift), 1e-300);
        const bool ok = std::fabs(finer.polaronic_shift - grid.polaronic_shift) < tol * scale ||
                        (grid.polaronic_shift == 0.0 && finer.polaronic_shift == 0.0);
        panels *= 2;
        grid = std::move(finer);
        if (ok) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw std::runtime_error("build_phonon_grid: E_p did not converge within max node count");
    while (panels * kPointsPerPanel < min_nodes && panels * 2 * kPointsPerPanel <= max_nodes)
        panels *= 2;
    if (panels != grid.panels) grid = assemble(in, q_max, panels);
    return grid;
}

PhononGrid refine_grid(const PhononGrid& grid, const GridInputs& in)
{
    return assemble(in, grid.q_max, grid.panels * 2);
}

}  // namespace polaron::bogoliubov
