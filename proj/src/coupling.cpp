#include "polaron/coupling.hpp"

#include <cmath>
#include <stdexcept>

#include "polaron/constants.hpp"
#include "polaron/quadrature.hpp"
#include "polaron/specfun.hpp"

namespace polaron::coupling {

using constants::pi;

namespace {

const double kSqrt2 = std::sqrt(2.0);

// Angular factor S_{D-1}/(2 pi)^D of the radial thermodynamic-limit measure;
// S_0 = 2 counts both half-lines in 1D.
double angular_factor(int dimension)
{
    switch (dimension) {
        case 1: return 1.0 / pi;
        case 2: return 1.0 / (2.0 * pi);
        case 3: return 1.0 / (2.0 * pi * pi);
        default: throw std::invalid_argument("dimension must be 1, 2 or 3");
    }
}

double g_integrand(double y, double r, double sigma, int dimension)
{
    const double gauss = std::exp(-0.5 * y * y * sigma * sigma);
    const double lorentz = 1.0 / (y * y + 4.0);
    switch (dimension) {
        case 1: return 2.0 / pi * std::cos(y * r) * lorentz * gauss;
        case 2: return 1.0 / pi * y * specfun::bessel_j0(y * r) * lorentz * gauss;
        case 3: return 1.0 / (pi * pi) * y * y * specfun::sph_bessel_j0(y * r) * lorentz * gauss;
        default: throw std::invalid_argument("dimension must be 1, 2 or 3");
    }
}

}  // namespace

std::complex<double> form_factor(double q, double sigma_over_xi, double r_over_xi)
{
    if (sigma_over_xi <= 0.0) throw std::invalid_argument("form_factor: sigma must be > 0");
    const double amp = std::exp(-0.25 * q * q * sigma_over_xi * sigma_over_xi);
    return std::polar(amp, q * r_over_xi);
}

double coupling_density(double q, const Context& ctx)
{
    if (q <= 0.0) throw std::invalid_argument("coupling_density: requires q > 0");
    const double eps_over_omega3 = 4.0 / (q * std::pow(q * q + 4.0, 1.5));
    const double gauss = std::exp(-0.5 * q * q * ctx.sigma_over_xi * ctx.sigma_over_xi);
    const double prefactor = ctx.kappa_over_g * ctx.kappa_over_g *
                             std::pow(ctx.d_over_xi, ctx.dimension) *
                             angular_factor(ctx.dimension);
    return prefactor * std::pow(q, ctx.dimension - 1) * eps_over_omega3 * gauss;
}

double green_function(double r_over_xi, int dimension)
{
    const double r = std::fabs(r_over_xi);
    switch (dimension) {
        case 1: return 0.5 * std::exp(-2.0 * r);
        case 2:
            if (r == 0.0) throw std::invalid_argument("green_function: divergent at r = 0 in 2D");
            return specfun::bessel_k0(2.0 * r) / pi;
        case 3:
            if (r == 0.0) throw std::invalid_argument("green_function: divergent at r = 0 in 3D");
            return std::exp(-2.0 * r) / (2.0 * pi * r);
        default: throw std::invalid_argument("dimension must be 1, 2 or 3");
    }
}

double g_function_quadrature(double r_over_xi, double sigma_over_xi, int dimension)
{
    if (sigma_over_xi <= 0.0)
        throw std::invalid_argument("g_function_quadrature: requires sigma > 0");
    const double r = std::fabs(r_over_xi);
    const double y_max = 6.0 * kSqrt2 / sigma_over_xi + 4.0;
    // Half-period panels against the oscillatory cos/J0/j0 factor.
    double panel = y_max / 16.0;
    if (r > 0.0) panel = std::min(panel, pi / r);
    return quadrature::integrate_oscillatory(
        [=](double y) { return g_integrand(y, r, sigma_over_xi, dimension); },
        0.0, y_max, panel, 16);
}

double g_function(double r_over_xi, double sigma_over_xi, int dimension)
{
    if (sigma_over_xi < 0.0) throw std::invalid_argument("g_function: sigma must be >= 0");
    const double r = std::fabs(r_over_xi);
    if (sigma_over_xi == 0.0) return green_function(r, dimension);  // defining limit
    if (r == 0.0) {
        const double z = kSqrt2 * sigma_over_xi;
        // Scaled forms; the plain e^{z^2} erfc(z) product overflows above
        // z ~ 26, i.e. sigma/xi ~ 18.
        switch (dimension) {
            case 1: return 0.5 * specfun::erfcx(z);
            case 2: return specfun::expint_e1_scaled(z * z) / (2.0 * pi);
            case 3: return (1.0 / (std::sqrt(pi) * z) - specfun::erfcx(z)) / pi;
            default: throw std::invalid_argument("dimension must be 1, 2 or 3");
        }
    }
    return g_function_quadrature(r, sigma_over_xi, dimension);
}

double interaction_potential(double r_over_xi, const Context& ctx)
{
    return 2.0 * ctx.kappa_over_g * ctx.kappa_over_g *
           std::pow(ctx.d_over_xi, ctx.dimension) *
           g_function(r_over_xi, ctx.sigma_over_xi, ctx.dimension);
}

double polaronic_shift(const Context& ctx)
{
    return ctx.kappa_over_g * ctx.kappa_over_g *
           std::pow(ctx.d_over_xi, ctx.dimension) *
           g_function(0.0, ctx.sigma_over_xi, ctx.dimension);
}

double polaronic_shift_nk(const Context& ctx, const model::DerivedScales& scales)
{
    return polaronic_shift(ctx) * scales.interaction_energy / constants::k_boltzmann * 1e9;
}

double effective_hopping(const bogoliubov::PhononGrid& grid, double a_over_xi)
{
    double exponent = 0.0;
    for (std::size_t i = 0; i < grid.q.size(); ++i) {
        exponent += grid.weight[i] * grid.m[i] *
                    (1.0 - std::cos(grid.q[i] * a_over_xi)) *
                    (2.0 * grid.occupation[i] + 1.0);
    }
    return std::exp(-exponent);
}

std::vector<double> deformation_profile(const std::vector<std::pair<double, double>>& sites,
                                        const std::vector<double>& positions,
                                        const Context& ctx)
{
    // The single Gaussian density |chi|^2 smears the Green's function exactly
    // like G with an effective width sigma/sqrt(2).
    const double sigma_eff = ctx.sigma_over_xi / kSqrt2;
    std::vector<double> theta(positions.size(), 0.0);
    for (std::size_t i = 0; i < positions.size(); ++i) {
        double acc = 0.0;
        for (const auto& [site_pos, occupation] : sites)
            acc += occupation * g_function(positions[i] - site_pos, sigma_eff, ctx.dimension);
        theta[i] = -acc;
    }
    return theta;
}

double polaron_band(double k_times_a, double effective_hopping_j)
{
    return -2.0 * effective_hopping_j * std::cos(k_times_a);
}

Context make_context(const model::SystemParams& params, const model::DerivedScales& scales)
{
    return Context{scales.sigma_over_xi, params.kappa_over_g, scales.d_over_xi,
                   params.dimension};
}

CouplingTable build_coupling_table(const model::SystemParams& params,
                                   const model::DerivedScales& scales,
                                   const std::vector<double>& separations_over_xi)
{
    const Context ctx = make_context(params, scales);
    CouplingTable table;
    table.polaronic_shift_gn0 = polaronic_shift(ctx);
    table.polaronic_shift_nk = polaronic_shift_nk(ctx, scales);
    table.temperature_gn0 =
        model::temperature_ep_to_gn0(params.temperature_over_ep, table.polaronic_shift_gn0);

    const auto validity = model::validity_alpha(params, scales);
    table.alpha = validity.alpha;
    table.validity_warning = validity.warning;

    bogoliubov::GridInputs gin{ctx.sigma_over_xi, ctx.kappa_over_g, ctx.d_over_xi,
                               ctx.dimension, table.temperature_gn0};
    const auto grid = bogoliubov::build_phonon_grid(gin);
    table.effective_hopping_factor = effective_hopping(grid, scales.a_over_xi);

    table.potential.reserve(separations_over_xi.size());
    for (double r : separations_over_xi)
        table.potential.emplace_back(r, interaction_potential(r, ctx));
    return table;
}

}  // namespace polaron::coupling
