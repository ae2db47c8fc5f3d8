#include "polaron/model.hpp"

#include <cmath>
#include <stdexcept>

#include "polaron/constants.hpp"

namespace polaron::model {

using constants::hbar;
using constants::pi;

void SystemParams::validate() const
{
    if (impurity_mass <= 0.0) throw std::invalid_argument("impurity_mass must be > 0");
    if (boson_mass <= 0.0) throw std::invalid_argument("boson_mass must be > 0");
    if (density <= 0.0) throw std::invalid_argument("density must be > 0");
    if (lattice_spacing <= 0.0) throw std::invalid_argument("lattice_spacing must be > 0");
    if (dimension < 1 || dimension > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
    if (lattice_depth_er <= 0.0) throw std::invalid_argument("lattice_depth_Er must be > 0");
    if (hopping_er < 0.0) throw std::invalid_argument("hopping_Er must be >= 0");
    if (temperature_over_ep < 0.0) throw std::invalid_argument("temperature must be >= 0");
    if (!healing_length && !boson_coupling)
        throw std::invalid_argument("either healing_length or boson_coupling must be given");
    if (healing_length && *healing_length <= 0.0)
        throw std::invalid_argument("healing_length must be > 0");
    if (healing_length && boson_coupling) {
        // xi = hbar / sqrt(m_b g n0) must hold to 1e-10 relative.
        const double xi_from_g = hbar / std::sqrt(boson_mass * (*boson_coupling) * density);
        if (std::fabs(xi_from_g - *healing_length) > 1e-10 * (*healing_length))
            throw std::invalid_argument("healing_length inconsistent with boson_coupling and density");
    }
}

DerivedScales derive_scales(const SystemParams& params)
{
    params.validate();
    if (params.lattice_depth_er < 1.0)
        throw std::invalid_argument("lattice_depth_Er < 1: harmonic/tight-binding approximation untrustworthy");

    DerivedScales s;
    if (params.healing_length) {
        s.healing_length = *params.healing_length;
        s.interaction_energy = hbar * hbar / (params.boson_mass * s.healing_length * s.healing_length);
    } else {
        s.interaction_energy = *params.boson_coupling * params.density;
        s.healing_length = hbar / std::sqrt(params.boson_mass * s.interaction_energy);
    }
    const double k = pi / params.lattice_spacing;  // a = lambda/2
    s.recoil_energy = hbar * hbar * k * k / (2.0 * params.impurity_mass);
    s.wannier_width = params.lattice_spacing * std::pow(params.lattice_depth_er, -0.25) / pi;
    s.mean_spacing = std::pow(params.density, -1.0 / params.dimension);
    s.sound_speed = std::sqrt(s.interaction_energy / params.boson_mass);
    s.time_unit = hbar / s.interaction_energy;

    s.sigma_over_xi = s.wannier_width / s.healing_length;
    s.a_over_xi = params.lattice_spacing / s.healing_length;
    s.d_over_xi = s.mean_spacing / s.healing_length;
    s.hopping_gn0 = params.hopping_er * s.recoil_energy / s.interaction_energy;
    return s;
}

ValidityResult validity_alpha(const SystemParams& params, const DerivedScales& scales)
{
    ValidityResult r;
    r.alpha = std::fabs(params.kappa_over_g) * std::pow(scales.d_over_xi, params.dimension);
    r.warning = r.alpha >= 1.0;
    return r;
}

double temperature_ep_to_gn0(double t_over_ep, double ep_gn0)
{
    return t_over_ep * ep_gn0;
}

double temperature_gn0_to_ep(double t_gn0, double ep_gn0)
{
    if (ep_gn0 <= 0.0) throw std::invalid_argument("temperature_gn0_to_ep: E_p must be > 0");
    return t_gn0 / ep_gn0;
}

}  // namespace polaron::model
