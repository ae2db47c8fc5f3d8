#pragma once

#include <optional>

namespace polaron::model {

// Physical inputs in SI units (masses kg, lengths m, density m^-D).
// Energies given relative to the recoil energy E_R; the temperature is
// accepted in units of the polaronic shift E_p and converted once E_p is
// known, the tilt in units of J/hbar.
struct SystemParams {
    double impurity_mass = 0.0;
    double boson_mass = 0.0;
    double kappa_over_g = 0.0;
    double density = 0.0;
    int dimension = 1;
    double lattice_spacing = 0.0;
    double lattice_depth_er = 12.0;  // V / E_R
    double hopping_er = 0.0;         // J / E_R
    double temperature_over_ep = 0.0;
    double tilt = 0.0;               // hbar * omega_B / J
    std::optional<double> healing_length;  // m
    std::optional<double> boson_coupling;  // g, J m^D; cross-checked against xi

    void validate() const;  // throws std::invalid_argument on violation
};

struct DerivedScales {
    double healing_length = 0.0;     // m
    double interaction_energy = 0.0; // g n0, J
    double recoil_energy = 0.0;      // E_R, J
    double wannier_width = 0.0;      // sigma, m
    double mean_spacing = 0.0;       // d = n0^(-1/D), m
    double sound_speed = 0.0;        // sqrt(g n0 / m_b), m/s
    double time_unit = 0.0;          // hbar / (g n0), s

    // Dimensionless ratios used throughout the numerics.
    double sigma_over_xi = 0.0;
    double a_over_xi = 0.0;
    double d_over_xi = 0.0;
    double hopping_gn0 = 0.0;        // J / (g n0)
};

// Populates all derived quantities; sigma from the harmonic approximation
// sigma/a = (V/E_R)^(-1/4)/pi. Rejects V < 1 E_R, where the tight-binding
// picture breaks down.
DerivedScales derive_scales(const SystemParams& params);

// Linearization validity parameter alpha = (|kappa|/g)(d/xi)^D. `warning`
// set when alpha >= 1.
struct ValidityResult {
    double alpha = 0.0;
    bool warning = false;
};
ValidityResult validity_alpha(const SystemParams& params, const DerivedScales& scales);

// Temperature unit conversions given E_p expressed in g n0 units.
double temperature_ep_to_gn0(double t_over_ep, double ep_gn0);
double temperature_gn0_to_ep(double t_gn0, double ep_gn0);

}  // namespace polaron::model
