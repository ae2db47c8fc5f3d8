#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "polaron/model.hpp"

namespace polaron::config {

// Validation failure (schema violation, bad value); maps to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SolverConfig {
    double dt = 0.005;        // hbar/J
    double t_final = 10.0;    // hbar/J
    int n_sites = 121;
    double grid_tol = 1e-9;   // phonon-grid E_p convergence
    double kernel_tol = 0.005;  // grid-doubling Phi check
};

struct SweepConfig {
    std::vector<double> temperatures_over_ep;  // k_B T / E_p
    std::vector<double> tilts;                 // hbar omega_B / J
    double t_d = 10.0;                         // drift readout time, hbar/J
};

struct OutputConfig {
    std::string directory;  // resolved by the CLI layer when empty
    bool emit_plots = false;
};

struct RunConfig {
    std::string mode = "gme";  // gme|coupling|selftrap|fig3|fig4|fig5|selftrap-appc
    model::SystemParams system;
    SolverConfig solver;
    SweepConfig sweep;
    OutputConfig output;

    void validate() const;  // throws ConfigError
};

// Parses and validates a TOML run configuration. Unknown keys are hard
// errors; messages carry the section.key path.
RunConfig load_config(const std::string& path);

// The reference physical system: 41K impurity in a 87Rb condensate,
// kappa/g = 2.58, xi = 652 nm, d = 200 nm, V = 12 E_R, J/hbar = 1.2 kHz.
model::SystemParams reference_system();

// Built-in experiment configurations (fig3, fig4, fig5, selftrap-appc,
// and the single-run modes with reference parameters).
RunConfig preset(const std::string& name);

}  // namespace polaron::config
