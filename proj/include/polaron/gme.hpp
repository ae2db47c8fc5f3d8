#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "polaron/bogoliubov.hpp"

namespace polaron::gme {

// Phonon dressing exponent Phi(s), s in units hbar/(g n0):
//   Phi(s) = Sum_q 2|M|^2 [1-cos(q a)] [(N+1)(1-e^{i w s}) + N(1-e^{-i w s})]
// Phi(0) = 0 and Re Phi >= 0 (damping).
std::complex<double> phi_exponent(double s_gn0, const bogoliubov::PhononGrid& grid,
                                  double a_over_xi);

// Two-sided memory kernel sampled on a uniform s-grid in units hbar/J, with
// W in units (J/hbar)^2, so W_plus(0) = W_minus(0) = 2 exactly.
//
// Subscript convention: W_plus is the kernel for gain from site j+1 and
// W_minus for gain from site j-1. With the tilt Hamiltonian
// hbar omega_B Sum_j j n_j, a hop from j+1 down to j releases energy and is
// phonon-emission assisted; this fixes W_plus = 2 Re[e^{-Phi} e^{-i omega_B s}]
// and W_minus = 2 Re[e^{-Phi} e^{+i omega_B s}], so that positive omega_B
// drives drift toward decreasing site energy (negative j).
struct MemoryKernel {
    std::vector<double> s;                  // hbar/J units, uniform from 0
    std::vector<std::complex<double>> phi;
    std::vector<double> w_plus;
    std::vector<double> w_minus;
    double w_inf = 0.0;        // 2 (J~/J)^2 for omega_B = 0, else 0
    double omega_b = 0.0;      // hbar omega_B / J
    double temperature = 0.0;  // g n0 units
    double dt = 0.0;
    double jt_over_j = 1.0;
    bool convergence_ok = true;  // grid-doubling check on |Phi|
};

struct KernelInputs {
    double a_over_xi = 0.0;
    double hopping_gn0 = 0.0;  // J/(g n0); converts solver time to g n0 time
    double omega_b = 0.0;      // hbar omega_B / J
    double t_max = 10.0;       // hbar/J
    double dt = 0.005;         // hbar/J
    bool check_convergence = true;
    double convergence_tol = 0.005;  // relative |Phi| change on grid doubling
};

MemoryKernel build_memory_kernel(const bogoliubov::PhononGrid& grid,
                                 const bogoliubov::GridInputs& grid_inputs,
                                 const KernelInputs& in);

// (W_plus, W_minus) in (J/hbar)^2 units for a given Phi and phase omega_B*s.
std::pair<double, double> memory_function(std::complex<double> phi, double omega_b_times_s);

// Single-mode cross-check: brute-force Fock sum over displacement
// operator matrix elements vs the Bose-factor closed form.
struct SingleModeOracle {
    std::complex<double> brute_force;
    std::complex<double> closed_form;
    bool tail_warning = false;
};
SingleModeOracle single_mode_kernel_oracle(double x, double z, double omega_t,
                                           int n_trunc, double tol = 1e-12);

struct Trajectory {
    int n_sites = 0;
    double dt = 0.0;
    std::vector<double> t;                // hbar/J units
    std::vector<std::vector<double>> p;   // p[step][site]
    bool boundary_ok = true;
    double max_norm_drift = 0.0;
    std::string scheme;
    std::uint64_t kernel_hash = 0;

    int center() const { return (n_sites - 1) / 2; }
    // Site index j of storage column `idx`.
    int site_index(int idx) const { return idx - center(); }
};

struct SolverOptions {
    int n_sites = 121;     // odd, centered at j = 0
    double t_final = 10.0; // hbar/J
    double norm_tol = 1e-6;
    double boundary_tol = 1e-6;
};

// Product-trapezoidal predictor-corrector integration of
//   dP_i/dt = int_0^t ds [W_+(s) P_{i+1}(t-s) - W_-(s) P_i(t-s)]
//           + int_0^t ds [W_-(s) P_{i-1}(t-s) - W_+(s) P_i(t-s)]
// (per-bond form; probability conserved exactly at the boundaries too).
// The kernel must be sampled at the solver step and span t_final.
Trajectory solve_gme(const MemoryKernel& kernel, const SolverOptions& options);

struct PauliRates {
    double w_plus = 0.0;   // gain-from-right rate, (J/hbar)... units (J/hbar)
    double w_minus = 0.0;
    double decay_time = 0.0;  // recorded kernel decay time, hbar/J
};

// Markov-limit rates w = int_0^inf [W(s) - W_inf] ds. Refuses T = 0 with
// omega_B = 0 (non-decaying kernel). For omega_B != 0 uses an exponential
// damping window with eta -> 0 Richardson extrapolation.
PauliRates pauli_rates(const MemoryKernel& kernel);

// Classical nearest-neighbour master equation with constant rates (RK4).
Trajectory solve_pauli(double w_plus, double w_minus, double dt,
                       const SolverOptions& options);

}  // namespace polaron::gme
