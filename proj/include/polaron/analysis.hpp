#pragma once

#include <utility>
#include <vector>

#include "polaron/gme.hpp"

namespace polaron::analysis {

// Mean position <l>(t) = Sum_l l P_l(t) per stored step, lattice units.
std::vector<double> mean_position(const gme::Trajectory& traj);

// Mean-square displacement l2(t) = Sum_l l^2 P_l(t) per stored step.
std::vector<double> msd(const gme::Trajectory& traj);

struct FitResult {
    enum class Kind { power_law, esaki_tsu };
    Kind kind = Kind::power_law;
    // power law: y = a * t^alpha
    double a = 0.0;
    double alpha = 0.0;
    double a_err = 0.0;
    double alpha_err = 0.0;
    // Esaki-Tsu: v = 2 gamma (J~/J) (omega tau) / (1 + (omega tau)^2), v in v0
    double tau = 0.0;
    double gamma = 0.0;
    double tau_err = 0.0;
    double gamma_err = 0.0;
    double residual_norm = 0.0;
    double window_start = 0.0;
    double window_end = 0.0;
    bool out_of_model = false;       // power-law alpha outside [0.5, 2.5]
    bool converged = true;           // Gauss-Newton termination flag
    std::vector<double> residual_trace;  // per-iteration norms (esaki-tsu)
};

// Unweighted least squares of log y against log t over t in [t_lo, t_hi].
// Requires >= 8 strictly positive samples in the window (t = 0 excluded).
FitResult fit_power_law(const std::vector<double>& t, const std::vector<double>& y,
                        double t_lo, double t_hi);

// Drift velocity at time t_d in units v0 = J a / hbar, positive when the
// packet moves down the tilt (toward decreasing site energy, i.e. -j for
// omega_B > 0). Refuses trajectories that touched the boundary.
double drift_velocity(const gme::Trajectory& traj, double t_d);

// Two-parameter Esaki-Tsu fit of (omega_B, v_d) samples; tau comes out in
// the reciprocal units of the supplied omega_B. Coarse log-grid search over
// tau in [tau_lo, tau_hi] with gamma solved linearly, then Gauss-Newton.
FitResult fit_esaki_tsu(const std::vector<std::pair<double, double>>& points,
                        double jt_over_j, double tau_lo = 1e-2, double tau_hi = 1e2);

// Model curve behind fit_esaki_tsu, v in v0 units.
double esaki_tsu_velocity(double omega_b, double tau, double gamma, double jt_over_j);

}  // namespace polaron::analysis
