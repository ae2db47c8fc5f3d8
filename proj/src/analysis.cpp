#include "polaron/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace polaron::analysis {

std::vector<double> mean_position(const gme::Trajectory& traj)
{
    std::vector<double> out;
    out.reserve(traj.p.size());
    for (const auto& p : traj.p) {
        double acc = 0.0;
        for (int i = 0; i < traj.n_sites; ++i) acc += traj.site_index(i) * p[i];
        out.push_back(acc);
    }
    return out;
}

std::vector<double> msd(const gme::Trajectory& traj)
{
    std::vector<double> out;
    out.reserve(traj.p.size());
    for (const auto& p : traj.p) {
        double acc = 0.0;
        for (int i = 0; i < traj.n_sites; ++i) {
            const double l = traj.site_index(i);
            acc += l * l * p[i];
        }
        out.push_back(acc);
    }
    return out;
}

FitResult fit_power_law(const std::vector<double>& t, const std::vector<double>& y,
                        double t_lo, double t_hi)
{
    if (t.size() != y.size())
        throw std::invalid_argument("fit_power_law: series length mismatch");

    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < t_lo || t[i] > t_hi) continue;
        if (t[i] <= 0.0 || y[i] <= 0.0)
            throw std::invalid_argument("fit_power_law: window must exclude non-positive samples");
        lx.push_back(std::log(t[i]));
        ly.push_back(std::log(y[i]));
    }
    const std::size_t n = lx.size();
    if (n < 8) throw std::invalid_argument("fit_power_law: window has fewer than 8 points");

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double denom = n * sxx - sx * sx;
    const double slope = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / n;

    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ly[i] - (intercept + slope * lx[i]);
        ss_res += r * r;
    }
    const double var = (n > 2) ? ss_res / (n - 2) : 0.0;

    FitResult fit;
    fit.kind = FitResult::Kind::power_law;
    fit.alpha = slope;
    fit.a = std::exp(intercept);
    fit.alpha_err = std::sqrt(var * n / denom);
    fit.a_err = fit.a * std::sqrt(var * sxx / denom);
    fit.residual_norm = std::sqrt(ss_res);
    fit.window_start = t_lo;
    fit.window_end = t_hi;
    fit.out_of_model = slope < 0.5 || slope > 2.5;
    return fit;
}

double drift_velocity(const gme::Trajectory& traj, double t_d)
{
    if (!traj.boundary_ok)
        throw std::runtime_error("drift_velocity: trajectory reached the lattice boundary");
    if (traj.t.empty() || t_d <= 0.0 || t_d > traj.t.back() + 1e-12)
        throw std::invalid_argument("drift_velocity: t_d outside the stored trajectory");
    const auto idx = static_cast<std::size_t>(std::llround(t_d / traj.dt));
    const auto pos = mean_position(traj);
    // Positive = drift down the tilt; the kernel convention puts the
    // downhill direction at decreasing j for omega_B > 0.
    return -pos[std::min(idx, pos.size() - 1)] / t_d;
}

double esaki_tsu_velocity(double omega_b, double tau, double gamma, double jt_over_j)
{
    const double u = omega_b * tau;
    return 2.0 * gamma * jt_over_j * u / (1.0 + u * u);
}

FitResult fit_esaki_tsu(const std::vector<std::pair<double, double>>& points,
                        double jt_over_j, double tau_lo, double tau_hi)
{
    if (points.size() < 6)
        throw std::invalid_argument("fit_esaki_tsu: needs at least 6 points");
    if (jt_over_j <= 0.0 || tau_lo <= 0.0 || tau_hi <= tau_lo)
        throw std::invalid_argument("fit_esaki_tsu: invalid parameters");

    const std::size_t n = points.size();
    // Shape function without gamma; the model is linear in gamma.
    auto shape = [&](double omega, double tau) {
        const double u = omega * tau;
        return 2.0 * jt_over_j * u / (1.0 + u * u);
    };
    auto gamma_at = [&](double tau) {
        double num = 0.0, den = 0.0;
        for (const auto& [omega, v] : points) {
            const double f = shape(omega, tau);
            num += v * f;
            den += f * f;
        }
        return den > 0.0 ? num / den : 0.0;
    };
    auto cost = [&](double tau, double gamma) {
        double ss = 0.0;
        for (const auto& [omega, v] : points) {
            const double r = gamma * shape(omega, tau) - v;
            ss += r * r;
        }
        return ss;
    };

    // Coarse log-grid search, gamma solved linearly at each tau.
    const int n_grid = 200;
    double best_tau = tau_lo, best_gamma = gamma_at(tau_lo);
    double best_cost = cost(best_tau, best_gamma);
    for (int i = 1; i <= n_grid; ++i) {
        const double tau = tau_lo * std::pow(tau_hi / tau_lo, static_cast<double>(i) / n_grid);
        const double gamma = gamma_at(tau);
        const double c = cost(tau, gamma);
        if (c < best_cost) {
            best_cost = c;
            best_tau = tau;
            best_gamma = gamma;
        }
    }

    FitResult fit;
    fit.kind = FitResult::Kind::esaki_tsu;
    fit.residual_trace.push_back(std::sqrt(best_cost));

    // Gauss-Newton refinement with step halving.
    double tau = best_tau, gamma = best_gamma;
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
        double jtt = 0.0, jtg = 0.0, jgg = 0.0, gt = 0.0, gg = 0.0;
        for (const auto& [omega, v] : points) {
            const double u = omega * tau;
            const double f = shape(omega, tau);
            const double df_dtau = 2.0 * jt_over_j * omega * (1.0 - u * u) /
                                   ((1.0 + u * u) * (1.0 + u * u));
            const double r = gamma * f - v;
            const double jt = gamma * df_dtau;
            const double jg = f;
            jtt += jt * jt;
            jtg += jt * jg;
            jgg += jg * jg;
            gt += jt * r;
            gg += jg * r;
        }
        const double det = jtt * jgg - jtg * jtg;
        if (std::fabs(det) < 1e-300) break;
        double dtau = -(jgg * gt - jtg * gg) / det;
        double dgamma = -(jtt * gg - jtg * gt) / det;

        double scale = 1.0;
        const double c0 = cost(tau, gamma);
        double new_tau = tau, new_gamma = gamma, c1 = c0;
        for (int h = 0; h < 30; ++h) {
            new_tau = tau + scale * dtau;
            new_gamma = gamma + scale * dgamma;
            if (new_tau > 0.0) {
                c1 = cost(new_tau, new_gamma);
                if (c1 <= c0) break;
            }
            scale *= 0.5;
        }
        if (new_tau <= 0.0) break;
        const double step = std::fabs(new_tau - tau) / std::max(std::fabs(tau), 1e-300) +
                            std::fabs(new_gamma - gamma) / std::max(std::fabs(gamma), 1e-300);
        tau = new_tau;
        gamma = new_gamma;
        fit.residual_trace.push_back(std::sqrt(c1));
        if (step < 1e-13) {
            converged = true;
            break;
        }
    }

    // Parameter covariance from the final Jacobian.
    double jtt = 0.0, jtg = 0.0, jgg = 0.0, ss = 0.0;
    for (const auto& [omega, v] : points) {
        const double u = omega * tau;
        const double f = shape(omega, tau);
        const double df_dtau = 2.0 * jt_over_j * omega * (1.0 - u * u) /
                               ((1.0 + u * u) * (1.0 + u * u));
        const double r = gamma * f - v;
        const double jt = gamma * df_dtau;
        jtt += jt * jt;
        jtg += jt * f;
        jgg += f * f;
        ss += r * r;
    }
    const double det = jtt * jgg - jtg * jtg;
    const double var = (n > 2) ? ss / (n - 2) : 0.0;

    fit.tau = tau;
    fit.gamma = gamma;
    if (det > 0.0) {
        fit.tau_err = std::sqrt(var * jgg / det);
        fit.gamma_err = std::sqrt(var * jtt / det);
    }
    fit.residual_norm = std::sqrt(ss);
    fit.converged = converged;
    fit.window_start = points.front().first;
    fit.window_end = points.back().first;
    fit.out_of_model = !(tau > 0.0 && gamma > 0.0);
    return fit;
}

}  // namespace polaron::analysis
