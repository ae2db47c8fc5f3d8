#include "polaron/gme.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "polaron/specfun.hpp"

namespace polaron::gme {

namespace {

// Per-bond difference fields entering dP/dt. Lp carries the W_plus terms
// (gain from the right neighbour, loss toward the left), Lm the W_minus
// terms. Probability is conserved bond by bond, including at the edges.
void bond_fields(const std::vector<double>& p, std::vector<double>& lp,
                 std::vector<double>& lm)
{
    const int n = static_cast<int>(p.size());
    lp.assign(n, 0.0);
    lm.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        if (i + 1 < n) {
            lp[i] += p[i + 1];  // gain from the right, W_plus
            lm[i] -= p[i];      // loss to the right, W_minus
        }
        if (i - 1 >= 0) {
            lm[i] += p[i - 1];  // gain from the left, W_minus
            lp[i] -= p[i];      // loss to the left, W_plus
        }
    }
}

std::uint64_t fnv1a(const void* data, std::size_t bytes, std::uint64_t seed)
{
    const unsigned char* ptr = static_cast<const unsigned char*>(data);
    std::uint64_t h = seed;
    for (std::size_t i = 0; i < bytes; ++i) {
        h ^= ptr[i];
        h *= 1099511628211ULL;
    }
    return h;
}

std::uint64_t hash_kernel(const MemoryKernel& kernel)
{
    std::uint64_t h = 14695981039346656037ULL;
    if (!kernel.w_plus.empty())
        h = fnv1a(kernel.w_plus.data(), kernel.w_plus.size() * sizeof(double), h);
    if (!kernel.w_minus.empty())
        h = fnv1a(kernel.w_minus.data(), kernel.w_minus.size() * sizeof(double), h);
    return h;
}

double trapezoid(const std::vector<double>& y, double dt)
{
    if (y.size() < 2) return 0.0;
    double sum = 0.5 * (y.front() + y.back());
    for (std::size_t i = 1; i + 1 < y.size(); ++i) sum += y[i];
    return sum * dt;
}

}  // namespace

std::complex<double> phi_exponent(double s_gn0, const bogoliubov::PhononGrid& grid,
                                  double a_over_xi)
{
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < grid.q.size(); ++i) {
        const double c = 2.0 * grid.weight[i] * grid.m[i] *
                         (1.0 - std::cos(grid.q[i] * a_over_xi));
        if (c == 0.0) continue;
        const double ws = grid.omega[i] * s_gn0;
        re += c * (2.0 * grid.occupation[i] + 1.0) * (1.0 - std::cos(ws));
        im -= c * std::sin(ws);
    }
    return {re, im};
}

std::pair<double, double> memory_function(std::complex<double> phi, double omega_b_times_s)
{
    const std::complex<double> damping = std::exp(-phi);
    const std::complex<double> tilt = std::polar(1.0, omega_b_times_s);
    // W_plus (gain from j+1, emission-assisted) carries e^{-i omega_B s}.
    const double w_plus = 2.0 * std::real(damping * std::conj(tilt));
    const double w_minus = 2.0 * std::real(damping * tilt);
    return {w_plus, w_minus};
}

MemoryKernel build_memory_kernel(const bogoliubov::PhononGrid& grid,
                                 const bogoliubov::GridInputs& grid_inputs,
                                 const KernelInputs& in)
{
    if (in.dt <= 0.0) throw std::invalid_argument("build_memory_kernel: dt must be > 0");
    if (in.hopping_gn0 <= 0.0)
        throw std::invalid_argument("build_memory_kernel: hopping must be > 0");

    MemoryKernel kernel;
    kernel.omega_b = in.omega_b;
    kernel.temperature = grid.temperature;
    kernel.dt = in.dt;

    const int n_steps = static_cast<int>(std::llround(in.t_max / in.dt));
    kernel.s.resize(n_steps + 1);
    kernel.phi.resize(n_steps + 1);
    kernel.w_plus.resize(n_steps + 1);
    kernel.w_minus.resize(n_steps + 1);
    for (int n = 0; n <= n_steps; ++n) {
        const double s = n * in.dt;                 // hbar/J
        const double s_gn0 = s / in.hopping_gn0;    // hbar/(g n0)
        kernel.s[n] = s;
        kernel.phi[n] = phi_exponent(s_gn0, grid, in.a_over_xi);
        const auto [wp, wm] = memory_function(kernel.phi[n], in.omega_b * s);
        kernel.w_plus[n] = wp;
        kernel.w_minus[n] = wm;
    }

    // Stationary exponent: Re Phi(inf) = 2 ln(J/J~)^2... = -2 ln(J~/J).
    double phi_inf = 0.0;
    for (std::size_t i = 0; i < grid.q.size(); ++i)
        phi_inf += 2.0 * grid.weight[i] * grid.m[i] *
                   (1.0 - std::cos(grid.q[i] * in.a_over_xi)) *
                   (2.0 * grid.occupation[i] + 1.0);
    kernel.jt_over_j = std::exp(-0.5 * phi_inf);
    kernel.w_inf = (in.omega_b == 0.0) ? 2.0 * kernel.jt_over_j * kernel.jt_over_j : 0.0;

    if (in.check_convergence) {
        const auto refined = bogoliubov::refine_grid(grid, grid_inputs);
        kernel.convergence_ok = true;
        for (int k = 1; k <= 8; ++k) {
            const double s_gn0 = (in.t_max * k / 8.0) / in.hopping_gn0;
            const auto coarse = phi_exponent(s_gn0, grid, in.a_over_xi);
            const auto fine = phi_exponent(s_gn0, refined, in.a_over_xi);
            const double scale = std::max(std::abs(fine), 1e-12);
            if (std::abs(fine - coarse) > in.convergence_tol * scale) {
                kernel.convergence_ok = false;
                break;
            }
        }
    }
    return kernel;
}

SingleModeOracle single_mode_kernel_oracle(double x, double z, double omega_t,
                                           int n_trunc, double tol)
{
    if (x < 0.0 || z < 0.0 || z >= 1.0 || n_trunc < 1)
        throw std::invalid_argument("single_mode_kernel_oracle: requires x >= 0, 0 <= z < 1, n_trunc >= 1");

    SingleModeOracle result;
    result.tail_warning = z > 0.0 && std::pow(z, n_trunc) / (1.0 - z) > tol;

    // Brute force: Sum_{n,m} z^n |<m|D(beta)|n>|^2 e^{i omega t (m-n)} with
    // |<m|D|n>|^2 = (n!/m!) x^{m-n} e^{-x} [L_n^{m-n}(x)]^2 for m >= n.
    std::complex<double> brute = 0.0;
    for (int n = 0; n <= n_trunc; ++n) {
        const double zn = std::pow(z, n);
        if (zn == 0.0) break;
        for (int m = 0; m <= n_trunc; ++m) {
            const int lo = std::min(n, m);
            const int hi = std::max(n, m);
            const int l = hi - lo;
            double log_mag = std::lgamma(lo + 1.0) - std::lgamma(hi + 1.0) - x;
            if (l > 0) log_mag += l * std::log(x);
            const double lag = specfun::laguerre(lo, l, x);
            const double prob = std::exp(log_mag) * lag * lag;
            brute += zn * prob * std::polar(1.0, omega_t * (m - n));
        }
    }
    result.brute_force = brute;

    const double big_n = (z > 0.0) ? z / (1.0 - z) : 0.0;
    const std::complex<double> ph = std::polar(1.0, omega_t);
    const std::complex<double> exponent =
        -x * ((big_n + 1.0) * (1.0 - ph) + big_n * (1.0 - std::conj(ph)));
    result.closed_form = std::exp(exponent) / (1.0 - z);
    return result;
}

Trajectory solve_gme(const MemoryKernel& kernel, const SolverOptions& options)
{
    const double dt = kernel.dt;
    if (dt <= 0.0 || kernel.s.size() < 2)
        throw std::invalid_argument("solve_gme: kernel not sampled");
    if (options.n_sites < 3 || options.n_sites % 2 == 0)
        throw std::invalid_argument("solve_gme: n_sites must be odd and >= 3");
    const int n_t = static_cast<int>(std::llround(options.t_final / dt));
    if (n_t + 1 > static_cast<int>(kernel.s.size()))
        throw std::invalid_argument("solve_gme: kernel does not span t_final");

    const int n = options.n_sites;
    const double wp0 = kernel.w_plus[0];
    const double wm0 = kernel.w_minus[0];

    Trajectory traj;
    traj.n_sites = n;
    traj.dt = dt;
    traj.scheme = "product-trapezoid predictor-corrector";
    traj.kernel_hash = hash_kernel(kernel);
    traj.t.reserve(n_t + 1);
    traj.p.reserve(n_t + 1);

    std::vector<std::vector<double>> lp_hist, lm_hist;
    lp_hist.reserve(n_t + 1);
    lm_hist.reserve(n_t + 1);

    std::vector<double> p0(n, 0.0);
    p0[traj.center()] = 1.0;
    traj.t.push_back(0.0);
    traj.p.push_back(p0);
    {
        std::vector<double> lp, lm;
        bond_fields(p0, lp, lm);
        lp_hist.push_back(std::move(lp));
        lm_hist.push_back(std::move(lm));
    }

    std::vector<double> f_prev(n, 0.0);  // F at the current time level
    std::vector<double> g(n), x(n), rhs(n), lp(n), lm(n);

    for (int step = 0; step < n_t; ++step) {
        const int target = step + 1;
        // History part of F(t_{target}): convolution terms m = 1..target.
        std::fill(g.begin(), g.end(), 0.0);
        for (int m = 1; m <= target; ++m) {
            const double theta = (m == target) ? 0.5 : 1.0;
            const double wp = theta * kernel.w_plus[m];
            const double wm = theta * kernel.w_minus[m];
            const auto& lph = lp_hist[target - m];
            const auto& lmh = lm_hist[target - m];
            for (int i = 0; i < n; ++i) g[i] += wp * lph[i] + wm * lmh[i];
        }
        for (int i = 0; i < n; ++i) g[i] *= dt;

        for (int i = 0; i < n; ++i) {
            rhs[i] = traj.p[step][i] + 0.5 * dt * f_prev[i];
            x[i] = traj.p[step][i] + dt * f_prev[i];  // predictor
        }
        // F(t_{target}) = G + (dt/2)(W+(0) Lp[x] + W-(0) Lm[x]); the implicit
        // part is a contraction (coefficient ~ dt^2), fixed-point suffices.
        for (int it = 0; it < 3; ++it) {
            bond_fields(x, lp, lm);
            for (int i = 0; i < n; ++i)
                x[i] = rhs[i] + 0.5 * dt * (g[i] + 0.5 * dt * (wp0 * lp[i] + wm0 * lm[i]));
        }
        bond_fields(x, lp, lm);
        for (int i = 0; i < n; ++i)
            f_prev[i] = g[i] + 0.5 * dt * (wp0 * lp[i] + wm0 * lm[i]);

        traj.t.push_back(target * dt);
        traj.p.push_back(x);
        lp_hist.push_back(lp);
        lm_hist.push_back(lm);

        double norm = 0.0;
        for (double v : x) norm += v;
        traj.max_norm_drift = std::max(traj.max_norm_drift, std::fabs(norm - 1.0));
        if (traj.max_norm_drift > options.norm_tol)
            throw std::runtime_error("solve_gme: probability normalization drift exceeded tolerance");
    }

    const auto& pf = traj.p.back();
    traj.boundary_ok = std::fabs(pf.front()) < options.boundary_tol &&
                       std::fabs(pf.back()) < options.boundary_tol;
    return traj;
}

PauliRates pauli_rates(const MemoryKernel& kernel)
{
    if (kernel.temperature == 0.0 && kernel.omega_b == 0.0)
        throw std::invalid_argument(
            "pauli_rates: T = 0 with omega_B = 0 has a non-decaying kernel; Markov limit invalid");
    const std::size_t count = kernel.s.size();
    if (count < 2) throw std::invalid_argument("pauli_rates: kernel not sampled");

    const double threshold = 1e-4 * 2.0;  // 1e-4 of W(0) = 2 (J/hbar)^2
    // Decay check against the stationary part (constant for omega_B = 0,
    // 2 (J~/J)^2 cos(omega_B s) otherwise).
    std::size_t decay_index = count;
    for (std::size_t i = count; i-- > 0;) {
        const double base = 2.0 * kernel.jt_over_j * kernel.jt_over_j;
        const double asym_p = (kernel.omega_b == 0.0) ? kernel.w_inf
                                                      : base * std::cos(kernel.omega_b * kernel.s[i]);
        const double asym_m = asym_p;
        if (std::fabs(kernel.w_plus[i] - asym_p) >= threshold ||
            std::fabs(kernel.w_minus[i] - asym_m) >= threshold)
            break;
        decay_index = i;
    }
    if (decay_index >= count)
        throw std::runtime_error("pauli_rates: kernel has not decayed within the sampled range");

    PauliRates rates;
    rates.decay_time = kernel.s[decay_index];

    if (kernel.omega_b == 0.0) {
        std::vector<double> yp(count), ym(count);
        for (std::size_t i = 0; i < count; ++i) {
            yp[i] = kernel.w_plus[i] - kernel.w_inf;
            ym[i] = kernel.w_minus[i] - kernel.w_inf;
        }
        rates.w_plus = trapezoid(yp, kernel.dt);
        rates.w_minus = trapezoid(ym, kernel.dt);
    } else {
        // Conditionally convergent tail: damping window e^{-eta s} with
        // eta in {4, 2, 1}e-2 J/hbar, Richardson-extrapolated to eta -> 0.
        auto damped = [&](double eta, const std::vector<double>& w) {
            std::vector<double> y(count);
            for (std::size_t i = 0; i < count; ++i)
                y[i] = w[i] * std::exp(-eta * kernel.s[i]);
            return trapezoid(y, kernel.dt);
        };
        auto extrapolate = [&](const std::vector<double>& w) {
            const double w1 = damped(0.01, w);
            const double w2 = damped(0.02, w);
            const double w4 = damped(0.04, w);
            return (8.0 * w1 - 6.0 * w2 + w4) / 3.0;
        };
        rates.w_plus = extrapolate(kernel.w_plus);
        rates.w_minus = extrapolate(kernel.w_minus);
    }
    return rates;
}

Trajectory solve_pauli(double w_plus, double w_minus, double dt,
                       const SolverOptions& options)
{
    const double tol = -1e-10;
    if (w_plus < tol || w_minus < tol)
        throw std::invalid_argument("solve_pauli: rates must be non-negative");
    w_plus = std::max(w_plus, 0.0);
    w_minus = std::max(w_minus, 0.0);
    if (options.n_sites < 3 || options.n_sites % 2 == 0)
        throw std::invalid_argument("solve_pauli: n_sites must be odd and >= 3");
    if (dt <= 0.0) throw std::invalid_argument("solve_pauli: dt must be > 0");

    const int n = options.n_sites;
    const int n_t = static_cast<int>(std::llround(options.t_final / dt));

    Trajectory traj;
    traj.n_sites = n;
    traj.dt = dt;
    traj.scheme = "pauli-rk4";
    traj.t.reserve(n_t + 1);
    traj.p.reserve(n_t + 1);

    std::vector<double> p(n, 0.0);
    p[traj.center()] = 1.0;
    traj.t.push_back(0.0);
    traj.p.push_back(p);

    std::vector<double> lp(n), lm(n), k1(n), k2(n), k3(n), k4(n), tmp(n);
    auto deriv = [&](const std::vector<double>& state, std::vector<double>& out) {
        bond_fields(state, lp, lm);
        for (int i = 0; i < n; ++i) out[i] = w_plus * lp[i] + w_minus * lm[i];
    };

    for (int step = 0; step < n_t; ++step) {
        deriv(p, k1);
        for (int i = 0; i < n; ++i) tmp[i] = p[i] + 0.5 * dt * k1[i];
        deriv(tmp, k2);
        for (int i = 0; i < n; ++i) tmp[i] = p[i] + 0.5 * dt * k2[i];
        deriv(tmp, k3);
        for (int i = 0; i < n; ++i) tmp[i] = p[i] + dt * k3[i];
        deriv(tmp, k4);
        for (int i = 0; i < n; ++i)
            p[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

        traj.t.push_back((step + 1) * dt);
        traj.p.push_back(p);
        double norm = 0.0;
        for (double v : p) norm += v;
        traj.max_norm_drift = std::max(traj.max_norm_drift, std::fabs(norm - 1.0));
        if (traj.max_norm_drift > options.norm_tol)
            throw std::runtime_error("solve_pauli: probability normalization drift exceeded tolerance");
    }
    traj.boundary_ok = std::fabs(p.front()) < options.boundary_tol &&
                       std::fabs(p.back()) < options.boundary_tol;
    return traj;
}

}  // namespace polaron::gme
