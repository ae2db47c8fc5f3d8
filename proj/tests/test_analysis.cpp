#include <doctest.h>

#include <cmath>
#include <random>

#include "polaron/analysis.hpp"

using namespace polaron;

namespace {

// A hand-built trajectory on 5 sites with known moments.
gme::Trajectory toy_trajectory()
{
    gme::Trajectory traj;
    traj.n_sites = 5;
    traj.dt = 1.0;
    traj.t = {0.0, 1.0};
    traj.p = {{0.0, 0.0, 1.0, 0.0, 0.0}, {0.1, 0.2, 0.4, 0.2, 0.1}};
    return traj;
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("moments of a known distribution")
{
    const auto traj = toy_trajectory();
    const auto pos = analysis::mean_position(traj);
    const auto m = analysis::msd(traj);
    CHECK(pos[0] == 0.0);
    CHECK(m[0] == 0.0);
    CHECK(pos[1] == doctest::Approx(0.0));
    // l^2: 0.1*4 + 0.2*1 + 0 + 0.2*1 + 0.1*4 = 1.2
    CHECK(m[1] == doctest::Approx(1.2));

    auto skewed = traj;
    skewed.p[1] = {0.0, 0.0, 0.5, 0.3, 0.2};
    CHECK(analysis::mean_position(skewed)[1] == doctest::Approx(0.7));
}

TEST_CASE("power-law fit recovers exact exponents")
{
    std::vector<double> t;
    for (int i = 0; i <= 200; ++i) t.push_back(0.05 * i);
    for (double alpha : {0.7, 1.0, 1.5, 2.0}) {
        std::vector<double> y;
        for (double ti : t) y.push_back(3.7 * std::pow(ti, alpha));
        const auto fit = analysis::fit_power_law(t, y, 1.0, 10.0);
        CHECK(fit.alpha == doctest::Approx(alpha).epsilon(1e-8));
        CHECK(fit.a == doctest::Approx(3.7).epsilon(1e-8));
        CHECK(fit.residual_norm < 1e-10);
        CHECK_FALSE(fit.out_of_model);
    }
    // Exponent far outside the physical band is flagged, not hidden.
    std::vector<double> y3;
    for (double ti : t) y3.push_back(std::pow(ti, 3.0));
    CHECK(analysis::fit_power_law(t, y3, 1.0, 10.0).out_of_model);
}

TEST_CASE("power-law fit demands at least 8 positive samples")
{
    const std::vector<double> t = {0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0};
    std::vector<double> y(t.size(), 1.0);
    // Window [1, 4] holds only 4 samples.
    CHECK_THROWS(analysis::fit_power_law(t, y, 1.0, 4.0));
    // Non-positive samples in the window are rejected too.
    std::vector<double> t2, y2;
    for (int i = 0; i <= 20; ++i) {
        t2.push_back(0.5 * i);
        y2.push_back(i == 8 ? 0.0 : 1.0 + i);
    }
    CHECK_THROWS(analysis::fit_power_law(t2, y2, 1.0, 9.0));
}

TEST_CASE("drift velocity sign convention and boundary refusal")
{
    gme::Trajectory traj;
    traj.n_sites = 7;
    traj.dt = 1.0;
    traj.t = {0.0, 1.0, 2.0};
    // Packet marched from the center to site -2 by t = 2.
    traj.p = {{0, 0, 0, 1, 0, 0, 0}, {0, 0, 1, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0, 0}};
    // Mean position -2 at t = 2 -> v_d = +1 (down the tilt).
    CHECK(analysis::drift_velocity(traj, 2.0) == doctest::Approx(1.0));
    traj.boundary_ok = false;
    CHECK_THROWS(analysis::drift_velocity(traj, 2.0));
}

TEST_CASE("Esaki-Tsu fit self-consistency")
{
    const double jt = 0.46, tau = 2.0, gamma = 0.4;
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i < 15; ++i) {
        const double w = 0.1 * std::pow(200.0, i / 14.0);
        pts.emplace_back(w, analysis::esaki_tsu_velocity(w, tau, gamma, jt));
    }
    const auto fit = analysis::fit_esaki_tsu(pts, jt);
    CHECK(fit.converged);
    CHECK(fit.tau == doctest::Approx(tau).epsilon(1e-8));
    CHECK(fit.gamma == doctest::Approx(gamma).epsilon(1e-8));
    CHECK(fit.residual_norm < 1e-10);
    CHECK_FALSE(fit.residual_trace.empty());
}

TEST_CASE("Esaki-Tsu fit under scaling and mild noise")
{
    const double jt = 0.2, tau = 0.7, gamma = 1.3;
    std::mt19937 rng(12345);
    std::normal_distribution<double> noise(0.0, 1e-4);
    std::vector<std::pair<double, double>> pts, scaled;
    for (int i = 0; i < 12; ++i) {
        const double w = 0.2 * std::pow(100.0, i / 11.0);
        const double v = analysis::esaki_tsu_velocity(w, tau, gamma, jt) + noise(rng);
        pts.emplace_back(w, v);
        scaled.emplace_back(w, 3.0 * v);
    }
    const auto fit = analysis::fit_esaki_tsu(pts, jt);
    CHECK(fit.tau == doctest::Approx(tau).epsilon(5e-3));
    CHECK(fit.gamma == doctest::Approx(gamma).epsilon(5e-3));
    // Scaling v by a constant scales gamma and leaves tau untouched.
    const auto fit3 = analysis::fit_esaki_tsu(scaled, jt);
    CHECK(fit3.tau == doctest::Approx(fit.tau).epsilon(1e-6));
    CHECK(fit3.gamma == doctest::Approx(3.0 * fit.gamma).epsilon(1e-6));
}

TEST_CASE("Esaki-Tsu model curve properties")
{
    const double jt = 0.5, tau = 1.7, gamma = 0.9;
    // Peak velocity gamma * jt at omega tau = 1.
    const double peak = analysis::esaki_tsu_velocity(1.0 / tau, tau, gamma, jt);
    CHECK(peak == doctest::Approx(gamma * jt));
    for (double w : {0.3 / tau, 3.0 / tau})
        CHECK(analysis::esaki_tsu_velocity(w, tau, gamma, jt) < peak);
    // Ohmic small-tilt slope 2 gamma jt tau.
    const double w0 = 1e-6;
    CHECK(analysis::esaki_tsu_velocity(w0, tau, gamma, jt) / w0 ==
          doctest::Approx(2.0 * gamma * jt * tau).epsilon(1e-9));
}

}  // TEST_SUITE
