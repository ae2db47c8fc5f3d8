#include "polaron/runner.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

#include <json.hpp>

#include "polaron/analysis.hpp"
#include "polaron/bogoliubov.hpp"
#include "polaron/constants.hpp"
#include "polaron/coupling.hpp"
#include "polaron/gme.hpp"
#include "polaron/selftrap.hpp"

namespace polaron::runner {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

class CsvWriter {
  public:
    CsvWriter(const fs::path& path, const std::string& header) : out_(path)
    {
        if (!out_) throw std::runtime_error("cannot open output file " + path.string());
        out_ << header << "\n";
    }
    void row(const std::vector<std::string>& cells)
    {
        for (std::size_t i = 0; i < cells.size(); ++i)
            out_ << (i ? "," : "") << cells[i];
        out_ << "\n";
    }

  private:
    std::ofstream out_;
};

std::string temp_tag(double t_over_ep)
{
    std::string tag = num(t_over_ep);
    for (char& c : tag)
        if (c == '.') c = 'p';
    return tag;
}

void parallel_for(int count, int threads, const std::function<void(int)>& body)
{
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min(threads, count));
    if (threads == 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= count) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

struct RunContext {
    model::SystemParams params;
    model::DerivedScales scales;
    coupling::Context ctx;
    double ep_gn0 = 0.0;
    double grid_tol = 1e-9;
    double kernel_tol = 0.005;
};

RunContext make_context(const config::RunConfig& cfg, double tol_override)
{
    RunContext rc;
    rc.params = cfg.system;
    rc.scales = model::derive_scales(cfg.system);
    rc.ctx = coupling::make_context(cfg.system, rc.scales);
    rc.ep_gn0 = coupling::polaronic_shift(rc.ctx);
    rc.grid_tol = cfg.solver.grid_tol;
    rc.kernel_tol = cfg.solver.kernel_tol;
    if (tol_override > 0.0) {
        rc.grid_tol = tol_override;
        rc.kernel_tol = tol_override;
    }
    return rc;
}

struct KernelRun {
    bogoliubov::PhononGrid grid;
    gme::MemoryKernel kernel;
};

KernelRun make_kernel(const RunContext& rc, double t_over_ep, double tilt, double t_max,
                      double dt)
{
    bogoliubov::GridInputs gin{rc.ctx.sigma_over_xi, rc.ctx.kappa_over_g, rc.ctx.d_over_xi,
                               rc.ctx.dimension,
                               model::temperature_ep_to_gn0(t_over_ep, rc.ep_gn0)};
    KernelRun kr;
    kr.grid = bogoliubov::build_phonon_grid(gin, rc.grid_tol);
    gme::KernelInputs kin;
    kin.a_over_xi = rc.scales.a_over_xi;
    kin.hopping_gn0 = rc.scales.hopping_gn0;
    kin.omega_b = tilt;
    kin.t_max = t_max;
    kin.dt = dt;
    kin.convergence_tol = rc.kernel_tol;
    kr.kernel = gme::build_memory_kernel(kr.grid, gin, kin);
    if (!kr.kernel.convergence_ok)
        throw std::runtime_error("memory kernel not converged under grid doubling");
    return kr;
}

void write_kernel_csv(const fs::path& path, const gme::MemoryKernel& kernel)
{
    CsvWriter csv(path, "s_hbar_over_J,W_plus,W_minus");
    for (std::size_t i = 0; i < kernel.s.size(); ++i)
        csv.row({num(kernel.s[i]), num(kernel.w_plus[i]), num(kernel.w_minus[i])});
}

void write_trajectory_csv(const fs::path& path, const gme::Trajectory& traj, int stride)
{
    CsvWriter csv(path, "t_hbar_over_J,j,P");
    for (std::size_t step = 0; step < traj.p.size(); step += stride)
        for (int i = 0; i < traj.n_sites; ++i)
            csv.row({num(traj.t[step]), num(traj.site_index(i)), num(traj.p[step][i])});
}

void write_msd_csv(const fs::path& path, const std::vector<double>& t,
                   const std::vector<double>& l2)
{
    CsvWriter csv(path, "t_hbar_over_J,l2");
    for (std::size_t i = 0; i < t.size(); ++i) csv.row({num(t[i]), num(l2[i])});
}

json system_json(const RunContext& rc)
{
    const auto& p = rc.params;
    const auto& s = rc.scales;
    return {
        {"impurity_mass_amu", p.impurity_mass / constants::atomic_mass_unit},
        {"boson_mass_amu", p.boson_mass / constants::atomic_mass_unit},
        {"kappa_over_g", p.kappa_over_g},
        {"density_per_m" + (p.dimension > 1 ? std::to_string(p.dimension) : ""), p.density},
        {"dimension", p.dimension},
        {"lattice_spacing_nm", p.lattice_spacing * 1e9},
        {"lattice_depth_Er", p.lattice_depth_er},
        {"hopping_Er", p.hopping_er},
        {"temperature_over_Ep", p.temperature_over_ep},
        {"tilt_hbar_omegaB_over_J", p.tilt},
        {"healing_length_nm", s.healing_length * 1e9},
        {"interaction_energy_nk", s.interaction_energy / constants::k_boltzmann * 1e9},
        {"sigma_over_xi", s.sigma_over_xi},
        {"a_over_xi", s.a_over_xi},
        {"d_over_xi", s.d_over_xi},
        {"hopping_gn0", s.hopping_gn0},
        {"polaronic_shift_gn0", rc.ep_gn0},
        {"polaronic_shift_nk", coupling::polaronic_shift_nk(rc.ctx, rc.scales)},
        {"validity_alpha", model::validity_alpha(rc.params, rc.scales).alpha},
    };
}

json solver_json(const config::RunConfig& cfg)
{
    return {{"dt", cfg.solver.dt},
            {"t_final", cfg.solver.t_final},
            {"n_sites", cfg.solver.n_sites},
            {"grid_tol", cfg.solver.grid_tol},
            {"kernel_tol", cfg.solver.kernel_tol}};
}

#ifndef POLARON_GIT_DESCRIBE
#define POLARON_GIT_DESCRIBE "unknown"
#endif

void write_manifest(const fs::path& dir, const config::RunConfig& cfg, const RunContext& rc,
                    const json& diagnostics, double wall_seconds)
{
    json manifest;
    manifest["mode"] = cfg.mode;
    manifest["system"] = system_json(rc);
    manifest["solver"] = solver_json(cfg);
    manifest["sweep"] = {{"temperatures_over_ep", cfg.sweep.temperatures_over_ep},
                         {"tilts", cfg.sweep.tilts},
                         {"t_d", cfg.sweep.t_d}};
    manifest["diagnostics"] = diagnostics;
    manifest["build"] = POLARON_GIT_DESCRIBE;
    manifest["wall_time_s"] = wall_seconds;
    const auto now = std::chrono::system_clock::now();
    manifest["written_at_unix"] =
        std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
    std::ofstream out(dir / "manifest.json");
    out << manifest.dump(2) << "\n";
}

json kernel_diag(const KernelRun& kr)
{
    return {{"grid_nodes", kr.grid.q.size()},
            {"grid_panels", kr.grid.panels},
            {"temperature_gn0", kr.grid.temperature},
            {"ep_on_grid_gn0", kr.grid.polaronic_shift},
            {"jt_over_j", kr.kernel.jt_over_j},
            {"convergence_ok", kr.kernel.convergence_ok}};
}

// ---- mode implementations -------------------------------------------------

void run_gme(const config::RunConfig& cfg, const RunContext& rc, const fs::path& dir,
             json& diag)
{
    auto kr = make_kernel(rc, cfg.system.temperature_over_ep, cfg.system.tilt,
                          cfg.solver.t_final, cfg.solver.dt);
    gme::SolverOptions opt;
    opt.n_sites = cfg.solver.n_sites;
    opt.t_final = cfg.solver.t_final;
    const auto traj = gme::solve_gme(kr.kernel, opt);
    if (!traj.boundary_ok)
        throw std::runtime_error(
            "lattice boundary reached occupation above tolerance; enlarge solver.n_sites");
    write_kernel_csv(dir / "kernel.csv", kr.kernel);
    write_trajectory_csv(dir / "trajectory.csv", traj, 10);
    write_msd_csv(dir / "msd.csv", traj.t, analysis::msd(traj));
    diag["kernel"] = kernel_diag(kr);
    diag["max_norm_drift"] = traj.max_norm_drift;
}

void run_coupling(const config::RunConfig& cfg, const RunContext& rc, const fs::path& dir,
                  json& diag)
{
    std::vector<double> separations;
    for (int i = 0; i <= 400; ++i) separations.push_back(8.0 * i / 400.0);
    const auto table = coupling::build_coupling_table(cfg.system, rc.scales, separations);
    {
        CsvWriter csv(dir / "coupling.csv", "r_over_xi,G,V_gn0");
        for (const auto& [r, v] : table.potential)
            csv.row({num(r), num(coupling::g_function(r, rc.ctx.sigma_over_xi, rc.ctx.dimension)),
                     num(v)});
    }
    {
        CsvWriter csv(dir / "coupling_scalars.csv",
                      "E_p_nK,E_p_gn0,Jt_over_J,temperature_gn0,alpha");
        csv.row({num(table.polaronic_shift_nk), num(table.polaronic_shift_gn0),
                 num(table.effective_hopping_factor), num(table.temperature_gn0),
                 num(table.alpha)});
    }
    diag["validity_warning"] = table.validity_warning;
}

void run_selftrap(const config::RunConfig& cfg, const RunContext& rc, const fs::path& dir,
                  json& diag)
{
    const double ap = selftrap::alpha_prime(cfg.system, rc.scales);
    const double mass_ratio = cfg.system.boson_mass / cfg.system.impurity_mass;
    const int dim = cfg.system.dimension;
    {
        CsvWriter csv(dir / "selftrap.csv", "sigma_over_xi,E_gn0");
        for (int i = 0; i <= 400; ++i) {
            const double sigma = 0.05 * std::pow(1e3 / 0.05, i / 400.0);
            csv.row({num(sigma), num(selftrap::variational_energy(sigma, ap, mass_ratio, dim))});
        }
    }
    const auto result = selftrap::minimize_energy(ap, mass_ratio, dim);
    const double critical = selftrap::critical_alpha(dim);
    {
        CsvWriter csv(dir / "selftrap_summary.csv",
                      "bound,sigma_star,alpha_prime,alpha_prime_critical");
        csv.row({result.bound ? "1" : "0",
                 result.sigma_star ? num(*result.sigma_star) : "nan", num(ap), num(critical)});
    }
    diag["bound"] = result.bound;
    diag["alpha_prime"] = ap;
}

void run_selftrap_appc(const fs::path& dir, json& diag)
{
    const double c2 = selftrap::critical_alpha(2);
    const double c3 = selftrap::critical_alpha(3);
    // sigma* just above the 3D threshold (the marginal first-order minimum).
    const auto r3 = selftrap::minimize_energy(c3 * 1.0001, 1.0, 3);
    const double s1 = std::sqrt(2.0 * constants::pi) / 1.0;  // 1D at alpha' = 1
    CsvWriter csv(dir / "selftrap_critical.csv",
                  "dimension,alpha_prime_critical,sigma_star_note");
    csv.row({"1", "0", num(s1)});
    csv.row({"2", num(c2), "inf"});
    csv.row({"3", num(c3), r3.sigma_star ? num(*r3.sigma_star) : "nan"});
    diag["alpha_prime_critical_2d"] = c2;
    diag["alpha_prime_critical_3d"] = c3;
}

void run_fig3(const config::RunConfig& cfg, const RunContext& rc, const fs::path& dir,
              const RunOptions& options, json& diag)
{
    const int count = static_cast<int>(cfg.sweep.temperatures_over_ep.size());
    std::vector<gme::Trajectory> trajectories(count);
    std::vector<gme::MemoryKernel> kernels(count);
    std::vector<json> diags(count);
    parallel_for(count, options.threads, [&](int i) {
        auto kr = make_kernel(rc, cfg.sweep.temperatures_over_ep[i], 0.0, cfg.solver.t_final,
                              cfg.solver.dt);
        gme::SolverOptions opt;
        opt.n_sites = cfg.solver.n_sites;
        opt.t_final = cfg.solver.t_final;
        trajectories[i] = gme::solve_gme(kr.kernel, opt);
        kernels[i] = std::move(kr.kernel);
        diags[i] = kernel_diag(kr);
    });
    for (int i = 0; i < count; ++i) {
        const std::string tag = temp_tag(cfg.sweep.temperatures_over_ep[i]);
        write_kernel_csv(dir / ("kernel_T" + tag + ".csv"), kernels[i]);
        write_trajectory_csv(dir / ("trajectory_T" + tag + ".csv"), trajectories[i], 10);
        write_msd_csv(dir / ("msd_T" + tag + ".csv"), trajectories[i].t,
                      analysis::msd(trajectories[i]));
        diags[i]["temperature_over_ep"] = cfg.sweep.temperatures_over_ep[i];
        diag["runs"].push_back(diags[i]);
    }
}

void run_fig4(const config::RunConfig& cfg, const RunContext& rc, const fs::path& dir,
              const RunOptions& options, json& diag)
{
    const int count = static_cast<int>(cfg.sweep.temperatures_over_ep.size());
    struct Row {
        double t_over_ep = 0.0;
        analysis::FitResult full, late;
    };
    std::vector<Row> rows(count);
    std::vector<json> diags(count);
    parallel_for(count, options.threads, [&](int i) {
        auto kr = make_kernel(rc, cfg.sweep.temperatures_over_ep[i], 0.0, cfg.solver.t_final,
                              cfg.solver.dt);
        gme::SolverOptions opt;
        opt.n_sites = cfg.solver.n_sites;
        opt.t_final = cfg.solver.t_final;
        const auto traj = gme::solve_gme(kr.kernel, opt);
        const auto l2 = analysis::msd(traj);
        const double t_evol = cfg.solver.t_final;
        rows[i].t_over_ep = cfg.sweep.temperatures_over_ep[i];
        // Full window starts past the first few steps (log fit excludes t = 0).
        rows[i].full = analysis::fit_power_law(traj.t, l2, t_evol / 20.0, t_evol);
        rows[i].late = analysis::fit_power_law(traj.t, l2, t_evol / 2.0, t_evol);
        diags[i] = kernel_diag(kr);
    });
    CsvWriter csv(dir / "alpha_vs_T.csv", "T_over_Ep,alpha_full,alpha_late,A_full,A_late");
    for (int i = 0; i < count; ++i) {
        csv.row({num(rows[i].t_over_ep), num(rows[i].full.alpha), num(rows[i].late.alpha),
                 num(rows[i].full.a), num(rows[i].late.a)});
        diags[i]["temperature_over_ep"] = rows[i].t_over_ep;
        diag["runs"].push_back(diags[i]);
    }
}

void run_fig5(const config::RunConfig& cfg, const RunContext& rc, const fs::path& dir,
              const RunOptions& options, json& diag)
{
    const auto& temps = cfg.sweep.temperatures_over_ep;
    const auto& tilts = cfg.sweep.tilts;
    const int n_temp = static_cast<int>(temps.size());
    const int n_tilt = static_cast<int>(tilts.size());
    std::vector<double> vd(n_temp * n_tilt, 0.0);
    std::vector<double> jt(n_temp, 1.0);
    parallel_for(n_temp * n_tilt, options.threads, [&](int idx) {
        const int it = idx / n_tilt;
        const int iw = idx % n_tilt;
        auto kr = make_kernel(rc, temps[it], tilts[iw], cfg.solver.t_final, cfg.solver.dt);
        gme::SolverOptions opt;
        opt.n_sites = cfg.solver.n_sites;
        opt.t_final = cfg.solver.t_final;
        const auto traj = gme::solve_gme(kr.kernel, opt);
        vd[idx] = analysis::drift_velocity(traj, cfg.sweep.t_d);
        if (iw == 0) jt[it] = kr.kernel.jt_over_j;
    });

    CsvWriter fit_csv(dir / "esaki_fit.csv", "T_over_Ep,tau_over_tau0,gamma,residual");
    for (int it = 0; it < n_temp; ++it) {
        CsvWriter iv(dir / ("iv_curve_T" + temp_tag(temps[it]) + ".csv"),
                     "omegaB_hbar_over_J,vd_over_v0");
        std::vector<std::pair<double, double>> points;
        for (int iw = 0; iw < n_tilt; ++iw) {
            iv.row({num(tilts[iw]), num(vd[it * n_tilt + iw])});
            // omega_B in 1/tau0 units so tau comes out in tau0 = hbar/gn0.
            points.emplace_back(tilts[iw] * rc.scales.hopping_gn0, vd[it * n_tilt + iw]);
        }
        const auto fit = analysis::fit_esaki_tsu(points, jt[it]);
        fit_csv.row({num(temps[it]), num(fit.tau), num(fit.gamma), num(fit.residual_norm)});
        diag["fits"].push_back({{"temperature_over_ep", temps[it]},
                                {"tau_over_tau0", fit.tau},
                                {"gamma", fit.gamma},
                                {"residual", fit.residual_norm},
                                {"converged", fit.converged},
                                {"jt_over_j", jt[it]}});
    }
}

void emit_plot_scripts(const config::RunConfig& cfg, const fs::path& dir)
{
    std::ofstream gp(dir / "plot.gp");
    gp << "# gnuplot script consuming the CSVs in this directory\n"
          "set datafile separator ','\n"
          "set key autotitle columnhead\n";
    if (cfg.mode == "fig4") {
        gp << "set xlabel 'k_B T / E_p'\nset ylabel 'alpha'\n"
              "plot 'alpha_vs_T.csv' using 1:2 with lines, '' using 1:3 with lines\n";
    } else if (cfg.mode == "fig5") {
        gp << "set logscale x\nset xlabel 'hbar omega_B / J'\nset ylabel 'v_d / v_0'\n"
              "plot ";
        bool first = true;
        for (double t : cfg.sweep.temperatures_over_ep) {
            gp << (first ? "" : ", ") << "'iv_curve_T" << temp_tag(t)
               << ".csv' using 1:2 with linespoints";
            first = false;
        }
        gp << "\n";
    } else {
        gp << "set xlabel 't (hbar/J)'\nset ylabel 'l2'\n"
              "plot 'msd.csv' using 1:2 with lines\n";
    }
}

}  // namespace

void run(const config::RunConfig& cfg, const RunOptions& options)
{
    cfg.validate();
    if (options.out_dir.empty())
        throw config::ConfigError("runner: output directory not resolved");
    const fs::path dir(options.out_dir);
    if (fs::exists(dir / "manifest.json") && !options.force)
        throw config::ConfigError("output directory " + dir.string() +
                                  " already holds a run; pass --force to overwrite");
    fs::create_directories(dir);

    config::RunConfig effective = cfg;
    if (options.tol > 0.0) {
        effective.solver.grid_tol = options.tol;
        effective.solver.kernel_tol = options.tol;
    }
    const RunContext rc = make_context(effective, options.tol);

    const auto start = std::chrono::steady_clock::now();
    json diag;
    if (cfg.mode == "gme") run_gme(effective, rc, dir, diag);
    else if (cfg.mode == "coupling") run_coupling(effective, rc, dir, diag);
    else if (cfg.mode == "selftrap") run_selftrap(effective, rc, dir, diag);
    else if (cfg.mode == "selftrap-appc") run_selftrap_appc(dir, diag);
    else if (cfg.mode == "fig3") run_fig3(effective, rc, dir, options, diag);
    else if (cfg.mode == "fig4") run_fig4(effective, rc, dir, options, diag);
    else if (cfg.mode == "fig5") run_fig5(effective, rc, dir, options, diag);
    else throw config::ConfigError("runner: unknown mode '" + cfg.mode + "'");

    if (cfg.output.emit_plots) emit_plot_scripts(effective, dir);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_manifest(dir, effective, rc, diag, wall);
}

}  // namespace polaron::runner
