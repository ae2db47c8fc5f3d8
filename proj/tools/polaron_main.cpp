// Command-line front end: figure presets, single-run modes, and TOML-driven
// runs. Exit codes: 0 success, 2 validation error, 3 solver-invariant failure.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "polaron/config.hpp"
#include "polaron/runner.hpp"

namespace {

std::string resolve_out_dir(const std::string& flag_out, const std::string& cfg_dir,
                            const std::string& mode)
{
    if (!flag_out.empty()) return flag_out;
    std::string root = ".";
    if (const char* env = std::getenv("POLARON_OUT"); env && *env) root = env;
    if (!cfg_dir.empty()) return root + "/" + cfg_dir;
    return root + "/" + mode;
}

int execute(const polaron::config::RunConfig& cfg, const polaron::runner::RunOptions& base)
{
    polaron::runner::RunOptions options = base;
    options.out_dir = resolve_out_dir(base.out_dir, cfg.output.directory, cfg.mode);
    try {
        polaron::runner::run(cfg, options);
    } catch (const polaron::config::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    std::cout << "wrote " << options.out_dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"strong-coupling polaron transport in a tilted optical lattice"};
    app.require_subcommand(1);

    polaron::runner::RunOptions options;
    app.add_option("--out", options.out_dir, "output directory (default $POLARON_OUT/<mode>)");
    app.add_flag("--force", options.force, "overwrite an existing run directory");
    app.add_option("--threads", options.threads, "worker threads for sweeps (0 = all cores)");
    app.add_option("--tol", options.tol, "override grid/kernel relative tolerance");

    for (const std::string name : {"fig3", "fig4", "fig5", "selftrap-appc", "gme",
                                   "coupling", "selftrap"})
        app.add_subcommand(name)->fallthrough();

    std::string config_path;
    auto* run_cmd = app.add_subcommand("run", "execute a TOML run configuration");
    run_cmd->fallthrough();
    run_cmd->add_option("config", config_path, "path to config.toml")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        const auto* sub = app.get_subcommands().front();
        polaron::config::RunConfig cfg;
        if (sub->get_name() == "run")
            cfg = polaron::config::load_config(config_path);
        else
            cfg = polaron::config::preset(sub->get_name());
        return execute(cfg, options);
    } catch (const polaron::config::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
