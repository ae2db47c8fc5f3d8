#pragma once

#include <string>

#include "polaron/config.hpp"

namespace polaron::runner {

struct RunOptions {
    std::string out_dir;   // resolved output directory (must be non-empty)
    bool force = false;    // allow writing into an existing run directory
    int threads = 0;       // 0 = hardware concurrency
    double tol = 0.0;      // 0 = keep config tolerances
};

// Executes the configured experiment and writes CSV outputs plus
// manifest.json into options.out_dir. Throws config::ConfigError for
// validation problems (exit 2) and std::runtime_error for solver-invariant
// failures (exit 3).
void run(const config::RunConfig& cfg, const RunOptions& options);

}  // namespace polaron::runner
