#pragma once

#include <functional>
#include <vector>

namespace polaron::quadrature {

struct Rule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

// Gauss-Legendre rule of order n (cached, thread-safe for distinct n after
// first use; typical callers use a handful of fixed orders).
const Rule& gauss_legendre(int n);

// Nodes/weights of an n-point rule mapped to [a, b].
void map_to_interval(const Rule& rule, double a, double b,
                     std::vector<double>& x, std::vector<double>& w);

// Composite Gauss-Legendre over [a, b] with `panels` equal panels of an
// n-point rule each.
double integrate(const std::function<double(double)>& f, double a, double b,
                 int panels, int points_per_panel = 16);

// Composite quadrature with panels no longer than max_panel_length; used for
// oscillatory integrands where the panel length tracks the half-period.
double integrate_oscillatory(const std::function<double(double)>& f, double a,
                             double b, double max_panel_length,
                             int points_per_panel = 16);

}  // namespace polaron::quadrature
