#include "polaron/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "polaron/constants.hpp"

namespace polaron::quadrature {

namespace {

// Newton iteration on the Legendre polynomial roots.
Rule build_rule(int n)
{
    Rule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(constants::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0;
            double p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::fabs(z - z1) < 1e-15) break;
        }
        rule.nodes[i] = -z;
        rule.nodes[n - 1 - i] = z;
        rule.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.weights[n - 1 - i] = rule.weights[i];
    }
    return rule;
}

}  // namespace

const Rule& gauss_legendre(int n)
{
    if (n < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
    static std::mutex mtx;
    static std::map<int, Rule> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
    return it->second;
}

void map_to_interval(const Rule& rule, double a, double b,
                     std::vector<double>& x, std::vector<double>& w)
{
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const std::size_t n = rule.nodes.size();
    x.resize(n);
    w.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = mid + half * rule.nodes[i];
        w[i] = half * rule.weights[i];
    }
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 int panels, int points_per_panel)
{
    const Rule& rule = gauss_legendre(points_per_panel);
    const double h = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        const double mid = lo + 0.5 * h;
        const double half = 0.5 * h;
        double acc = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
        total += half * acc;
    }
    return total;
}

double integrate_oscillatory(const std::function<double(double)>& f, double a,
                             double b, double max_panel_length,
                             int points_per_panel)
{
    if (max_panel_length <= 0.0)
        throw std::invalid_argument("integrate_oscillatory: panel length must be positive");
    const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / max_panel_length)));
    return integrate(f, a, b, panels, points_per_panel);
}

}  // namespace polaron::quadrature
