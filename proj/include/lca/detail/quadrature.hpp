#pragma once

// Gauss-Legendre rules and panel-based 1D quadrature helpers.

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace lca {

struct GaussRule {
    std::vector<double> x;  // nodes on [-1, 1]
    std::vector<double> w;
};

// Nodes by Newton iteration on the Legendre recurrence. Cached per order.
inline const GaussRule& gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
    static std::map<int, GaussRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    GaussRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.x[i] = -x;
        rule.x[n - 1 - i] = x;
        rule.w[i] = w;
        rule.w[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.x[n / 2] = 0.0;
    return cache.emplace(n, std::move(rule)).first->second;
}

// integral of f over [a, b] with an n-point rule
template <class F>
auto gauss(F&& f, double a, double b, int n) {
    const auto& r = gauss_legendre(n);
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    using R = decltype(f(a));
    R acc{};
    for (int i = 0; i < n; ++i) acc += r.w[i] * f(c + h * r.x[i]);
    return acc * h;
}

// integral over [a, b] split into panels of width at most `dx`, n-point rule per panel
template <class F>
auto panel_quad(F&& f, double a, double b, double dx, int n = 8) {
    using R = decltype(f(a));
    if (!(b > a)) return R{};
    int panels = std::max(1, (int)std::ceil((b - a) / dx));
    const double h = (b - a) / panels;
    R acc{};
    for (int k = 0; k < panels; ++k) acc += gauss(f, a + k * h, a + (k + 1) * h, n);
    return acc;
}

// Quadrature on the whole line for integrands decaying like (lambda+|s|)^-(1+eps):
// fixed panels on [-core, core], geometrically growing panels out to where the
// declared envelope makes the remaining tail negligible relative to `scale`.
template <class F>
auto line_quad_decay(F&& f, double lambda, double eps, double tail_rel, double scale = 1.0,
                     double panel = 0.5, int n = 8, double max_panel = 1e300) {
    using R = decltype(f(0.0));
    const double core = 8.0 * lambda;
    R acc = panel_quad(f, -core, core, std::min(panel * lambda, max_panel), n);
    // s_max from envelope: tail ~ (lambda+S)^(-eps)/eps
    double smax = lambda * (std::pow(1.0 / (tail_rel * std::max(eps, 0.1)), 1.0 / std::max(eps, 0.1)) + 1.0);
    smax = std::max(smax, 2.0 * core);
    double lo = core;
    while (lo < smax) {
        double width = std::min(0.5 * lo, max_panel);
        double hi = std::min(smax, lo + std::max(width, panel * lambda));
        acc += gauss(f, lo, hi, 2 * n);
        acc += gauss(f, -hi, -lo, 2 * n);
        lo = hi;
    }
    (void)scale;
    return acc;
}

// trapezoid on a periodic interval [0, P) with n nodes (spectral for smooth periodic f)
template <class F>
auto periodic_trapezoid(F&& f, double period, int n) {
    using R = decltype(f(0.0));
    R acc{};
    const double h = period / n;
    for (int i = 0; i < n; ++i) acc += f(i * h);
    return acc * h;
}

}  // namespace lca
