#pragma once

// Convergence-analysis helpers: power-law fits, Richardson extrapolation,
// Kendall rank correlation.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace lca {

// least-squares slope of log|y| vs log x; y entries must be nonzero
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("loglog_slope: need >= 2 points");
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double lx = std::log(x[i]), ly = std::log(std::abs(y[i]));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

struct Extrapolation {
    double limit = 0.0;
    double rate = 0.0;        // fitted exponent of the residual decay in 1/r
    bool rate_reliable = true;
    std::vector<double> residuals;  // |a_k - limit|
};

// Polynomial extrapolation in h = 1/r to h = 0 (Neville), for sequences
// a(r) = A + c1/r + c2/r^2 + ...
inline Extrapolation richardson(const std::vector<double>& r, const std::vector<double>& a) {
    if (r.size() != a.size() || r.size() < 2) throw std::invalid_argument("richardson: need >= 2 points");
    const std::size_t n = r.size();
    std::vector<double> h(n);
    for (std::size_t i = 0; i < n; ++i) h[i] = 1.0 / r[i];
    std::vector<double> t(a);
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = n - 1; i >= j; --i) {
            t[i] = t[i] + (t[i] - t[i - 1]) * h[i] / (h[i - j] - h[i]);
            if (i == j) break;
        }
    Extrapolation out;
    out.limit = t[n - 1];
    out.residuals.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.residuals[i] = std::abs(a[i] - out.limit);
    // sequences already converged to roundoff carry no rate information
    double scale = std::max(1.0, std::abs(out.limit));
    if (out.residuals[0] < 1e-12 * scale) {
        out.rate = std::numeric_limits<double>::infinity();
        out.rate_reliable = true;
        return out;
    }
    // fitted decay exponent from the raw sequence against the limit
    bool monotone = true;
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (out.residuals[i + 1] > out.residuals[i]) monotone = false;
    std::vector<double> rr, res;
    for (std::size_t i = 0; i + 1 < n; ++i)   // drop the last (extrapolation-limited) residual
        if (out.residuals[i] > 0) {
            rr.push_back(r[i]);
            res.push_back(out.residuals[i]);
        }
    if (rr.size() >= 2) out.rate = -loglog_slope(rr, res);
    out.rate_reliable = monotone && rr.size() >= 2;
    return out;
}

// Kendall tau of y against the index order of x (x assumed strictly increasing)
inline double kendall_tau(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("kendall_tau: need >= 2 points");
    const std::size_t n = x.size();
    long concordant = 0, discordant = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double dx = x[j] - x[i], dy = y[j] - y[i];
            double s = dx * dy;
            if (s > 0) ++concordant;
            else if (s < 0) ++discordant;
        }
    return (double)(concordant - discordant) / (0.5 * n * (n - 1));
}

}  // namespace lca
