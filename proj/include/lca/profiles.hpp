#pragma once

// Null-data profiles b(s,l) and their smoothness-and-decay classes: t-gauge
// evaluation with analytic s-derivatives, extension by homogeneity, decay
// validation, the jump Δb, frequency splitting, and the scaled smearing
// kernels g_R^eta.

#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "lca/detail/fft.hpp"
#include "lca/detail/interp.hpp"
#include "lca/detail/quadrature.hpp"
#include "lca/geometry.hpp"

namespace lca {

/// Smooth function f(s, n̂) in the t-gauge together with the metadata of its
/// decay class: |∂_s^m f| <= const_m (λ+|s|)^{-(m+1+ε)}. Profiles with
/// nonzero limits at s -> ±∞ (null data b) set `has_limits`; the decay class
/// then applies to ∂_s b and higher derivatives.
struct NullProfile {
    std::function<cplx(int m, double s, const Vec3& n)> deriv;
    int max_analytic_deriv = 2;
    double eps = 1.0;
    double lambda = 1.0;
    int degree = -1;  // homogeneity degree of the extension
    std::vector<double> decay_constants;

    bool has_limits = false;
    std::function<cplx(const Vec3& n)> limit_plus, limit_minus;

    bool angular_independent = false;
    bool axisymmetric = false;  // depends on n̂ only through n̂_z

    // closed-form transform of ∂_s f ... see fourier_order; f̃(ω,n̂) with the
    // convention f̃(ω) = (1/2π) ∫ e^{iωs} f(s) ds
    std::function<cplx(double w, const Vec3& n)> fourier;
    int fourier_order = 0;  // the derivative order `fourier` transforms
    double omega_max = 16.0;

    std::string name;

    cplx value(int m, double s, const Vec3& n) const {
        if (m <= max_analytic_deriv) return deriv(m, s, n);
        // central-difference fallback on the highest analytic order
        int extra = m - max_analytic_deriv;
        double h = 1e-3 * lambda;
        std::function<cplx(int, double)> fd = [&](int k, double s0) -> cplx {
            if (k == 0) return deriv(max_analytic_deriv, s0, n);
            return (fd(k - 1, s0 + h) - fd(k - 1, s0 - h)) / (2.0 * h);
        };
        return fd(extra, s);
    }

    cplx operator()(double s, const Vec3& n) const { return value(0, s, n); }
};

/// (t·l)^n p(s/(t·l), l̂-direction): the extension by homogeneity evaluated at
/// a general point of R x C+.
inline cplx extend_homogeneous(const NullProfile& p, double s, const FourVector& l, int m = 0) {
    if (!is_null(l)) throw std::invalid_argument("extend_homogeneous: l is not null");
    double tl = l.t;  // t·l in the lab frame
    if (!(tl > 0)) throw std::invalid_argument("extend_homogeneous: l is not future-pointing");
    // ∂_s^m of a degree-n function is homogeneous of degree n-m
    return std::pow(tl, p.degree - m) * p.value(m, s / tl, normalized(l.s));
}

/// Profile of ∂_s^m p with the Def-1 class bookkeeping (degree n-m, decay
/// exponent ε+m for the standalone function).
inline NullProfile s_derivative(const NullProfile& p, int m) {
    if (m == 0) return p;
    NullProfile q = p;
    q.deriv = [base = p, m](int k, double s, const Vec3& n) { return base.value(k + m, s, n); };
    q.max_analytic_deriv = std::max(0, p.max_analytic_deriv - m);
    q.degree = p.degree - m;
    q.has_limits = false;
    q.limit_plus = nullptr;
    q.limit_minus = nullptr;
    if (p.has_limits) {
        // decay class was declared for ∂_s p
        q.eps = p.eps + (m - 1);
    } else {
        q.eps = p.eps + m;
    }
    if ((std::size_t)m < p.decay_constants.size())
        q.decay_constants.assign(p.decay_constants.begin() + m, p.decay_constants.end());
    else
        q.decay_constants.clear();
    if (p.fourier && m >= p.fourier_order) {
        // parent's `fourier` transforms ∂^{fourier_order} p; the new order-0
        // function is ∂^m p, transform (-iω)^{m - order} times the parent's
        int extra = m - p.fourier_order;
        q.fourier = [base = p.fourier, extra](double w, const Vec3& n) {
            return std::pow(cplx(0.0, -w), extra) * base(w, n);
        };
        q.fourier_order = 0;
    } else {
        q.fourier = nullptr;
        q.fourier_order = 0;
    }
    q.name = p.name + "'";
    return q;
}

/// Δb(n̂) = b(+∞,n̂) - b(-∞,n̂) = ∫ ∂_s b ds, by adaptive truncated quadrature.
inline cplx delta_b(const NullProfile& p, const Vec3& n) {
    if (!(p.eps > 0)) throw std::invalid_argument("delta_b: declared decay exponent must be positive");
    double eps_bdot = p.has_limits ? p.eps : p.eps + 1.0;  // decay class of ∂_s p
    return line_quad_decay([&](double s) { return p.value(1, s, n); }, p.lambda, eps_bdot, 1e-12);
}

inline cplx b_out(const NullProfile& p, double s, const Vec3& n) {
    if (!p.has_limits) throw std::invalid_argument("b_out: profile has no declared limits");
    return p.value(0, s, n) - p.limit_plus(n);
}

inline cplx b_in(const NullProfile& p, double s, const Vec3& n) {
    if (!p.has_limits) throw std::invalid_argument("b_in: profile has no declared limits");
    return -p.value(0, s, n) + p.limit_minus(n);
}

// ----------------------------------------------------------------------------
// Decay validation (Def-1 bounds on a finite stencil).

struct DecayRow {
    int m;                  // s-derivative order
    int angular_order;      // number of L_ab applications (0..2)
    double max_ratio;       // max |D f| (λ+|s|)^{m+1+ε} over the grid
    double declared;        // declared constant (0 if none)
    bool flagged;
};

struct DecayReport {
    std::vector<DecayRow> rows;
    bool ok = true;
};

/// Measures |∂_s^m f|(λ+|s|)^{m+1+ε} (angular variants via rotation finite
/// differences, all 3 generators, orders <= 2) and flags ratios exceeding the
/// declared constants by more than 5%.
inline DecayReport validate_decay(const NullProfile& p, int m_max, int n_s = 41, int n_dir = 6) {
    DecayReport rep;
    std::vector<double> svals;
    for (int i = 0; i < n_s; ++i) {
        double u = -1.0 + 2.0 * i / (n_s - 1);
        svals.push_back(40.0 * p.lambda * u * u * u);  // clustered near 0, reaching ±40λ
    }
    std::vector<Vec3> dirs;
    for (int i = 0; i < n_dir; ++i) {
        double th = M_PI * (i + 0.5) / n_dir;
        dirs.push_back({std::sin(th), 0.0, std::cos(th)});
    }
    const int gens[3][2] = {{1, 2}, {1, 3}, {2, 3}};
    int m0 = p.has_limits ? 1 : 0;
    for (int m = m0; m <= m_max; ++m) {
        for (int ord = 0; ord <= 2; ++ord) {
            double worst = 0.0;
            for (double s : svals)
                for (auto& n : dirs) {
                    double expo = (m - m0) + 1.0 + p.eps;
                    auto base = [&](const Vec3& nn) { return p.value(m, s, nn); };
                    double val;
                    if (ord == 0) {
                        val = std::abs(base(n));
                    } else if (ord == 1) {
                        val = 0.0;
                        for (auto& g : gens)
                            val = std::max(val, std::abs(rotation_derivative(base, n, g[0], g[1], 1e-4)));
                    } else {
                        val = 0.0;
                        for (auto& g1 : gens)
                            for (auto& g2 : gens) {
                                auto once = [&](const Vec3& nn) {
                                    return rotation_derivative(base, nn, g1[0], g1[1], 1e-4);
                                };
                                val = std::max(val, std::abs(rotation_derivative(once, n, g2[0], g2[1], 1e-4)));
                            }
                    }
                    worst = std::max(worst, val * std::pow(p.lambda + std::abs(s), expo));
                }
            DecayRow row;
            row.m = m;
            row.angular_order = ord;
            row.max_ratio = worst;
            row.declared = (ord == 0 && (std::size_t)(m - m0) < p.decay_constants.size())
                               ? p.decay_constants[m - m0]
                               : 0.0;
            row.flagged = row.declared > 0 && worst > 1.05 * row.declared;
            rep.ok = rep.ok && !row.flagged;
            rep.rows.push_back(row);
        }
    }
    return rep;
}

// ----------------------------------------------------------------------------
// Frequency splitting: spectrum multiplier e^{∓ikπ/2} θ(±ω) |ω|^k.

struct SplitOptions {
    double s_max = 64.0;        // in units of λ
    int log2_n = 14;
    double tail_threshold = 1e-8;  // max tolerated top-octave spectral mass fraction
    int n_costheta = 65;           // rings for axisymmetric profiles
};

namespace detail {

struct SplitGrid {
    double s0, ds;
    std::vector<UniformGridInterp<cplx>> rings;  // one per cos(theta) node (or single)
    std::vector<double> ct;                      // cos(theta) grid for rings
};

}  // namespace detail

/// Splits the profile into its positive/negative energy-transfer part:
/// spectrum multiplied by e^{∓ikπ/2} θ(±ω) |ω|^k (half weight at the ω = 0 bin
/// for k = 0, so that the two k = 0 parts add back to the profile exactly on
/// the grid). Returns a grid-backed profile.
inline NullProfile frequency_split(const NullProfile& p, int sign, double k,
                                   const SplitOptions& opt = {}) {
    if (sign != +1 && sign != -1) throw std::invalid_argument("frequency_split: sign must be ±1");
    if (!(k >= 0)) throw std::invalid_argument("frequency_split: k must be >= 0");
    if (!p.angular_independent && !p.axisymmetric)
        throw std::invalid_argument("frequency_split: profile must be angular-independent or axisymmetric");

    const std::size_t n = (std::size_t)1 << opt.log2_n;
    const double S = opt.s_max * p.lambda;
    const double ds = 2.0 * S / (double)n;
    const double dw = 2.0 * M_PI / (n * ds);

    auto grid = std::make_shared<detail::SplitGrid>();
    grid->s0 = -S;
    grid->ds = ds;
    int n_rings = p.angular_independent ? 1 : opt.n_costheta;
    for (int j = 0; j < n_rings; ++j) {
        double c = p.angular_independent ? 1.0 : -1.0 + 2.0 * j / (n_rings - 1);
        grid->ct.push_back(c);
        Vec3 dir = p.angular_independent
                       ? Vec3{0, 0, 1}
                       : Vec3{std::sqrt(std::max(0.0, 1.0 - c * c)), 0.0, c};
        std::vector<cplx> a(n);
        for (std::size_t i = 0; i < n; ++i) a[i] = p.value(0, grid->s0 + i * ds, dir);
        fft_inplace(a, +1);  // with e^{+iωs}: matches f̃(ω) = (1/2π)∫e^{iωs} f ds up to ds/2π
        // spectral tail check: energy in the top octave of |ω|
        double total = 0, tail = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double e = std::norm(a[i]);
            total += e;
            std::size_t fi = i <= n / 2 ? i : n - i;
            if (fi >= n / 4) tail += e;
        }
        if (total > 0 && tail / total > opt.tail_threshold)
            throw std::runtime_error("frequency_split: s-grid too coarse, spectral tail mass fraction " +
                                     std::to_string(tail / total));
        // multiplier per frequency bin
        const cplx phase = std::exp(cplx(0.0, -sign * k * M_PI / 2.0));
        for (std::size_t i = 0; i < n; ++i) {
            double w = (i <= n / 2 ? (double)i : (double)i - (double)n) * dw;
            cplx mult;
            if (i == 0 || i == n / 2) {
                mult = (k == 0.0) ? cplx(0.5) : cplx(0.0);
                if (k > 0.0 && i == n / 2) mult = 0.5 * phase * std::pow(std::abs(w), k);
            } else if ((sign > 0 && w > 0) || (sign < 0 && w < 0)) {
                mult = phase * std::pow(std::abs(w), k);
            } else {
                mult = 0.0;
            }
            a[i] *= mult;
        }
        fft_inplace(a, -1);
        // phase alignment: grid starts at s0, FFT assumes index origin
        // (handled by symmetry: the forward/backward pair above is exact on the
        // grid because the shift phases cancel between the two transforms for
        // any diagonal spectral multiplier)
        UniformGridInterp<cplx> interp;
        interp.x0 = grid->s0;
        interp.dx = ds;
        interp.y.assign(a.begin(), a.end());
        for (auto& v : interp.y) v /= (double)n;
        grid->rings.push_back(std::move(interp));
    }

    NullProfile out;
    out.lambda = p.lambda;
    out.eps = (k == 0.0) ? std::min(p.eps, 1.0) : std::min(p.eps, 1.0);  // split degrades decay
    out.degree = p.degree - (int)std::lround(k);
    out.max_analytic_deriv = 0;
    out.angular_independent = p.angular_independent;
    out.axisymmetric = p.axisymmetric;
    out.name = p.name + (sign > 0 ? "+" : "-");
    out.deriv = [grid, ai = p.angular_independent](int m, double s, const Vec3& n) -> cplx {
        if (m != 0)  // higher orders go through the finite-difference fallback in value()
            throw std::invalid_argument("frequency_split profile: only order-0 evaluation supported");
        if (ai) return grid->rings[0](s);
        double c = std::clamp(n.z, -1.0, 1.0);
        double u = (c + 1.0) * 0.5 * (grid->ct.size() - 1);
        std::size_t j = std::min((std::size_t)u, grid->ct.size() - 2);
        double t = u - j;
        return (1.0 - t) * grid->rings[j](s) + t * grid->rings[j + 1](s);
    };
    // transform of the split profile, when the parent has one
    if (p.fourier && p.fourier_order == 0) {
        auto base = p.fourier;
        cplx phase = std::exp(cplx(0.0, -sign * k * M_PI / 2.0));
        out.fourier = [base, sign, k, phase](double w, const Vec3& n) -> cplx {
            if ((sign > 0 && w <= 0) || (sign < 0 && w >= 0)) return 0.0;
            return phase * std::pow(std::abs(w), k) * base(w, n);
        };
        out.fourier_order = 0;
    }
    out.omega_max = p.omega_max;
    return out;
}

// ----------------------------------------------------------------------------
// Smearing kernels g and the scaling family g_R^eta.

/// Smooth real kernel with compact support in (0,∞) and ∫g = 1, hence
/// g̃(0) = 1/(2π).
struct GKernel {
    std::function<double(double)> g;
    std::function<double(double)> dg;
    double tau1 = 0.5, tau2 = 1.5;

    double operator()(double r) const { return r > tau1 && r < tau2 ? g(r) : 0.0; }

    // g̃(u) = (1/2π) ∫ e^{iur} g(r) dr, resolved against both the phase
    // oscillation and the steep kernel edges
    cplx tilde(double u) const {
        int panels = std::max(32, (int)std::ceil(std::abs(u) * (tau2 - tau1) / 1.5));
        panels = std::min(panels, 100000);
        return panel_quad([&](double r) { return std::exp(cplx(0.0, u * r)) * g(r); }, tau1, tau2,
                          (tau2 - tau1) / panels, 10) /
               (2.0 * M_PI);
    }
};

/// Reference bump kernel on [1/2, 3/2], normalized to unit integral.
inline GKernel bump_kernel() {
    // phi(v) = exp(-1/(1-v^2)) on (-1,1)
    auto phi = [](double v) { return std::abs(v) < 1.0 ? std::exp(-1.0 / (1.0 - v * v)) : 0.0; };
    auto dphi = [phi](double v) {
        if (std::abs(v) >= 1.0) return 0.0;
        double d = 1.0 - v * v;
        return phi(v) * (-2.0 * v / (d * d));
    };
    double Z = panel_quad([&](double r) { return phi(2.0 * (r - 1.0)); }, 0.5, 1.5, 0.01, 8);
    GKernel k;
    k.tau1 = 0.5;
    k.tau2 = 1.5;
    k.g = [phi, Z](double r) { return phi(2.0 * (r - 1.0)) / Z; };
    k.dg = [dphi, Z](double r) { return 2.0 * dphi(2.0 * (r - 1.0)) / Z; };
    return k;
}

/// g_R^eta(r) = w^{-1} g(w^{-1}(r-R)+1), w = λ (R/λ)^eta. For eta = 1 this is
/// R^{-1} g(R^{-1} r).
struct ScaledG {
    GKernel base;
    double R = 1, eta = 1, lambda = 1, w = 1;

    double operator()(double r) const { return base((r - R) / w + 1.0) / w; }
    double support_lo() const { return R + (base.tau1 - 1.0) * w; }
    double support_hi() const { return R + (base.tau2 - 1.0) * w; }

    // g̃_R^eta(u) = e^{i(R-w)u} g̃(wu)
    cplx tilde(double u) const { return std::exp(cplx(0.0, (R - w) * u)) * base.tilde(w * u); }
};

inline ScaledG scaled_g(const GKernel& g, double R, double eta, double lambda = 1.0) {
    if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("scaled_g: eta must be in (0,1]");
    if (!(R > lambda)) throw std::invalid_argument("scaled_g: R must exceed lambda");
    ScaledG s;
    s.base = g;
    s.R = R;
    s.eta = eta;
    s.lambda = lambda;
    s.w = lambda * std::pow(R / lambda, eta);
    return s;
}

// ----------------------------------------------------------------------------
// Presets.

namespace detail {

inline double sech(double u) { return 1.0 / std::cosh(u); }

// smooth cap: exp(1 - 1/v) on v in (0,1], 0 for v <= 0, where v measures the
// depth into the cap
inline double cap_bump(double v) { return v > 0.0 ? std::exp(1.0 - 1.0 / v) : 0.0; }

inline std::vector<double> scan_decay_constants(const NullProfile& p, int m_max) {
    std::vector<double> consts;
    int m0 = p.has_limits ? 1 : 0;
    for (int m = m0; m <= m_max; ++m) {
        double worst = 0.0;
        for (int i = 0; i <= 400; ++i) {
            double s = -60.0 * p.lambda + i * (120.0 * p.lambda / 400.0);
            for (double c : {-0.9, -0.3, 0.4, 1.0}) {
                Vec3 n{std::sqrt(std::max(0.0, 1.0 - c * c)), 0.0, c};
                worst = std::max(worst, std::abs(p.value(m, s, n)) *
                                            std::pow(p.lambda + std::abs(s), (m - m0) + 1.0 + p.eps));
            }
        }
        consts.push_back(worst);
    }
    return consts;
}

}  // namespace detail

/// Null-data presets ("tanh", "gauss_bump", "arctan_angular",
/// "compact_angular_pair_a"/"_b"). The first three carry s -> ±∞ limits and
/// drive fields; the compact pair are decaying kernels with disjoint angular
/// supports.
inline NullProfile profile_preset(const std::string& name, double lambda = 1.0) {
    NullProfile p;
    p.lambda = lambda;
    p.name = name;
    if (name == "tanh") {
        p.deriv = [lambda](int m, double s, const Vec3&) -> cplx {
            double u = s / lambda, T = std::tanh(u), S2 = 1.0 - T * T;
            double il = 1.0 / lambda;
            switch (m) {
                case 0: return T;
                case 1: return il * S2;
                case 2: return -2.0 * il * il * S2 * T;
                case 3: return il * il * il * (4.0 * S2 * T * T - 2.0 * S2 * S2);
                case 4: return il * il * il * il * (-8.0 * S2 * T * T * T + 16.0 * S2 * S2 * T);
            }
            throw std::invalid_argument("tanh preset: derivative order > 4");
        };
        p.max_analytic_deriv = 4;
        p.eps = 3.0;
        p.degree = -1;
        p.has_limits = true;
        p.limit_plus = [](const Vec3&) { return cplx(1.0); };
        p.limit_minus = [](const Vec3&) { return cplx(-1.0); };
        p.angular_independent = true;
        p.axisymmetric = true;
        // transform of ∂_s b: λω / (2 sinh(πλω/2)), value 1/π at ω = 0
        p.fourier = [lambda](double w, const Vec3&) -> cplx {
            double x = M_PI * lambda * w / 2.0;
            if (std::abs(x) < 1e-8) return cplx(1.0 / M_PI * (1.0 - x * x / 6.0));
            return cplx(lambda * w / (2.0 * std::sinh(x)));
        };
        p.fourier_order = 1;
        p.omega_max = 26.0 / lambda;
    } else if (name == "gauss_bump") {
        p.deriv = [lambda](int m, double s, const Vec3&) -> cplx {
            double u = s / lambda, e = std::exp(-0.5 * u * u);
            double he;
            switch (m) {
                case 0: he = 1.0; break;
                case 1: he = u; break;
                case 2: he = u * u - 1.0; break;
                case 3: he = u * (u * u - 3.0); break;
                case 4: he = u * u * (u * u - 6.0) + 3.0; break;
                default: throw std::invalid_argument("gauss preset: derivative order > 4");
            }
            double sign = (m % 2 == 0) ? 1.0 : -1.0;
            return sign * he * e / std::pow(lambda, m);
        };
        p.max_analytic_deriv = 4;
        p.eps = 5.0;
        p.degree = -1;
        p.has_limits = true;
        p.limit_plus = [](const Vec3&) { return cplx(0.0); };
        p.limit_minus = [](const Vec3&) { return cplx(0.0); };
        p.angular_independent = true;
        p.axisymmetric = true;
        p.fourier = [lambda](double w, const Vec3&) -> cplx {
            // ∂_s b transform: -iω λ/√(2π) e^{-λ²ω²/2}
            return cplx(0.0, -w) * lambda / std::sqrt(2.0 * M_PI) * std::exp(-0.5 * lambda * lambda * w * w);
        };
        p.fourier_order = 1;
        p.omega_max = 12.0 / lambda;
    } else if (name == "arctan_angular") {
        auto ang = [](const Vec3& n) { return 1.0 + 0.5 * n.z; };
        p.deriv = [lambda, ang](int m, double s, const Vec3& n) -> cplx {
            double u = s / lambda, d = 1.0 + u * u, a = ang(n);
            double v;
            switch (m) {
                case 0: return a * std::atan(u);
                case 1: v = 1.0 / d; break;
                case 2: v = -2.0 * u / (d * d); break;
                case 3: v = (6.0 * u * u - 2.0) / (d * d * d); break;
                case 4: v = (24.0 * u - 24.0 * u * u * u) / (d * d * d * d); break;
                default: throw std::invalid_argument("arctan preset: derivative order > 4");
            }
            return a * v / std::pow(lambda, m);
        };
        p.max_analytic_deriv = 4;
        p.eps = 1.0;
        p.degree = -1;
        p.has_limits = true;
        p.limit_plus = [ang](const Vec3& n) { return cplx(M_PI / 2.0 * ang(n)); };
        p.limit_minus = [ang](const Vec3& n) { return cplx(-M_PI / 2.0 * ang(n)); };
        p.angular_independent = false;
        p.axisymmetric = true;
        p.fourier = [lambda, ang](double w, const Vec3& n) -> cplx {
            return cplx(0.5 * std::exp(-lambda * std::abs(w)) * ang(n));
        };
        p.fourier_order = 1;
        p.omega_max = 40.0 / lambda;
    } else if (name == "sigmoid_angular") {
        // primitive of the (1+u²)^{-2} kernel, normalized to limits ±1:
        // T(u) = (2/π)[u/(1+u²) + arctan u], ∂_s b in the ε = 3 class
        auto ang = [](const Vec3& n) { return 1.0 + 0.5 * n.z; };
        p.deriv = [lambda, ang](int m, double s, const Vec3& n) -> cplx {
            double u = s / lambda, d = 1.0 + u * u, a = ang(n);
            const double c = 4.0 / M_PI;
            double v;
            switch (m) {
                case 0: return a * (2.0 / M_PI) * (u / d + std::atan(u));
                case 1: v = c / (d * d); break;
                case 2: v = c * (-4.0 * u) / (d * d * d); break;
                case 3: v = c * (20.0 * u * u - 4.0) / (d * d * d * d); break;
                default: throw std::invalid_argument("sigmoid preset: derivative order > 3");
            }
            return a * v / std::pow(lambda, m);
        };
        p.max_analytic_deriv = 3;
        p.eps = 3.0;
        p.degree = -1;
        p.has_limits = true;
        p.limit_plus = [ang](const Vec3& n) { return cplx(ang(n)); };
        p.limit_minus = [ang](const Vec3& n) { return cplx(-ang(n)); };
        p.angular_independent = false;
        p.axisymmetric = true;
        p.fourier = [lambda, ang](double w, const Vec3& n) -> cplx {
            double aw = std::abs(w) * lambda;
            return cplx((1.0 / M_PI) * (1.0 + aw) * std::exp(-aw) * ang(n));
        };
        p.fourier_order = 1;
        p.omega_max = 40.0 / lambda;
    } else if (name == "compact_angular_pair_a" || name == "compact_angular_pair_b") {
        double sgn = (name.back() == 'a') ? 1.0 : -1.0;
        const double edge = 0.5;  // support |cap| on n̂_z·sgn > 1/2, i.e. polar caps of 60°
        auto cap = [sgn, edge](const Vec3& n) {
            return detail::cap_bump((sgn * n.z - edge) / (1.0 - edge));
        };
        p.deriv = [lambda, cap](int m, double s, const Vec3& n) -> cplx {
            double u = s / lambda, d = 1.0 + u * u;
            double v;
            switch (m) {
                case 0: v = 1.0 / (d * d); break;
                case 1: v = -4.0 * u / (d * d * d); break;
                case 2: v = (20.0 * u * u - 4.0) / (d * d * d * d); break;
                default: throw std::invalid_argument("compact pair preset: derivative order > 2");
            }
            return cap(n) * v / std::pow(lambda, m);
        };
        p.max_analytic_deriv = 2;
        p.eps = 3.0;
        p.degree = -2;
        p.has_limits = false;
        p.angular_independent = false;
        p.axisymmetric = true;
        p.fourier = [lambda, cap](double w, const Vec3& n) -> cplx {
            double aw = std::abs(w) * lambda;
            return cplx(lambda * 0.25 * (1.0 + aw) * std::exp(-aw) * cap(n));
        };
        p.fourier_order = 0;
        p.omega_max = 40.0 / lambda;
    } else {
        throw std::invalid_argument("unknown profile preset: " + name);
    }
    p.decay_constants = detail::scan_decay_constants(p, std::min(p.max_analytic_deriv, 3));
    return p;
}

/// Smearing-kernel presets: "rational" (f = (1+(s/λ)²)^{-2}, ε = 3) and
/// "b3gauss" (f = b³ for a gaussian b, vanishing spectrum at ω = 0).
inline NullProfile kernel_preset(const std::string& name, double lambda = 1.0) {
    NullProfile p;
    p.lambda = lambda;
    p.name = name;
    if (name == "rational") {
        p.deriv = [lambda](int m, double s, const Vec3&) -> cplx {
            double u = s / lambda, d = 1.0 + u * u;
            double v;
            switch (m) {
                case 0: v = 1.0 / (d * d); break;
                case 1: v = -4.0 * u / (d * d * d); break;
                case 2: v = (20.0 * u * u - 4.0) / (d * d * d * d); break;
                default: throw std::invalid_argument("rational kernel: derivative order > 2");
            }
            return v / std::pow(lambda, m);
        };
        p.max_analytic_deriv = 2;
        p.eps = 3.0;
        p.degree = -2;
        p.angular_independent = true;
        p.axisymmetric = true;
        p.fourier = [lambda](double w, const Vec3&) -> cplx {
            double aw = std::abs(w) * lambda;
            return cplx(lambda * 0.25 * (1.0 + aw) * std::exp(-aw));
        };
        p.fourier_order = 0;
        p.omega_max = 40.0 / lambda;
    } else if (name == "b3gauss") {
        p.deriv = [lambda](int m, double s, const Vec3&) -> cplx {
            double u = s / lambda, e = std::exp(-0.5 * u * u);
            double he;
            switch (m) {
                case 0: he = -u * (u * u - 3.0); break;                  // -He3
                case 1: he = u * u * (u * u - 6.0) + 3.0; break;         // He4
                case 2: he = -u * (u * u * u * u - 10.0 * u * u + 15.0); break;  // -He5
                default: throw std::invalid_argument("b3gauss kernel: derivative order > 2");
            }
            return he * e / std::pow(lambda, m + 3);
        };
        p.max_analytic_deriv = 2;
        p.eps = 5.0;
        p.degree = -2;
        p.angular_independent = true;
        p.axisymmetric = true;
        p.fourier = [lambda](double w, const Vec3&) -> cplx {
            // (-iω)³ b̃(ω) = i ω³ λ/√(2π) e^{-λ²ω²/2}
            return cplx(0.0, 1.0) * w * w * w * lambda / std::sqrt(2.0 * M_PI) *
                   std::exp(-0.5 * lambda * lambda * w * w);
        };
        p.fourier_order = 0;
        p.omega_max = 12.0 / lambda;
    } else {
        throw std::invalid_argument("unknown kernel preset: " + name);
    }
    p.decay_constants = detail::scan_decay_constants(p, 2);
    return p;
}

/// Transform f̃(ω, n̂) of the profile's order-0 function: closed form when the
/// preset carries one, otherwise by direct oscillatory quadrature.
inline cplx profile_fourier(const NullProfile& p, double w, const Vec3& n) {
    if (p.fourier && p.fourier_order == 0) return p.fourier(w, n);
    if (p.fourier && p.fourier_order == 1) {
        // parent transform is of ∂_s: integrate down: f̃ = (∂̃f)/( -iω ) is not
        // defined at ω = 0 for profiles with a jump; fall through to quadrature
    }
    double dx = std::min(0.5 * p.lambda, 1.5 / std::max(std::abs(w), 1e-12));
    return line_quad_decay([&](double s) { return std::exp(cplx(0.0, w * s)) * p.value(0, s, n); },
                           p.lambda, p.eps, 1e-10, 1.0, dx / p.lambda, 8, dx) /
           (2.0 * M_PI);
}

}  // namespace lca
