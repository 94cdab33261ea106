#pragma once

// Mixed-norm machinery on 4D grids: the L^{p,1} seminorm (L¹ in time of L^p
// space slices), the Hölder and Young inequalities it supports, the spacelike
// decay profile D_κ, the tail lemma for products of decaying functions, and
// the commutator bounding integral with its r-scaling regimes.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

#include "lca/detail/fft.hpp"
#include "lca/detail/fit.hpp"
#include "lca/detail/quadrature.hpp"
#include "lca/geometry.hpp"
#include "lca/profiles.hpp"

namespace lca {

/// Complex samples on a uniform centered 4D grid: x_mu = (n_mu - N/2) h_mu.
struct GridFunction4 {
    int n = 16;                       // points per axis (power of two)
    std::array<double, 4> h{1, 1, 1, 1};
    std::vector<cplx> data;           // row-major (x0, x1, x2, x3)
    int support_extent = 0;           // max |n_mu - N/2| over nonzero samples
    bool has_envelope = false;        // declared analytic decay beyond the box

    std::size_t idx(int i0, int i1, int i2, int i3) const {
        return (((std::size_t)i0 * n + i1) * n + i2) * n + i3;
    }
    double coord(int i, int mu) const { return (i - n / 2) * h[mu]; }
    double cell() const { return h[0] * h[1] * h[2] * h[3]; }
    double cell3() const { return h[1] * h[2] * h[3]; }

    static GridFunction4 from_function(int n, std::array<double, 4> h,
                                       const std::function<cplx(double, double, double, double)>& f,
                                       bool envelope = true) {
        if (!is_pow2(n)) throw std::invalid_argument("GridFunction4: n must be a power of two");
        GridFunction4 g;
        g.n = n;
        g.h = h;
        g.has_envelope = envelope;
        g.data.resize((std::size_t)n * n * n * n);
        double peak = 0;
        for (int i0 = 0; i0 < n; ++i0)
            for (int i1 = 0; i1 < n; ++i1)
                for (int i2 = 0; i2 < n; ++i2)
                    for (int i3 = 0; i3 < n; ++i3) {
                        cplx v = f(g.coord(i0, 0), g.coord(i1, 1), g.coord(i2, 2), g.coord(i3, 3));
                        g.data[g.idx(i0, i1, i2, i3)] = v;
                        peak = std::max(peak, std::abs(v));
                    }
        // effective support: samples below 1e-6 of the peak are treated as
        // numerically absent for the aliasing guard
        for (int i0 = 0; i0 < n; ++i0)
            for (int i1 = 0; i1 < n; ++i1)
                for (int i2 = 0; i2 < n; ++i2)
                    for (int i3 = 0; i3 < n; ++i3)
                        if (std::abs(g.data[g.idx(i0, i1, i2, i3)]) > 1e-6 * peak) {
                            int e = std::max(std::max(std::abs(i0 - n / 2), std::abs(i1 - n / 2)),
                                             std::max(std::abs(i2 - n / 2), std::abs(i3 - n / 2)));
                            g.support_extent = std::max(g.support_extent, e);
                        }
        return g;
    }
};

/// ‖ρ‖_{p,1} = ∫ ‖ρ(x⁰,·)‖_p dx⁰ on the grid.
inline double lp1_norm(const GridFunction4& g, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp1_norm: p must be >= 1");
    if (!g.has_envelope) {
        // boundary samples must be negligible for the truncation to be valid
        double mx = 0, edge = 0;
        for (int i0 = 0; i0 < g.n; ++i0)
            for (int i1 = 0; i1 < g.n; ++i1)
                for (int i2 = 0; i2 < g.n; ++i2)
                    for (int i3 = 0; i3 < g.n; ++i3) {
                        double a = std::abs(g.data[g.idx(i0, i1, i2, i3)]);
                        mx = std::max(mx, a);
                        if (i0 == 0 || i1 == 0 || i2 == 0 || i3 == 0 || i0 == g.n - 1 ||
                            i1 == g.n - 1 || i2 == g.n - 1 || i3 == g.n - 1)
                            edge = std::max(edge, a);
                    }
        if (edge > 1e-10 * std::max(mx, 1e-300))
            throw std::runtime_error("lp1_norm: no decay envelope and non-negligible boundary samples");
    }
    double acc = 0;
    const std::size_t slice = (std::size_t)g.n * g.n * g.n;
    for (int i0 = 0; i0 < g.n; ++i0) {
        double s = 0;
        for (std::size_t j = 0; j < slice; ++j) s += std::pow(std::abs(g.data[i0 * slice + j]), p);
        acc += std::pow(s * g.cell3(), 1.0 / p);
    }
    return acc * g.h[0];
}

/// Plain L^p norm over the 4D grid.
inline double lp_norm4(const GridFunction4& g, double p) {
    double s = 0;
    for (auto& v : g.data) s += std::pow(std::abs(v), p);
    return std::pow(s * g.cell(), 1.0 / p);
}

// ----------------------------------------------------------------------------
// Hölder checks.

struct InequalityPair {
    double lhs, rhs;
};

/// ‖h₃ ρ‖₁ <= ‖h₃‖_q ‖ρ‖_{p,1} with h₃ a function of the space slice.
inline InequalityPair holder_check_space(const GridFunction4& rho,
                                         const std::function<cplx(double, double, double)>& h3, double p) {
    double q = p / (p - 1.0);
    GridFunction4 prod = rho;
    double hq = 0;
    for (int i1 = 0; i1 < rho.n; ++i1)
        for (int i2 = 0; i2 < rho.n; ++i2)
            for (int i3 = 0; i3 < rho.n; ++i3) {
                cplx hv = h3(rho.coord(i1, 1), rho.coord(i2, 2), rho.coord(i3, 3));
                hq += std::pow(std::abs(hv), q);
                for (int i0 = 0; i0 < rho.n; ++i0) prod.data[prod.idx(i0, i1, i2, i3)] *= hv;
            }
    double rhs = std::pow(hq * rho.cell3(), 1.0 / q) * lp1_norm(rho, p);
    return {lp_norm4(prod, 1.0), rhs};
}

/// ‖h₀ ρ‖_{p,1} <= ‖h₀‖_q ‖ρ‖_p with h₀ a function of x⁰ alone.
inline InequalityPair holder_check_time(const GridFunction4& rho, const std::function<cplx(double)>& h0,
                                        double p) {
    double q = p / (p - 1.0);
    GridFunction4 prod = rho;
    double hq = 0;
    const std::size_t slice = (std::size_t)rho.n * rho.n * rho.n;
    for (int i0 = 0; i0 < rho.n; ++i0) {
        cplx hv = h0(rho.coord(i0, 0));
        hq += std::pow(std::abs(hv), q);
        for (std::size_t j = 0; j < slice; ++j) prod.data[i0 * slice + j] *= hv;
    }
    double rhs = std::pow(hq * rho.h[0], 1.0 / q) * lp_norm4(rho, p);
    return {lp1_norm(prod, p), rhs};
}

// ----------------------------------------------------------------------------
// Convolutions (cyclic, with an aliasing guard).

namespace detail {

inline void check_common_grid(const GridFunction4& a, const GridFunction4& b) {
    if (a.n != b.n || a.h != b.h) throw std::invalid_argument("convolve: grids differ");
}

}  // namespace detail

/// 4D convolution by FFT on the common centered grid. Rejected when the
/// summed support extents would wrap around the periodic box.
inline GridFunction4 convolve4(const GridFunction4& a, const GridFunction4& b) {
    detail::check_common_grid(a, b);
    if (a.support_extent > a.n / 4 || b.support_extent > b.n / 4)
        throw std::invalid_argument("convolve4: supports exceed half the periodic box (aliasing)");
    const int n = a.n;
    std::vector<std::size_t> shape{(std::size_t)n, (std::size_t)n, (std::size_t)n, (std::size_t)n};
    std::vector<cplx> fa = a.data, fb = b.data;
    fft_nd(fa, shape, -1);
    fft_nd(fb, shape, -1);
    for (std::size_t i = 0; i < fa.size(); ++i) fa[i] *= fb[i];
    fft_nd(fa, shape, +1);
    const double scale = a.cell() / std::pow((double)n, 4.0);
    GridFunction4 out = a;
    out.support_extent = std::min(a.support_extent + b.support_extent, n / 2 - 1);
    // centered grids: c[n] = raw[n - N/2 mod N] per axis
    for (int i0 = 0; i0 < n; ++i0)
        for (int i1 = 0; i1 < n; ++i1)
            for (int i2 = 0; i2 < n; ++i2)
                for (int i3 = 0; i3 < n; ++i3) {
                    auto wrap = [n](int i) { return ((i - n / 2) % n + n) % n; };
                    out.data[out.idx(i0, i1, i2, i3)] =
                        fa[a.idx(wrap(i0), wrap(i1), wrap(i2), wrap(i3))] * scale;
                }
    return out;
}

/// 3-space convolution (per time slice) with a function on the space grid.
inline GridFunction4 convolve3(const GridFunction4& a, const GridFunction4& h3_as_slice) {
    detail::check_common_grid(a, h3_as_slice);
    if (a.support_extent > a.n / 4 || h3_as_slice.support_extent > h3_as_slice.n / 4)
        throw std::invalid_argument("convolve3: supports exceed half the periodic box (aliasing)");
    const int n = a.n;
    std::vector<std::size_t> shape{(std::size_t)n, (std::size_t)n, (std::size_t)n};
    const std::size_t slice = (std::size_t)n * n * n;
    // transform of the kernel slice at x0 index n/2
    std::vector<cplx> fh(h3_as_slice.data.begin() + (n / 2) * slice,
                         h3_as_slice.data.begin() + (n / 2 + 1) * slice);
    fft_nd(fh, shape, -1);
    GridFunction4 out = a;
    std::vector<cplx> fa(slice);
    for (int i0 = 0; i0 < n; ++i0) {
        std::copy(a.data.begin() + i0 * slice, a.data.begin() + (i0 + 1) * slice, fa.begin());
        fft_nd(fa, shape, -1);
        for (std::size_t i = 0; i < slice; ++i) fa[i] *= fh[i];
        fft_nd(fa, shape, +1);
        const double scale = a.cell3() / std::pow((double)n, 3.0);
        for (int i1 = 0; i1 < n; ++i1)
            for (int i2 = 0; i2 < n; ++i2)
                for (int i3 = 0; i3 < n; ++i3) {
                    auto wrap = [n](int i) { return ((i - n / 2) % n + n) % n; };
                    out.data[out.idx(i0, i1, i2, i3)] =
                        fa[((std::size_t)wrap(i1) * n + wrap(i2)) * n + wrap(i3)] * scale;
                }
    }
    return out;
}

/// Both sides of the mixed-norm Young inequality
/// ‖φ*ψ‖_{p,1} <= ‖φ‖_{q,1} ‖ψ‖_{r,1} with 1 + 1/p = 1/q + 1/r.
inline InequalityPair young_check(const GridFunction4& phi, const GridFunction4& psi, double p, double q,
                                  double r) {
    if (std::abs(1.0 + 1.0 / p - 1.0 / q - 1.0 / r) > 1e-12)
        throw std::invalid_argument("young_check: exponents must satisfy 1 + 1/p = 1/q + 1/r");
    GridFunction4 conv = convolve4(phi, psi);
    return {lp1_norm(conv, p), lp1_norm(phi, q) * lp1_norm(psi, r)};
}

/// ‖φ *₃ h₃‖_{p,1} <= ‖φ‖_{p,1} ‖h₃‖₁ (space-only convolution variant).
inline InequalityPair young13_check(const GridFunction4& phi, const GridFunction4& h3_slice, double p) {
    GridFunction4 conv = convolve3(phi, h3_slice);
    const int n = h3_slice.n;
    const std::size_t slice = (std::size_t)n * n * n;
    double h1 = 0;
    for (std::size_t j = 0; j < slice; ++j)
        h1 += std::abs(h3_slice.data[(n / 2) * slice + j]);
    h1 *= h3_slice.cell3();
    return {lp1_norm(conv, p), lp1_norm(phi, p) * h1};
}

// ----------------------------------------------------------------------------
// The spacelike decay profile.

struct DecayProfile {
    double kappa = 2.5;
    double lambda = 1.0;
};

/// D_κ(a) = 1 on a² >= 0, λ^κ/(λ+|a⃗|-|a⁰|)^κ on a² < 0.
inline double dkappa(const FourVector& a, const DecayProfile& prof) {
    double r = norm(a.s), t = std::abs(a.t);
    if (r <= t) return 1.0;
    return std::pow(prof.lambda / (prof.lambda + r - t), prof.kappa);
}

// ----------------------------------------------------------------------------
// Tail lemma: |∬_{|s1-s2|>=S} f1 f2| <= const (λ+S)^{-ε}.

struct TailBoundResult {
    double lhs;
    double ref;      // C (λ+S)^{-ε} with C calibrated at S = 0
    double product;  // lhs · (λ+S)^{ε}
};

namespace detail {

// ∫_u^∞ f(s) ds for |f| <= const (λ+|s|)^{-(1+ε)}: core panels from the cut,
// geometric panels until the declared envelope is negligible. Panels split at
// s = 0 where the decay profiles have their |s| kink.
template <class F>
double one_sided_tail(F&& f, double u, double lambda, double eps, double tail_rel = 1e-10) {
    double core = u + 8.0 * lambda;
    double acc = 0;
    if (u < 0.0 && core > 0.0) {
        acc += panel_quad([&](double s) { return f(s); }, u, 0.0, 0.5 * lambda, 8);
        acc += panel_quad([&](double s) { return f(s); }, 0.0, core, 0.5 * lambda, 8);
    } else {
        acc += panel_quad([&](double s) { return f(s); }, u, core, 0.5 * lambda, 8);
    }
    double smax = std::max(std::abs(u), lambda) +
                  lambda * std::pow(1.0 / (tail_rel * eps), 1.0 / eps) + 8.0 * lambda;
    double lo = core;
    while (lo < smax) {
        double hi = std::min(smax, lo + 0.5 * std::max(std::abs(lo), lambda));
        acc += gauss([&](double s) { return f(s); }, lo, hi, 16);
        lo = hi;
    }
    return acc;
}

}  // namespace detail

/// lhs by quadrature of ∫ f1(s1) [∫_{s1+S}^∞ f2 + ∫_{-∞}^{s1-S} f2] ds1.
inline TailBoundResult tail_product_bound(const std::function<double(double)>& f1,
                                          const std::function<double(double)>& f2, double S, double eps,
                                          double lambda) {
    auto tails = [&](double s1, double sep) {
        double upper = detail::one_sided_tail(f2, s1 + sep, lambda, eps);
        double lower = detail::one_sided_tail([&](double s) { return f2(-s); }, -(s1 - sep), lambda, eps);
        return upper + lower;
    };
    double lhs = std::abs(
        line_quad_decay([&](double s1) { return f1(s1) * tails(s1, S); }, lambda, eps, 1e-10));
    double at0 =
        std::abs(line_quad_decay([&](double s1) { return f1(s1) * tails(s1, 0.0); }, lambda, eps, 1e-10));
    double C = at0 * std::pow(lambda, eps);
    TailBoundResult out;
    out.lhs = lhs;
    out.ref = C / std::pow(lambda + S, eps);
    out.product = lhs * std::pow(lambda + S, eps);
    return out;
}

// ----------------------------------------------------------------------------
// Commutator bounding integral.

namespace detail {

// ∫_0^{2r} ρ D_κ(Δs, ρ) dρ in closed form: the a² >= 0 region contributes
// min(2r,|Δs|)²/2, the spacelike region integrates the power kernel exactly.
inline double rho_kernel(double ds, double r, double kappa, double lambda) {
    double ads = std::abs(ds);
    double A = std::min(2.0 * r, ads);
    double val = 0.5 * A * A;
    if (2.0 * r > ads) {
        double U = 2.0 * r - ads;
        double lk = std::pow(lambda, kappa);
        auto ipow = [&](double expnt) {
            // ∫_0^U (λ+u)^{-expnt} du
            if (std::abs(expnt - 1.0) < 1e-12) return std::log((lambda + U) / lambda);
            return (std::pow(lambda, 1.0 - expnt) - std::pow(lambda + U, 1.0 - expnt)) / (expnt - 1.0);
        };
        double I1 = ipow(kappa);        // ∫ (λ+u)^{-κ}
        double I2 = ipow(kappa - 1.0);  // ∫ (λ+u)^{1-κ}
        val += lk * (I2 + (ads - lambda) * I1);
    }
    return val;
}

}  // namespace detail

struct CommutatorIntegralOptions {
    double s_extent = 200.0;  // integration half-range in units of λ
    double s_panel = 1.0;
    int gl = 6;
    int n_xi = 96;        // ξ² nodes (disjoint-support mode)
    int n_cap = 24;       // polar nodes over each angular cap
    int n_phi_cap = 48;   // azimuth nodes for the cap overlap factor
};

/// I = ∫ I(s₁,l₁) |f(s₁,l₁)| ds₁ dΩ at r₁ = r₂ = r for angular-independent f,
/// with the angular degrees reduced to the exact ρ = 2rξ kernel.
inline double commutator_bound_integral(const NullProfile& f, double r, double kappa,
                                        const CommutatorIntegralOptions& opt = {}) {
    if (!f.angular_independent)
        throw std::invalid_argument("commutator_bound_integral: expects an angular-independent profile");
    const double L = opt.s_extent * f.lambda;
    const Vec3 z{0, 0, 1};
    auto inner = [&](double s1) {
        double Is1 = M_PI * panel_quad(
                                [&](double s2) {
                                    return std::abs(f.value(0, s2, z)) *
                                           detail::rho_kernel(s2 - s1, r, kappa, f.lambda);
                                },
                                -L, L, opt.s_panel * f.lambda, opt.gl);
        return std::abs(f.value(0, s1, z)) * Is1;
    };
    return 4.0 * M_PI * panel_quad(inner, -L, L, opt.s_panel * f.lambda, opt.gl);
}

/// The r -> ∞ reference of the κ > 2 regime:
/// ∫ |f(s₁,l) f(s₂,l)| [(s₁-s₂)² + λ²] ds₁ ds₂ dΩ_t(l).
inline double flimit_reference(const NullProfile& f, const CommutatorIntegralOptions& opt = {}) {
    const double L = opt.s_extent * f.lambda;
    const Vec3 z{0, 0, 1};
    auto inner = [&](double s1) {
        return std::abs(f.value(0, s1, z)) *
               panel_quad(
                   [&](double s2) {
                       double ds = s1 - s2;
                       return std::abs(f.value(0, s2, z)) * (ds * ds + f.lambda * f.lambda);
                   },
                   -L, L, opt.s_panel * f.lambda, opt.gl);
    };
    return 4.0 * M_PI * panel_quad(inner, -L, L, opt.s_panel * f.lambda, opt.gl);
}

/// Disjoint-support regime: f₁, f₂ = s-profile × separated angular caps. For
/// each l₁ node the azimuthal overlap of the second cap is tabulated per ξ²
/// node, after which the remaining (s₁, s₂) integral uses a fast kernel sum.
/// Both profiles must factorize as s-profile × angular factor.
inline double commutator_bound_integral_disjoint(const NullProfile& f1, const NullProfile& f2, double r,
                                                 double kappa, const CommutatorIntegralOptions& opt = {}) {
    const double L = opt.s_extent * f1.lambda;
    const double lambda = f1.lambda;
    const Vec3 south{0, 0, -1}, north{0, 0, 1};
    // s-profiles extracted at reference directions inside each cap
    double a2ref = std::abs(f2.value(0, 0.0, south).real());
    double a1ref = std::abs(f1.value(0, 0.0, north).real());
    if (a1ref == 0.0 || a2ref == 0.0)
        throw std::invalid_argument("commutator_bound_integral_disjoint: caps must cover the poles");
    auto s_prof1 = [&](double s) { return std::abs(f1.value(0, s, north).real()) / a1ref; };
    auto s_prof2 = [&](double s) { return std::abs(f2.value(0, s, south).real()) / a2ref; };

    const auto& gl_cap = gauss_legendre(opt.n_cap);
    const auto& gl_xi = gauss_legendre(opt.n_xi);
    double total = 0;
    std::vector<double> a2tab(opt.n_xi), rho_tab(opt.n_xi), wxi(opt.n_xi);
    for (int ic = 0; ic < opt.n_cap; ++ic) {
        double c1 = gl_cap.x[ic];
        double w1 = 2.0 * M_PI * gl_cap.w[ic];
        Vec3 l1{std::sqrt(std::max(0.0, 1.0 - c1 * c1)), 0.0, c1};
        double cap1 = std::abs(f1.value(0, 0.0, l1).real()) / std::abs(f1.value(0, 0.0, north).real());
        if (cap1 == 0.0) continue;
        auto [e1, e2] = tangent_basis(l1);
        // azimuthal overlap of the second angular factor at each ξ² node
        for (int ix = 0; ix < opt.n_xi; ++ix) {
            double xi2 = 0.5 * (gl_xi.x[ix] + 1.0);
            wxi[ix] = 0.5 * gl_xi.w[ix];
            rho_tab[ix] = 2.0 * r * std::sqrt(xi2);
            double cg = 1.0 - 2.0 * xi2, sg = std::sqrt(std::max(0.0, 1.0 - cg * cg));
            double acc = 0;
            for (int j = 0; j < opt.n_phi_cap; ++j) {
                double phi = 2.0 * M_PI * j / opt.n_phi_cap;
                Vec3 l2 = l1 * cg + (e1 * std::cos(phi) + e2 * std::sin(phi)) * sg;
                acc += std::abs(f2.value(0, 0.0, l2).real());
            }
            a2tab[ix] = acc * (2.0 * M_PI / opt.n_phi_cap) / a2ref;
        }
        auto J = [&](double ds) {
            double acc = 0;
            for (int ix = 0; ix < opt.n_xi; ++ix) {
                if (a2tab[ix] == 0.0) continue;
                double rho = rho_tab[ix];
                double dk = std::abs(ds) >= rho
                                ? 1.0
                                : std::pow(lambda / (lambda + rho - std::abs(ds)), kappa);
                acc += wxi[ix] * a2tab[ix] * dk;
            }
            return r * r * acc;
        };
        double s_int = panel_quad(
            [&](double s1) {
                double v1 = s_prof1(s1);
                return v1 * panel_quad([&](double s2) { return s_prof2(s2) * J(s2 - s1); }, -L, L,
                                       4.0 * opt.s_panel * lambda, opt.gl);
            },
            -L, L, 4.0 * opt.s_panel * lambda, opt.gl);
        total += w1 * cap1 * s_int;
    }
    return total * a1ref * a2ref;
}

}  // namespace lca
