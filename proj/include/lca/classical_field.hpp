#pragma once

// Classical wave-equation solutions from null data:
//   B(x) = -(1/2π) ∫ ∂_s b(x·l, l) dΩ_t(l),
// their null asymptotes r B(x ± r l), the spacelike 1/r tail, a d'Alembertian
// residual check, and the lightcone momentum representation built from
// c(ωl) = -b̃'(ω,l)/ω.

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "lca/detail/fit.hpp"
#include "lca/detail/quadrature.hpp"
#include "lca/geometry.hpp"
#include "lca/profiles.hpp"

namespace lca {

struct FieldOptions {
    enum class Mode { fixed_grid, adaptive, automatic };
    Mode mode = Mode::automatic;
    int n_theta = 64;        // fixed-grid polar order
    int n_phi = 0;           // 0: 2*n_theta (fixed grid) / auto (adaptive)
    double panel = 0.5;      // adaptive panel width in units of λ
    int gl_order = 8;
    double switch_radius = 4.0;  // |x⃗|/λ beyond which automatic mode goes adaptive
};

namespace detail {

// ∫ p.value(m, x·l, n̂) W(n̂) dΩ with l = t + n̂ in the lab gauge.
// W == nullptr means weight 1.
template <class P>
cplx cone_integral(const P& p, int m, const FourVector& x, const std::function<cplx(const Vec3&)>& W,
                   const FieldOptions& opt) {
    const double rx = norm(x.s);
    bool adaptive = opt.mode == FieldOptions::Mode::adaptive ||
                    (opt.mode == FieldOptions::Mode::automatic && rx > opt.switch_radius * p.lambda);
    if (!adaptive || rx < 1e-12 * p.lambda) {
        bool phi_trivial = p.angular_independent && !W;
        if (phi_trivial) {
            // the integrand depends on n̂ only through x⃗·n̂: polar rings about x̂
            Vec3 axis = rx > 0 ? x.s / rx : Vec3{0, 0, 1};
            Vec3 e1 = tangent_basis(axis).first;
            const auto& gl = gauss_legendre(opt.n_theta);
            cplx acc = 0;
            for (int i = 0; i < opt.n_theta; ++i) {
                double c = gl.x[i], st = std::sqrt(std::max(0.0, 1.0 - c * c));
                Vec3 n = axis * c + e1 * st;
                acc += (2.0 * M_PI * gl.w[i]) * p.value(m, x.t - rx * c, n);
            }
            return acc;
        }
        SphereGrid g = SphereGrid::product(opt.n_theta, opt.n_phi > 0 ? opt.n_phi : 2 * opt.n_theta);
        cplx acc = 0;
        for (auto& nd : g.nodes) {
            double s = x.t - dot(x.s, nd.n);
            cplx v = p.value(m, s, nd.n);
            if (W) v *= W(nd.n);
            acc += nd.w * v;
        }
        return acc;
    }
    // adaptive: substitute u = x0 - |x⃗| cosθ' with the polar axis along x̂
    const Vec3 xhat = x.s / rx;
    auto [e1, e2] = tangent_basis(xhat);
    int n_phi = opt.n_phi;
    if (n_phi <= 0) n_phi = (p.angular_independent && !W) ? 1 : 32;
    const double dphi = 2.0 * M_PI / n_phi;
    const double ulo = x.t - rx, uhi = x.t + rx;
    auto integrand = [&](double u) {
        double c = std::clamp((x.t - u) / rx, -1.0, 1.0);
        double st = std::sqrt(std::max(0.0, 1.0 - c * c));
        cplx acc = 0;
        for (int j = 0; j < n_phi; ++j) {
            double phi = (j + 0.5) * dphi;
            Vec3 n = xhat * c + (e1 * std::cos(phi) + e2 * std::sin(phi)) * st;
            cplx v = p.value(m, u, n);
            if (W) v *= W(n);
            acc += v;
        }
        return acc * dphi;
    };
    return panel_quad(integrand, ulo, uhi, opt.panel * p.lambda, opt.gl_order) / rx;
}

}  // namespace detail

/// B(x) from the ∂_s b profile (degree -2 data).
inline double evaluate_field(const NullProfile& bdot, const FourVector& x, const FieldOptions& opt = {}) {
    cplx v = detail::cone_integral(bdot, 0, x, nullptr, opt);
    return -v.real() / (2.0 * M_PI);
}

/// Same with a two-level refinement check; the estimated error is the
/// difference between the two levels.
struct CheckedValue {
    double value;
    double err_estimate;
};

inline CheckedValue evaluate_field_checked(const NullProfile& bdot, const FourVector& x,
                                           const FieldOptions& opt = {}, double tol = 1e-6) {
    FieldOptions fine = opt;
    fine.n_theta = opt.n_theta * 3 / 2;
    fine.panel = opt.panel / 2.0;
    double a = evaluate_field(bdot, x, opt);
    double b = evaluate_field(bdot, x, fine);
    CheckedValue out{b, std::abs(a - b)};
    if (out.err_estimate > tol * std::max(1.0, std::abs(b)))
        throw std::runtime_error("evaluate_field: quadrature did not converge between refinement levels");
    return out;
}

/// v^a (∂_a B)(x) — the field derivative along a constant four-vector v,
/// computed from the second-derivative profile with the l-contraction weight.
inline double field_directional_derivative(const NullProfile& b, const FourVector& v, const FourVector& x,
                                           const FieldOptions& opt = {}) {
    NullProfile bddot = s_derivative(b, 2);
    auto W = std::function<cplx(const Vec3&)>([v](const Vec3& n) {
        FourVector l{1.0, n};
        return cplx(mdot(v, l));
    });
    cplx val = detail::cone_integral(bddot, 0, x, W, opt);
    return -val.real() / (2.0 * M_PI);
}

// ----------------------------------------------------------------------------
// Null asymptote and spacelike tail.

struct AsymptoteRow {
    double r;
    double r_times_B;
    double residual;  // against the extrapolated limit
};

struct AsymptoteResult {
    double limit = 0;
    double rate = 0;
    bool rate_reliable = false;
    std::vector<AsymptoteRow> table;
};

namespace detail {

inline AsymptoteResult extrapolate_scaled_values(const std::vector<double>& r_list,
                                                 const std::vector<double>& vals) {
    Extrapolation ex = richardson(r_list, vals);
    AsymptoteResult out;
    out.limit = ex.limit;
    out.rate = ex.rate;
    out.rate_reliable = ex.rate_reliable;
    for (std::size_t i = 0; i < r_list.size(); ++i)
        out.table.push_back({r_list[i], vals[i], ex.residuals[i]});
    return out;
}

}  // namespace detail

/// r B(x + r l) over r_list, Richardson-extrapolated. `b` is the null data
/// (with limits); choose sign = -1 for the past asymptote r B(x - r l).
inline AsymptoteResult null_asymptote(const NullProfile& b, const FourVector& x, const NullDirection& l,
                                      const std::vector<double>& r_list, int sign = +1,
                                      const FieldOptions& opt = {}) {
    for (std::size_t i = 1; i < r_list.size(); ++i)
        if (!(r_list[i] > r_list[i - 1])) throw std::invalid_argument("null_asymptote: r_list must increase");
    if (!(r_list.front() > 10.0 * b.lambda))
        throw std::invalid_argument("null_asymptote: min r must exceed 10λ");
    NullProfile bdot = s_derivative(b, 1);
    FourVector lv = l.l();
    std::vector<double> vals;
    for (double r : r_list)
        vals.push_back(r * evaluate_field(bdot, x + (sign * r) * lv, opt));
    return detail::extrapolate_scaled_values(r_list, vals);
}

/// Closed-form asymptote reference from Eq. of the null limit:
/// +: b(x·l, l) - b(+∞, l);  -: -b(x·l, l) + b(-∞, l).
inline double null_asymptote_reference(const NullProfile& b, const FourVector& x, const NullDirection& l,
                                       int sign = +1) {
    FourVector lv = l.l();
    double s = mdot(x, lv);
    Vec3 n = normalized(lv.s);
    cplx v = sign > 0 ? b_out(b, s / lv.t, n) * std::pow(lv.t, b.degree)
                      : b_in(b, s / lv.t, n) * std::pow(lv.t, b.degree);
    return v.real();
}

/// r B(x + r y) for spacelike y, extrapolated.
inline AsymptoteResult spacelike_tail(const NullProfile& b, const FourVector& x, const FourVector& y,
                                      const std::vector<double>& r_list, const FieldOptions& opt = {}) {
    if (!(msquare(y) < 0)) throw std::invalid_argument("spacelike_tail: y must be spacelike");
    NullProfile bdot = s_derivative(b, 1);
    std::vector<double> vals;
    for (double r : r_list) vals.push_back(r * evaluate_field(bdot, x + r * y, opt));
    return detail::extrapolate_scaled_values(r_list, vals);
}

/// The δ(y·l) reference for the tail: -(1/2π) ∫ Δb(l) δ(y·l) d²l reduced to a
/// circle integral on the sphere (never a numerical δ).
inline double spacelike_tail_reference(const NullProfile& b, const FourVector& y, int n_phi = 48) {
    if (!(msquare(y) < 0)) throw std::invalid_argument("spacelike_tail_reference: y must be spacelike");
    double ry = norm(y.s);
    double c0 = y.t / ry;  // circle y·l = 0 at polar angle arccos(c0) about ŷ
    Vec3 yhat = y.s / ry;
    auto [e1, e2] = tangent_basis(yhat);
    double s0 = std::sqrt(std::max(0.0, 1.0 - c0 * c0));
    cplx acc = 0;
    for (int j = 0; j < n_phi; ++j) {
        double phi = 2.0 * M_PI * j / n_phi;
        Vec3 n = yhat * c0 + (e1 * std::cos(phi) + e2 * std::sin(phi)) * s0;
        acc += delta_b(b, n);
    }
    acc *= 2.0 * M_PI / n_phi;
    return -(acc.real() / ry) / (2.0 * M_PI);
}

/// Central-difference d'Alembertian of B at x with step h.
inline double wave_residual(const NullProfile& b, const FourVector& x, double h,
                            const FieldOptions& opt = {}) {
    if (!(h >= 1e-3 * b.lambda && h <= 1e-1 * b.lambda))
        throw std::invalid_argument("wave_residual: step must lie in [1e-3, 1e-1] λ");
    NullProfile bdot = s_derivative(b, 1);
    auto B = [&](const FourVector& p) { return evaluate_field(bdot, p, opt); };
    double c = B(x);
    double box = 0.0;
    for (int mu = 0; mu < 4; ++mu) {
        FourVector e{mu == 0 ? 1.0 : 0.0, mu == 1 ? 1.0 : 0.0, mu == 2 ? 1.0 : 0.0, mu == 3 ? 1.0 : 0.0};
        double second = (B(x + h * e) - 2.0 * c + B(x - h * e)) / (h * h);
        box += (mu == 0 ? 1.0 : -1.0) * second;
    }
    return std::abs(box);
}

// ----------------------------------------------------------------------------
// Momentum representation.

/// The lightcone spectrum of the field: carries b̃'(ω, n̂), with
/// c(ω l) = -b̃'(ω,l)/ω and Δb(l) = 2π b̃'(0,l).
struct MomentumProfile {
    std::function<cplx(double w, const Vec3& n)> bdot_ft;
    double lambda = 1.0;
    double omega_max = 16.0;
    bool angular_independent = false;
    bool axisymmetric = false;

    cplx c(double w, const Vec3& n) const {
        if (w == 0.0) throw std::invalid_argument("MomentumProfile::c: singular at ω = 0; use w_times_c");
        return -bdot_ft(w, n) / w;
    }
    // ω c(ωl) — regular through ω = 0
    cplx w_times_c(double w, const Vec3& n) const { return -bdot_ft(w, n); }
};

inline MomentumProfile momentum_profile(const NullProfile& b) {
    NullProfile bdot = s_derivative(b, 1);
    MomentumProfile mp;
    mp.lambda = b.lambda;
    mp.omega_max = b.omega_max;
    mp.angular_independent = b.angular_independent;
    mp.axisymmetric = b.axisymmetric;
    if (bdot.fourier && bdot.fourier_order == 0) {
        mp.bdot_ft = bdot.fourier;
    } else {
        mp.bdot_ft = [bdot](double w, const Vec3& n) { return profile_fourier(bdot, w, n); };
    }
    return mp;
}

struct MomentumFieldOptions {
    int n_theta = 48;
    double radial_panel = 0.25;  // in 1/λ; shrunk further to resolve e^{-iω x·l}
    int gl_order = 10;
    double tail_threshold = 1e-9;
};

/// B(x) evaluated from the momentum representation: the lightcone integral
/// with measure d³k/(2|k⃗|) per sheet and sgn(k⁰) weight, reduced to
/// B(x) = -(1/π) Re ∫_0^∞ dω ∫ dΩ b̃'(ω,n̂) e^{-iω(x⁰ - x⃗·n̂)}.
inline double evaluate_field_momentum(const MomentumProfile& mp, const FourVector& x,
                                      const MomentumFieldOptions& opt = {}) {
    const double rx = norm(x.s);
    const double osc = std::abs(x.t) + rx;
    double panel = std::min(opt.radial_panel / mp.lambda, osc > 0 ? M_PI / (2.0 * osc) : 1e300);
    // tail check at the truncation edge
    double edge = std::abs(mp.bdot_ft(mp.omega_max, Vec3{0, 0, 1}));
    if (edge > opt.tail_threshold)
        throw std::runtime_error("evaluate_field_momentum: radial spectral tail above threshold");
    cplx acc;
    if (mp.angular_independent) {
        acc = 4.0 * M_PI *
              panel_quad(
                  [&](double w) {
                      double z = w * rx;
                      double sinc = z < 1e-8 ? 1.0 - z * z / 6.0 : std::sin(z) / z;
                      return mp.bdot_ft(w, Vec3{0, 0, 1}) * std::exp(cplx(0.0, -w * x.t)) * sinc;
                  },
                  0.0, mp.omega_max, panel, opt.gl_order);
    } else {
        SphereGrid g = SphereGrid::product(opt.n_theta);
        acc = panel_quad(
            [&](double w) {
                cplx a = 0;
                for (auto& nd : g.nodes)
                    a += nd.w * mp.bdot_ft(w, nd.n) * std::exp(cplx(0.0, -w * (x.t - dot(x.s, nd.n))));
                return a;
            },
            0.0, mp.omega_max, panel, opt.gl_order);
    }
    return -acc.real() / M_PI;
}

/// Consistency of c(k) under the reparametrization k = ωl = (ω/γ)(γl).
/// The (ω/γ, γl) route transforms the homogeneous extension of ∂_s b at the
/// off-gauge vector γl by direct quadrature; the t-gauge route uses the
/// cached spectrum. Returns the max deviation over a sample.
inline double momentum_scaling_deviation(const NullProfile& b, double gamma) {
    MomentumProfile mp = momentum_profile(b);
    NullProfile bdot = s_derivative(b, 1);
    double worst = 0.0;
    for (double w : {0.3, 1.0, 2.7}) {
        for (double cth : {-0.6, 0.2, 0.9}) {
            Vec3 n{std::sqrt(1.0 - cth * cth), 0.0, cth};
            cplx direct = mp.c(w, n);
            FourVector lp = gamma * FourVector{1.0, n};
            double wp = w / gamma;
            cplx ft = line_quad_decay(
                          [&](double s) {
                              return std::exp(cplx(0.0, wp * s)) * extend_homogeneous(bdot, s, lp);
                          },
                          gamma * bdot.lambda, bdot.eps, 1e-11, 1.0,
                          std::min(0.5, 1.5 / std::max(wp * gamma, 1e-12)), 8,
                          1.5 / std::max(wp, 1e-12)) /
                      (2.0 * M_PI);
            cplx scaled = -ft / wp;
            worst = std::max(worst, std::abs(direct - scaled));
        }
    }
    return worst;
}

}  // namespace lca
