#pragma once

// Smeared asymptote functionals for classical fields:
//   B[r,f] = (r/2π) ∫ B(st + rl) f(s,l) ds dΩ_t(l),
//   B[g,f] = ∫ g(r) B[r,f] dr,
// their r -> ∞ limit (1/2π) ∫ b_out f ds d²l, the frame-dependence identities,
// and the momentum-side evaluation of the frequency-split smearing on the
// lightcone sheet.

#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "lca/classical_field.hpp"
#include "lca/detail/parallel.hpp"
#include "lca/geometry.hpp"
#include "lca/profiles.hpp"

namespace lca {

/// Field sampler used by the smearing integrals. The node direction is passed
/// so that contracted derivative fields (l^a ∂_a B) can be smeared with the
/// same machinery.
using NodeField = std::function<cplx(const FourVector& x, const Vec3& node)>;

/// Smearing pair (f, g) with its reference frame and scaling parameters.
struct SmearKernel {
    NullProfile f;
    GKernel g;
    FourVector frame = lab_frame();
    double R = 40.0;
    double eta = 1.0;
};

struct SmearOptions {
    double s_tail_rel = 1e-8;
    double s_panel = 0.5;            // in units of λ
    int gl = 8;
    int n_theta = 64;                // outer angular order
    std::optional<Vec3> rings_axis;  // axisymmetric integrand: polar rings about this axis
    bool collapse_outer = false;     // integrand independent of the node (lab frame, radial field)
    int n_g = 16;                    // Gauss order on supp g per panel
};

/// Quadrature-backed field sampler from null data.
inline NodeField field_of(const NullProfile& b, FieldOptions fo = {}) {
    NullProfile bdot = s_derivative(b, 1);
    return [bdot, fo](const FourVector& x, const Vec3&) { return cplx(evaluate_field(bdot, x, fo)); };
}

/// Exact spherical-mean reduction for angular-independent data:
/// B(x) = -[b(x⁰+|x⃗|) - b(x⁰-|x⃗|)]/|x⃗|. Used as a fast inner evaluator
/// where its precondition holds; equivalence with the quadrature evaluator is
/// covered by tests.
inline NodeField field_radial_closed(const NullProfile& b) {
    if (!b.angular_independent)
        throw std::invalid_argument("field_radial_closed: data must be angular-independent");
    NullProfile bdot = s_derivative(b, 1);
    return [b, bdot](const FourVector& x, const Vec3&) -> cplx {
        double rx = norm(x.s);
        const Vec3 z{0, 0, 1};
        if (rx < 1e-8 * b.lambda) return -2.0 * bdot.value(0, x.t, z);
        return -(b.value(0, x.t + rx, z) - b.value(0, x.t - rx, z)) / rx;
    };
}

/// B[r,f] in the gauge of `frame`, realized on the lab node grid through the
/// frame-explicit form (1/2π) ∫ (r/(t·l)) B((st+rl)/(t·l)) f(s,l) ds d²l.
inline cplx smear_r(const NodeField& B, double r, const NullProfile& f,
                    const FourVector& frame = lab_frame(), const SmearOptions& opt = {}) {
    require_unit_timelike(frame);
    struct Node {
        Vec3 n;
        double w;
    };
    std::vector<Node> nodes;
    if (opt.collapse_outer) {
        nodes.push_back({Vec3{0, 0, 1}, 4.0 * M_PI});
    } else if (opt.rings_axis) {
        Vec3 axis = normalized(*opt.rings_axis);
        Vec3 e1 = tangent_basis(axis).first;
        const auto& gl = gauss_legendre(opt.n_theta);
        for (int i = 0; i < opt.n_theta; ++i) {
            double c = gl.x[i], st = std::sqrt(std::max(0.0, 1.0 - c * c));
            nodes.push_back({axis * c + e1 * st, 2.0 * M_PI * gl.w[i]});
        }
    } else {
        SphereGrid g = SphereGrid::product(opt.n_theta);
        for (auto& nd : g.nodes) nodes.push_back({nd.n, nd.w});
    }
    auto node_term = [&](std::size_t lo, std::size_t hi) {
        cplx acc = 0;
        for (std::size_t i = lo; i < hi; ++i) {
            const auto& nd = nodes[i];
            FourVector l{1.0, nd.n};
            double tau = mdot(frame, l);
            cplx s_int = line_quad_decay(
                [&](double s) {
                    FourVector x = (s * frame + r * l) / tau;
                    return B(x, nd.n) * f.value(0, s, nd.n);
                },
                f.lambda, f.eps, opt.s_tail_rel, 1.0, opt.s_panel, opt.gl);
            acc += nd.w * (r / tau) * s_int;
        }
        return acc;
    };
    cplx total = parallel_block_sum<cplx>(nodes.size(), node_term, 32);
    return total / (2.0 * M_PI);
}

namespace detail {

// (v·∂B)(x) for angular-independent data, from the radial closed form of B
inline cplx radial_field_derivative(const NullProfile& b, const FourVector& v, const FourVector& x) {
    const Vec3 z{0, 0, 1};
    double rho = norm(x.s);
    if (rho < 1e-7 * b.lambda) {
        // ∂_0 B = -2 b''(x0); the spatial gradient vanishes on the axis
        return -2.0 * v.t * b.value(2, x.t, z);
    }
    cplx bp = b.value(1, x.t + rho, z), bm = b.value(1, x.t - rho, z);
    cplx d0 = -(bp - bm) / rho;
    cplx drho = -(bp + bm) / rho + (b.value(0, x.t + rho, z) - b.value(0, x.t - rho, z)) / (rho * rho);
    double vrad = dot(v.s, x.s) / rho;
    return v.t * d0 + vrad * drho;
}

}  // namespace detail

/// v^a ∂_a B for angular-independent data, exact through the radial form.
inline NodeField field_radial_closed_derivative(const NullProfile& b, const FourVector& v) {
    if (!b.angular_independent)
        throw std::invalid_argument("field_radial_closed_derivative: data must be angular-independent");
    return [b, v](const FourVector& x, const Vec3&) { return detail::radial_field_derivative(b, v, x); };
}

/// l(n̂)^a ∂_a B with the node direction as the contraction vector.
inline NodeField field_radial_closed_node_derivative(const NullProfile& b) {
    if (!b.angular_independent)
        throw std::invalid_argument("field_radial_closed_node_derivative: data must be angular-independent");
    return [b](const FourVector& x, const Vec3& n) {
        return detail::radial_field_derivative(b, FourVector{1.0, n}, x);
    };
}

/// ∫ g(r) B[r,f] dr for a kernel sampled on [lo, hi].
struct RKernel {
    std::function<double(double)> eval;
    double lo, hi;
};

inline RKernel as_rkernel(const ScaledG& g) {
    return {[g](double r) { return g(r); }, g.support_lo(), g.support_hi()};
}

/// h_R(r) = R^{-1} h(R^{-1} r) with h(u) = d[u g(u)]/du, the kernel appearing
/// in the frame-derivative identity.
inline RKernel moment_kernel(const GKernel& g, double R) {
    return {[g, R](double r) {
                double u = r / R;
                return (g(u) + u * g.dg(u)) / R;
            },
            R * g.tau1, R * g.tau2};
}

inline cplx smear_g(const NodeField& B, const RKernel& g, const NullProfile& f,
                    const FourVector& frame = lab_frame(), const SmearOptions& opt = {}) {
    const int panels = 6;
    const auto& gl = gauss_legendre(opt.n_g);
    cplx acc = 0;
    for (int p = 0; p < panels; ++p) {
        double lo = g.lo + (g.hi - g.lo) * p / panels;
        double hi = g.lo + (g.hi - g.lo) * (p + 1) / panels;
        const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
        for (int i = 0; i < opt.n_g; ++i) {
            double r = c + h * gl.x[i];
            acc += h * gl.w[i] * g.eval(r) * smear_r(B, r, f, frame, opt);
        }
    }
    return acc;
}

inline cplx smear_g(const NodeField& B, const ScaledG& g, const NullProfile& f,
                    const FourVector& frame = lab_frame(), const SmearOptions& opt = {}) {
    return smear_g(B, as_rkernel(g), f, frame, opt);
}

// ----------------------------------------------------------------------------
// The r -> ∞ limit functional.

/// lim_{r→∞} B[r,f] = (1/2π) ∫ b_out(s,l) f(s,l) ds d²l, evaluated in the
/// gauge of `frame` by reweighting the lab grid and extending both factors by
/// homogeneity.
inline cplx asymptote_functional(const NullProfile& b, const NullProfile& f,
                                 const FourVector& frame = lab_frame(), const SmearOptions& opt = {}) {
    require_unit_timelike(frame);
    if (!(f.eps > 2.0))
        throw std::invalid_argument("asymptote_functional: kernel must have decay exponent > 2");
    SphereGrid grid = SphereGrid::product(opt.n_theta);
    auto term = [&](std::size_t lo, std::size_t hi) {
        cplx acc = 0;
        for (std::size_t i = lo; i < hi; ++i) {
            const auto& nd = grid.nodes[i];
            FourVector l{1.0, nd.n};
            double tau = mdot(frame, l);
            FourVector lprime = l / tau;
            Vec3 dir = normalized(lprime.s);
            double tl = lprime.t;
            cplx s_int = line_quad_decay(
                [&](double s) {
                    // homogeneous extensions evaluated at the regauged node
                    cplx bo = std::pow(tl, b.degree) *
                              (b.value(0, s / tl, dir) - b.limit_plus(dir));
                    cplx fv = std::pow(tl, f.degree) * f.value(0, s / tl, dir);
                    return bo * fv;
                },
                f.lambda, f.eps, opt.s_tail_rel, 1.0, opt.s_panel, opt.gl);
            acc += nd.w / (tau * tau) * s_int;
        }
        return acc;
    };
    cplx total = parallel_block_sum<cplx>(grid.nodes.size(), term, 32);
    return total / (2.0 * M_PI);
}

// ----------------------------------------------------------------------------
// Frame independence.

struct InvarianceResult {
    cplx value_rest;
    cplx value_boosted;
    double diff;
    cplx exact_limit;  // rest-frame limit functional
};

/// Extrapolated smearing limit evaluated in the lab frame and in the boosted
/// frame Λt; by the limit's Lorentz invariance the two must agree.
inline InvarianceResult lorentz_invariance_check(const NullProfile& b, const NullProfile& f,
                                                 const Boost& boost, const std::vector<double>& r_list,
                                                 const NodeField& B, SmearOptions opt = {}) {
    if (!(f.eps > 2.0))
        throw std::invalid_argument("lorentz_invariance_check: kernel must have decay exponent > 2");
    FourVector tp = boost_apply(boost, lab_frame());
    auto limit_in = [&](const FourVector& fr) {
        SmearOptions o = opt;
        if (!o.collapse_outer && !o.rings_axis && b.angular_independent)
            o.rings_axis = boost.axis;  // integrand axisymmetric about the boost axis
        std::vector<double> re, im;
        for (double r : r_list) {
            cplx v = smear_r(B, r, f, fr, o);
            re.push_back(v.real());
            im.push_back(v.imag());
        }
        return cplx(richardson(r_list, re).limit, richardson(r_list, im).limit);
    };
    InvarianceResult out;
    out.value_rest = limit_in(lab_frame());
    out.value_boosted = limit_in(tp);
    out.diff = std::abs(out.value_rest - out.value_boosted);
    out.exact_limit = asymptote_functional(b, f, lab_frame(), opt);
    return out;
}

// ----------------------------------------------------------------------------
// Derivative identities.

namespace detail {

inline NullProfile multiply_by_s(const NullProfile& p) {
    NullProfile q = p;
    q.deriv = [base = p](int m, double s, const Vec3& n) -> cplx {
        if (m != 0) throw std::invalid_argument("multiply_by_s: order-0 only");
        return s * base.value(0, s, n);
    };
    q.max_analytic_deriv = 0;
    q.eps = p.eps - 1.0;
    q.degree = p.degree + 1;
    q.name = "s*" + p.name;
    return q;
}

// l_a f with the index lowered: l_a = (1, -n̂)_a
inline NullProfile multiply_by_l_component(const NullProfile& p, int a) {
    NullProfile q = p;
    q.deriv = [base = p, a](int m, double s, const Vec3& n) -> cplx {
        if (m != 0) throw std::invalid_argument("multiply_by_l_component: order-0 only");
        double la = a == 0 ? 1.0 : -(a == 1 ? n.x : a == 2 ? n.y : n.z);
        return la * base.value(0, s, n);
    };
    q.max_analytic_deriv = 0;
    q.angular_independent = false;
    q.name = "l_" + std::to_string(a) + "*" + p.name;
    return q;
}

}  // namespace detail

/// Residual of ∂_r B[r,f] = (∂_a B)[r, l^a f] + r^{-1} B[r,f], the r-derivative
/// identity of the smearing. ∂_r is a central difference with step h; the
/// caller supplies the field and its node-contracted derivative l^a ∂_a B.
inline double deriv_identity_residual(const NodeField& B, const NodeField& lDlB, double r,
                                      const NullProfile& f, double h, const SmearOptions& opt = {}) {
    cplx lhs = (smear_r(B, r + h, f, lab_frame(), opt) - smear_r(B, r - h, f, lab_frame(), opt)) / (2.0 * h);
    SmearOptions o = opt;
    o.collapse_outer = false;  // the contracted derivative depends on the node
    if (!o.rings_axis && f.angular_independent) o.rings_axis = Vec3{0, 0, 1};
    cplx rhs = smear_r(lDlB, r, f, lab_frame(), o) + smear_r(B, r, f, lab_frame(), opt) / r;
    return std::abs(lhs - rhs);
}

inline double deriv_identity_residual(const NullProfile& b, double r, const NullProfile& f, double h,
                                      const SmearOptions& opt = {}, FieldOptions fo = {}) {
    NodeField B = b.angular_independent ? field_radial_closed(b) : field_of(b, fo);
    NodeField Dl = b.angular_independent
                       ? field_radial_closed_node_derivative(b)
                       : NodeField([&b, fo](const FourVector& x, const Vec3& n) -> cplx {
                             return cplx(field_directional_derivative(b, FourVector{1.0, n}, x, fo));
                         });
    return deriv_identity_residual(B, Dl, r, f, h, opt);
}

/// Residual of the frame-derivative identity for B[g_R, ∂f]:
///   ∂/∂t^a B[g_R, ∂f] = (∂_b B)[g_R, (δ_a^b - l_a t^b) s ∂f] + B[h_R, l_a ∂f],
/// with the left side a central difference along the unit hyperboloid.
inline double frame_derivative_residual(const NullProfile& b, const GKernel& g, double R,
                                        const NullProfile& fdot, int a, double ht,
                                        const SmearOptions& opt = {}, FieldOptions fo = {}) {
    if (a < 1 || a > 3) throw std::invalid_argument("frame_derivative_residual: spatial index expected");
    NodeField B = b.angular_independent ? field_radial_closed(b) : field_of(b, fo);
    ScaledG gR = scaled_g(g, R, 1.0, b.lambda);

    auto frame_at = [&](double eps_t) {
        FourVector t{1.0, 0.0, 0.0, 0.0};
        FourVector e{0.0, a == 1 ? 1.0 : 0.0, a == 2 ? 1.0 : 0.0, a == 3 ? 1.0 : 0.0};
        FourVector tp = t + eps_t * e;
        return tp / std::sqrt(msquare(tp));  // back onto the unit hyperboloid
    };
    SmearOptions oa = opt;
    oa.collapse_outer = false;
    if (!oa.rings_axis) oa.rings_axis = Vec3{a == 1 ? 1.0 : 0.0, a == 2 ? 1.0 : 0.0, a == 3 ? 1.0 : 0.0};
    cplx lhs = (smear_g(B, gR, fdot, frame_at(ht), oa) - smear_g(B, gR, fdot, frame_at(-ht), oa)) /
               (2.0 * ht);

    // first term: (∂_a B - l_a t·∂B) smeared against s ∂f in the rest gauge
    NullProfile sfdot = detail::multiply_by_s(fdot);
    FourVector ea{0.0, a == 1 ? 1.0 : 0.0, a == 2 ? 1.0 : 0.0, a == 3 ? 1.0 : 0.0};
    NodeField D;
    if (b.angular_independent) {
        D = [b, ea](const FourVector& x, const Vec3& n) -> cplx {
            double la = -(ea.s.x * n.x + ea.s.y * n.y + ea.s.z * n.z);  // lowered spatial component
            return detail::radial_field_derivative(b, ea, x) -
                   la * detail::radial_field_derivative(b, FourVector{1.0, 0.0, 0.0, 0.0}, x);
        };
    } else {
        D = [&b, ea, fo](const FourVector& x, const Vec3& n) -> cplx {
            double la = -(ea.s.x * n.x + ea.s.y * n.y + ea.s.z * n.z);
            double da = field_directional_derivative(b, ea, x, fo);
            double dt = field_directional_derivative(b, FourVector{1.0, 0.0, 0.0, 0.0}, x, fo);
            return cplx(da - la * dt);
        };
    }
    cplx term1 = smear_g(D, as_rkernel(gR), sfdot, lab_frame(), oa);
    // second term: B[h_R, l_a ∂f]
    NullProfile lafdot = detail::multiply_by_l_component(fdot, a);
    cplx term2 = smear_g(B, moment_kernel(g, R), lafdot, lab_frame(), oa);
    return std::abs(lhs - (term1 + term2));
}

// ----------------------------------------------------------------------------
// Momentum-side smearing on the lightcone sheet.

struct MomentumSmearOptions {
    int n_theta = 48;
    double radial_panel = 0.25;
    int gl = 10;
};

/// The momentum-side value of the frequency-split smeared field
/// B^0_±[g_R, f]: with the field spectrum concentrated on the cone the
/// g̃(R p∓) factor collapses to g̃(0) and the integral restricts to the sheet:
///   sign +:  i (2π g̃(0)) ∫_0^∞ ∫ f̃(ω,n̂) conj(c(ω,n̂)) dΩ dω
///   sign -: -i (2π g̃(0)) ∫_0^∞ ∫ f̃(-ω,n̂) c(ω,n̂) dΩ dω.
inline cplx momentum_side_smear(const MomentumProfile& mp, const GKernel& g, const NullProfile& f,
                                double R, int sign, const MomentumSmearOptions& opt = {}) {
    (void)R;  // the sheet value is R-independent; R is kept for interface symmetry
    if (sign != +1 && sign != -1) throw std::invalid_argument("momentum_side_smear: sign must be ±1");
    // infrared-singular spectrum with a non-vanishing kernel at ω = 0 is not integrable
    cplx b0 = mp.bdot_ft(0.0, Vec3{0, 0, 1});
    cplx f0 = profile_fourier(f, 0.0, Vec3{0, 0, 1});
    if (std::abs(b0) > 1e-12 && std::abs(f0) > 1e-12)
        throw std::invalid_argument("momentum_side_smear: non-integrable spectrum near ω = 0");
    double wmax = std::min(mp.omega_max, f.omega_max);
    cplx factor = 2.0 * M_PI * g.tilde(0.0);
    bool rings = mp.axisymmetric && f.axisymmetric;
    SphereGrid grid = rings ? SphereGrid::rings(opt.n_theta) : SphereGrid::product(opt.n_theta);
    auto angular = [&](double w) {
        cplx acc = 0;
        for (auto& nd : grid.nodes) {
            cplx ft = f.fourier && f.fourier_order == 0 ? f.fourier(sign * w, nd.n)
                                                        : profile_fourier(f, sign * w, nd.n);
            cplx cv = mp.w_times_c(w, nd.n) / w;  // c(ω,n̂), regular division guarded by the pre
            acc += nd.w * (sign > 0 ? ft * std::conj(cv) : ft * cv);
        }
        return acc;
    };
    cplx radial = panel_quad(angular, 1e-9, wmax, opt.radial_panel / mp.lambda, opt.gl);
    return cplx(0.0, sign) * factor * radial;
}

}  // namespace lca
