#pragma once

// Minkowski four-vector algebra with signature (+,-,-,-), lightcone
// parametrization in the t-gauge, axis-aligned boosts, and the invariant
// sphere integral for functions homogeneous of degree -2 on the cone.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lca/detail/quadrature.hpp"

namespace lca {

struct Vec3 {
    double x = 0, y = 0, z = 0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double c) const { return {c * x, c * y, c * z}; }
    Vec3 operator/(double c) const { return {x / c, y / c, z / c}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
};

inline Vec3 operator*(double c, const Vec3& v) { return v * c; }
inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }
inline Vec3 normalized(const Vec3& v) {
    double n = norm(v);
    if (n == 0) throw std::invalid_argument("normalized: zero vector");
    return v / n;
}

// orthonormal pair completing n̂ to a right-handed basis
inline std::pair<Vec3, Vec3> tangent_basis(const Vec3& n) {
    Vec3 a = std::abs(n.z) < 0.9 ? Vec3{0, 0, 1} : Vec3{1, 0, 0};
    Vec3 e1 = normalized(cross(a, n));
    Vec3 e2 = cross(n, e1);
    return {e1, e2};
}

struct FourVector {
    double t = 0;   // x^0
    Vec3 s{};       // spatial part

    FourVector() = default;
    FourVector(double x0, double x1, double x2, double x3) : t(x0), s{x1, x2, x3} {}
    FourVector(double x0, const Vec3& xs) : t(x0), s(xs) {}

    FourVector operator+(const FourVector& o) const { return {t + o.t, s + o.s}; }
    FourVector operator-(const FourVector& o) const { return {t - o.t, s - o.s}; }
    FourVector operator*(double c) const { return {c * t, s * c}; }
    FourVector operator/(double c) const { return {t / c, s / c}; }

    double operator[](int i) const {
        switch (i) {
            case 0: return t;
            case 1: return s.x;
            case 2: return s.y;
            case 3: return s.z;
        }
        throw std::out_of_range("FourVector index");
    }
};

inline FourVector operator*(double c, const FourVector& v) { return v * c; }

// Minkowski product x.y = x^0 y^0 - x⃗.y⃗
inline double mdot(const FourVector& a, const FourVector& b) { return a.t * b.t - dot(a.s, b.s); }
inline double msquare(const FourVector& a) { return mdot(a, a); }

// component with the index lowered: a_mu = eta_{mu nu} a^nu
inline double lower(const FourVector& a, int mu) { return mu == 0 ? a.t : -a[mu]; }

constexpr double kNullTol = 1e-10;

inline bool is_null(const FourVector& l, double tol = kNullTol) {
    double scale = l.t * l.t + dot(l.s, l.s);
    return std::abs(msquare(l)) <= tol * std::max(scale, 1.0);
}

inline FourVector lab_frame() { return {1, 0, 0, 0}; }

// Null direction l = t + n̂ in the gauge t·l = 1 of the given frame.
struct NullDirection {
    Vec3 n{0, 0, 1};
    FourVector frame = lab_frame();

    NullDirection() = default;
    NullDirection(const Vec3& nhat, const FourVector& fr = lab_frame()) : n(normalized(nhat)), frame(fr) {}

    // the null four-vector in lab components; for the lab frame simply (1, n̂)
    FourVector l() const;
};

struct Boost {
    double rapidity = 0;
    Vec3 axis{0, 0, 1};

    Boost() = default;
    Boost(double chi, const Vec3& ax) : rapidity(chi), axis(normalized(ax)) {}

    std::array<std::array<double, 4>, 4> matrix() const {
        const double ch = std::cosh(rapidity), sh = std::sinh(rapidity);
        std::array<std::array<double, 4>, 4> m{};
        for (int i = 0; i < 4; ++i) m[i][i] = 1.0;
        const double a[3] = {axis.x, axis.y, axis.z};
        m[0][0] = ch;
        for (int i = 0; i < 3; ++i) {
            m[0][i + 1] = sh * a[i];
            m[i + 1][0] = sh * a[i];
            for (int j = 0; j < 3; ++j) m[i + 1][j + 1] = (i == j ? 1.0 : 0.0) + (ch - 1.0) * a[i] * a[j];
        }
        return m;
    }

    Boost inverse() const { return Boost(-rapidity, axis); }
};

inline FourVector boost_apply(const Boost& L, const FourVector& x) {
    auto m = L.matrix();
    double out[4] = {0, 0, 0, 0};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out[i] += m[i][j] * x[j];
    return {out[0], out[1], out[2], out[3]};
}

inline FourVector NullDirection::l() const {
    FourVector lab_l{1.0, n};
    if (frame.t == 1.0 && norm(frame.s) == 0.0) return lab_l;
    // frame = boost of the lab time axis; l = Λ(1, n̂)
    double chi = std::acosh(frame.t);
    if (norm(frame.s) == 0.0) return lab_l;
    Boost L(chi, normalized(frame.s));
    return boost_apply(L, lab_l);
}

inline void require_unit_timelike(const FourVector& tp) {
    if (!(tp.t > 0) || std::abs(msquare(tp) - 1.0) > 1e-9)
        throw std::invalid_argument("frame vector must be unit, timelike, future-pointing");
}

// ----------------------------------------------------------------------------
// Sphere quadrature: Gauss-Legendre in cos(theta) x uniform trapezoid in phi.

struct SphereNode {
    Vec3 n;
    double w;  // weight for the dΩ measure
};

struct SphereGrid {
    int n_theta = 64;
    int n_phi = 128;
    std::vector<SphereNode> nodes;

    static SphereGrid product(int n_theta, int n_phi = -1) {
        SphereGrid g;
        g.n_theta = n_theta;
        g.n_phi = n_phi > 0 ? n_phi : 2 * n_theta;
        const auto& r = gauss_legendre(n_theta);
        const double dphi = 2.0 * M_PI / g.n_phi;
        g.nodes.reserve((std::size_t)n_theta * g.n_phi);
        for (int i = 0; i < n_theta; ++i) {
            double c = r.x[i], s = std::sqrt(std::max(0.0, 1.0 - c * c));
            for (int j = 0; j < g.n_phi; ++j) {
                double phi = (j + 0.5) * dphi;
                g.nodes.push_back({{s * std::cos(phi), s * std::sin(phi), c}, r.w[i] * dphi});
            }
        }
        return g;
    }

    // polar rings only: for integrands independent of phi (weight carries the 2π)
    static SphereGrid rings(int n_theta) {
        SphereGrid g;
        g.n_theta = n_theta;
        g.n_phi = 1;
        const auto& r = gauss_legendre(n_theta);
        for (int i = 0; i < n_theta; ++i) {
            double c = r.x[i], s = std::sqrt(std::max(0.0, 1.0 - c * c));
            g.nodes.push_back({{s, 0.0, c}, 2.0 * M_PI * r.w[i]});
        }
        return g;
    }

    double weight_sum() const {
        double acc = 0;
        for (auto& nd : nodes) acc += nd.w;
        return acc;
    }
};

// Quadrature of ∫ f(l) d²l in the gauge of `frame` for f homogeneous of
// degree -2, passed as a handle on null four-vectors. The frame change is a
// reweighting of the lab grid: node l -> l/(t'·l), weight w -> w (t'·l)^{-2}.
template <class F>
auto invariant_sphere_integral(F&& f, const SphereGrid& grid, const FourVector& frame = lab_frame()) {
    require_unit_timelike(frame);
    using R = decltype(f(FourVector{}));
    R acc{};
    for (auto& nd : grid.nodes) {
        FourVector l{1.0, nd.n};
        double tl = mdot(frame, l);
        R v = f(l / tl);
        if (!std::isfinite(std::abs(v)))
            throw std::runtime_error("invariant_sphere_integral: non-finite integrand at node (" +
                                     std::to_string(nd.n.x) + "," + std::to_string(nd.n.y) + "," +
                                     std::to_string(nd.n.z) + ")");
        acc += (nd.w / (tl * tl)) * v;
    }
    return acc;
}

// l' = l/(t'·l) in the t'-gauge plus the measure reweighting factor (t'·l)^{-2}
struct RegaugedDirection {
    NullDirection dir;
    double weight;
    FourVector l;  // the regauged null vector in lab components
};

inline RegaugedDirection regauge(const NullDirection& d, const FourVector& t_new) {
    require_unit_timelike(t_new);
    FourVector l = d.l();
    double tl = mdot(t_new, l);
    FourVector lp = l / tl;
    RegaugedDirection out;
    out.weight = 1.0 / (tl * tl);
    out.l = lp;
    // recover n̂' in the rest basis of t_new via the inverse axis-aligned boost
    if (norm(t_new.s) == 0.0) {
        out.dir = NullDirection(lp.s, t_new);
    } else {
        Boost L(std::acosh(t_new.t), normalized(t_new.s));
        FourVector back = boost_apply(L.inverse(), lp);
        out.dir = NullDirection(back.s, t_new);
    }
    return out;
}

// ----------------------------------------------------------------------------
// Intrinsic operators on the unit sphere.

// L_ab f at n̂ for spatial a,b via central differences along the rotation
// generated in the (a,b) plane. f is a function of the unit vector.
template <class F>
auto rotation_derivative(F&& f, const Vec3& n, int a, int b, double h = 1e-5) {
    auto rot = [&](double ang) {
        double v[3] = {n.x, n.y, n.z};
        double ca = std::cos(ang), sa = std::sin(ang);
        double va = v[a - 1], vb = v[b - 1];
        v[a - 1] = ca * va - sa * vb;
        v[b - 1] = sa * va + ca * vb;
        return Vec3{v[0], v[1], v[2]};
    };
    return (f(rot(h)) - f(rot(-h))) / (2.0 * h);
}

// Surface Laplacian by second-order central differences in a chart whose pole
// is kept away from n̂ (rotated chart near the poles of the default one).
template <class F>
auto surface_laplacian_fd(F&& f, const Vec3& n, double h = 1e-4) {
    Vec3 pole{0, 0, 1};
    if (std::abs(n.z) > 0.9) pole = Vec3{1, 0, 0};  // |sin theta| too small: rotated chart
    Vec3 ez = pole;
    Vec3 ex, ey;
    std::tie(ex, ey) = tangent_basis(ez);
    double z = dot(n, ez), xx = dot(n, ex), yy = dot(n, ey);
    double theta = std::acos(std::clamp(z, -1.0, 1.0));
    double phi = std::atan2(yy, xx);
    auto at = [&](double th, double ph) {
        Vec3 v = ez * std::cos(th) + (ex * std::cos(ph) + ey * std::sin(ph)) * std::sin(th);
        return f(v);
    };
    auto f0 = at(theta, phi);
    auto ftp = at(theta + h, phi), ftm = at(theta - h, phi);
    auto fpp = at(theta, phi + h), fpm = at(theta, phi - h);
    double st = std::sin(theta), ct = std::cos(theta);
    auto d2t = (ftp - 2.0 * f0 + ftm) / (h * h);
    auto dt = (ftp - ftm) / (2.0 * h);
    auto d2p = (fpp - 2.0 * f0 + fpm) / (h * h);
    return d2t + (ct / st) * dt + d2p / (st * st);
}

}  // namespace lca
