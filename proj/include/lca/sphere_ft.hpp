#pragma once

// Oscillatory Fourier integrals on the unit sphere:
//   ∫ e^{-i q⃗·n̂} f(n̂) dΩ = (2πi/|q⃗|)(e^{-i|q⃗|} f(q̂) - e^{i|q⃗|} f(-q̂)) + remainder,
// with the remainder in momentum form (the M⃗f integral, regular in polar
// coordinates aligned with q̂) and in position form (the spherical-cap
// integral of Δ_S f) together with its sup-norm bound.

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

#include "lca/detail/fft.hpp"
#include "lca/detail/quadrature.hpp"
#include "lca/geometry.hpp"

namespace lca {

struct SphereFunction {
    std::function<cplx(const Vec3&)> f;
    std::function<cplx(const Vec3&)> laplacian;  // analytic Δ_S f when available

    cplx lap(const Vec3& n) const { return laplacian ? laplacian(n) : surface_laplacian_fd(f, n); }

    // ‖Δ_S f‖_∞ estimated on a scan grid
    double lap_sup(int n_theta = 24) const {
        SphereGrid g = SphereGrid::product(n_theta);
        double m = 0;
        for (auto& nd : g.nodes) m = std::max(m, std::abs(lap(nd.n)));
        return m;
    }
};

struct SphereFtOptions {
    int min_order = 64;
    double nodes_per_unit_q = 4.0;  // polar order grows linearly with |q⃗|
    double max_q = 1000.0;
};

namespace detail {

inline int sphere_ft_order(double q, const SphereFtOptions& opt) {
    if (q > opt.max_q)
        throw std::invalid_argument("sphere_fourier: |q| exceeds the resolvable range; required order " +
                                    std::to_string((int)std::ceil(opt.nodes_per_unit_q * q)));
    return std::max(opt.min_order, (int)std::ceil(opt.nodes_per_unit_q * q));
}

}  // namespace detail

/// ∫ e^{-i q⃗·n̂} f(n̂) dΩ(n̂) by product quadrature in polar coordinates
/// aligned with q̂ (order scaled with |q⃗|).
inline cplx sphere_fourier(const SphereFunction& fn, const Vec3& q, const SphereFtOptions& opt = {}) {
    double qn = norm(q);
    if (qn < 1e-14) {
        SphereGrid g = SphereGrid::product(opt.min_order);
        cplx acc = 0;
        for (auto& nd : g.nodes) acc += nd.w * fn.f(nd.n);
        return acc;
    }
    int order = detail::sphere_ft_order(qn, opt);
    Vec3 qhat = q / qn;
    auto [e1, e2] = tangent_basis(qhat);
    const auto& gl = gauss_legendre(order);
    int n_phi = std::max(2 * opt.min_order / 2, order);
    cplx acc = 0;
    for (int i = 0; i < order; ++i) {
        double c = gl.x[i], st = std::sqrt(std::max(0.0, 1.0 - c * c));
        cplx ring = 0;
        for (int j = 0; j < n_phi; ++j) {
            double phi = 2.0 * M_PI * j / n_phi;
            Vec3 n = qhat * c + (e1 * std::cos(phi) + e2 * std::sin(phi)) * st;
            ring += fn.f(n);
        }
        acc += gl.w[i] * std::exp(cplx(0.0, -qn * c)) * ring * (2.0 * M_PI / n_phi);
    }
    return acc;
}

/// The two boundary terms (2πi/|q⃗|)(e^{-i|q⃗|} f(q̂) - e^{i|q⃗|} f(-q̂)).
inline cplx boundary_expansion(const SphereFunction& fn, const Vec3& q) {
    double qn = norm(q);
    if (qn <= 0) throw std::invalid_argument("boundary_expansion: singular at q = 0");
    Vec3 qhat = q / qn;
    return cplx(0.0, 2.0 * M_PI / qn) *
           (std::exp(cplx(0.0, -qn)) * fn.f(qhat) - std::exp(cplx(0.0, qn)) * fn.f(Vec3{} - qhat));
}

/// Momentum form of the remainder: i ∫ e^{-i q⃗·n̂} (q⃗×n̂)/|q⃗×n̂|² · M⃗f dΩ.
/// In spherical angles about q̂ the kernel contracts to ∂_θ f and the
/// integrand is regular; the polar Jacobian cancels the |q⃗×n̂|^{-1}
/// singularity at n̂ = ±q̂ exactly.
inline cplx remainder_momentum(const SphereFunction& fn, const Vec3& q, const SphereFtOptions& opt = {}) {
    double qn = norm(q);
    if (qn <= 0) throw std::invalid_argument("remainder_momentum: q must be nonzero");
    int order = detail::sphere_ft_order(qn, opt);
    Vec3 qhat = q / qn;
    auto [e1, e2] = tangent_basis(qhat);
    int n_phi = std::max(opt.min_order, order);
    // ∂_θ f by central difference in the polar angle about q̂
    auto dtheta_f = [&](double theta, double phi) {
        const double h = 1e-5;
        auto at = [&](double th) {
            Vec3 n = qhat * std::cos(th) + (e1 * std::cos(phi) + e2 * std::sin(phi)) * std::sin(th);
            return fn.f(n);
        };
        return (at(theta + h) - at(theta - h)) / (2.0 * h);
    };
    // (i/|q⃗|) ∫ e^{-i|q⃗|cosθ} ∂_θ f dθ dφ, Gauss-Legendre in θ
    auto theta_integral = [&](double phi) {
        return panel_quad(
            [&](double th) { return std::exp(cplx(0.0, -qn * std::cos(th))) * dtheta_f(th, phi); }, 0.0,
            M_PI, M_PI / order, 8);
    };
    cplx acc = 0;
    for (int j = 0; j < n_phi; ++j) acc += theta_integral(2.0 * M_PI * j / n_phi);
    return cplx(0.0, 1.0 / qn) * acc * (2.0 * M_PI / n_phi);
}

/// Position form of the remainder:
///   R(z⃗) = -(|z⃗|²-1)^{-1} ∫ θ(z⃗·n̂ - 1) Δ_S f dΩ
/// (the cap is empty for |z⃗| < 1, where R vanishes identically).
inline cplx remainder_position(const SphereFunction& fn, const Vec3& z, int n_theta = 48, int n_phi = 96) {
    double zn = norm(z);
    if (std::abs(zn - 1.0) < 1e-6)
        throw std::invalid_argument("remainder_position: prefactor singular at |z| = 1");
    if (zn < 1.0) return cplx(0.0);
    Vec3 zhat = z / zn;
    auto [e1, e2] = tangent_basis(zhat);
    double c_lo = 1.0 / zn;  // cap: z⃗·n̂ >= 1
    const auto& gl = gauss_legendre(n_theta);
    cplx acc = 0;
    for (int i = 0; i < n_theta; ++i) {
        double c = 0.5 * (c_lo + 1.0) + 0.5 * (1.0 - c_lo) * gl.x[i];
        double st = std::sqrt(std::max(0.0, 1.0 - c * c));
        cplx ring = 0;
        for (int j = 0; j < n_phi; ++j) {
            double phi = 2.0 * M_PI * j / n_phi;
            ring += fn.lap(zhat * c + (e1 * std::cos(phi) + e2 * std::sin(phi)) * st);
        }
        acc += gl.w[i] * 0.5 * (1.0 - c_lo) * ring * (2.0 * M_PI / n_phi);
    }
    return -acc / (zn * zn - 1.0);
}

/// Sup-norm bound on the position-form remainder:
/// |R(z⃗)| <= 2π ‖Δ_S f‖_∞ θ(|z⃗|-1) / (|z⃗|(|z⃗|+1)).
inline double remainder_position_bound(const SphereFunction& fn, const Vec3& z) {
    double zn = norm(z);
    if (zn < 1.0) return 0.0;
    return 2.0 * M_PI * fn.lap_sup() / (zn * (zn + 1.0));
}

/// |direct - boundary - remainder| at q⃗: the defect of the exact expansion.
inline double remainder_consistency(const SphereFunction& fn, const Vec3& q, const SphereFtOptions& opt = {}) {
    cplx direct = sphere_fourier(fn, q, opt);
    cplx boundary = boundary_expansion(fn, q);
    cplx rem = remainder_momentum(fn, q, opt);
    return std::abs(direct - boundary - rem);
}

}  // namespace lca
