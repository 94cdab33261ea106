#pragma once

// Free massless Fock-space realization, truncated at two particles: the
// one-particle inner product with measure d³p/(2|p⃗|)/(2π)³, the E_μ spectral
// constraint and the two-particle norm it cuts, the coherent-state spectral
// condition integral, and the one-particle asymptotic limits of the smeared
// operators (multiplication by i(2π)² g̃_R^η(p⁻) f̃(1, p⁰p̂⁺)).

#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

#include "lca/detail/quadrature.hpp"
#include "lca/geometry.hpp"
#include "lca/profiles.hpp"

namespace lca {

struct FockGridOptions {
    double lambda = 1.0;
    int n_radial = 256;       // log-spaced radial nodes
    double omega_min = 1e-4;  // in units of 1/λ
    double omega_max = 8.0;   // in units of 1/λ
    int n_theta = 16;
};

/// Shared radial × angular grid: ω log-spaced with trapezoid weights (dω
/// measure), product sphere rule for the angular part.
struct FockGrid {
    std::vector<double> omega, wr;
    SphereGrid sphere;
    double lambda = 1.0;

    static std::shared_ptr<const FockGrid> make(const FockGridOptions& opt = {}) {
        auto g = std::make_shared<FockGrid>();
        g->lambda = opt.lambda;
        const int n = opt.n_radial;
        const double ulo = std::log(opt.omega_min / opt.lambda), uhi = std::log(opt.omega_max / opt.lambda);
        const double du = (uhi - ulo) / (n - 1);
        for (int i = 0; i < n; ++i) {
            double w = std::exp(ulo + i * du);
            g->omega.push_back(w);
            double tw = (i == 0 || i == n - 1) ? 0.5 : 1.0;
            g->wr.push_back(w * du * tw);  // dω = ω du
        }
        g->sphere = SphereGrid::product(opt.n_theta);
        return g;
    }

    std::size_t size() const { return omega.size() * sphere.nodes.size(); }
};

/// One-particle wavefunction Ĵ(p) sampled on the lightcone sheet.
struct MomentumWavefunction {
    std::shared_ptr<const FockGrid> grid;
    std::vector<cplx> psi;  // [i_omega * n_sphere + j]

    cplx& at(std::size_t i, std::size_t j) { return psi[i * grid->sphere.nodes.size() + j]; }
    const cplx& at(std::size_t i, std::size_t j) const {
        return psi[i * grid->sphere.nodes.size() + j];
    }

    static MomentumWavefunction from_function(std::shared_ptr<const FockGrid> grid,
                                              const std::function<cplx(double, const Vec3&)>& f) {
        MomentumWavefunction out;
        out.grid = grid;
        out.psi.resize(grid->size());
        for (std::size_t i = 0; i < grid->omega.size(); ++i)
            for (std::size_t j = 0; j < grid->sphere.nodes.size(); ++j)
                out.at(i, j) = f(grid->omega[i], grid->sphere.nodes[j].n);
        return out;
    }

    // max |ψ|(λ+ω)² over the grid: the declared decay-envelope constant
    double envelope_constant() const {
        double c = 0;
        for (std::size_t i = 0; i < grid->omega.size(); ++i)
            for (std::size_t j = 0; j < grid->sphere.nodes.size(); ++j)
                c = std::max(c, std::abs(at(i, j)) * std::pow(grid->lambda + grid->omega[i], 2.0));
        return c;
    }
};

/// (J₁,J₂) = (1/(2π)³) ∫ conj(Ĵ₁) Ĵ₂ d³p/(2|p⃗|) by radial × sphere quadrature.
inline cplx inner_product(const MomentumWavefunction& a, const MomentumWavefunction& b) {
    if (a.grid != b.grid) throw std::invalid_argument("inner_product: wavefunctions on different grids");
    const auto& g = *a.grid;
    // radial tail guard: the measure-weighted samples at the edge must be negligible
    double edge = 0, peak = 0;
    cplx acc = 0;
    for (std::size_t i = 0; i < g.omega.size(); ++i) {
        double wrad = g.wr[i] * 0.5 * g.omega[i];  // ω² dω / (2ω)
        for (std::size_t j = 0; j < g.sphere.nodes.size(); ++j) {
            cplx term = std::conj(a.at(i, j)) * b.at(i, j);
            acc += wrad * g.sphere.nodes[j].w * term;
            double m = std::abs(term) * g.omega[i] * g.omega[i];
            peak = std::max(peak, m);
            if (i + 1 == g.omega.size()) edge = std::max(edge, m);
        }
    }
    if (peak > 0 && edge > 1e-9 * peak)
        throw std::runtime_error("inner_product: radial tail mass above threshold at ω_max");
    return acc / std::pow(2.0 * M_PI, 3.0);
}

inline double norm_sq(const MomentumWavefunction& a) { return inner_product(a, a).real(); }

// ----------------------------------------------------------------------------
// Spectral window and the constrained two-particle norm.

/// {p : 0 <= p² <= μ², p⁰ >= 0}; on the two-particle sheet data the constraint
/// reads 2 p₁·p₂ <= μ², i.e. η = p₁·p₂/(2ω₁ω₂) <= μ²/(4ω₁ω₂).
struct SpectralWindow {
    double mu = 0.0;

    // fraction of the relative-angle measure η ∈ [0,1] the window keeps
    double eta_fraction(double w1, double w2) const {
        if (mu <= 0.0) return 0.0;
        return std::min(1.0, mu * mu / (4.0 * w1 * w2));
    }
};

/// ‖E_μ a*(J)²Ω‖² for isotropic-modulus Ĵ: the constrained double integral in
/// (ω₁, ω₂, η), with the Wick symmetrization factor 2 so that μ → ∞ recovers
/// ‖a*(J)²Ω‖² = 2(J,J)².
inline double two_particle_norm_sq(const MomentumWavefunction& J, double mu) {
    if (mu < 0.0) throw std::invalid_argument("two_particle_norm_sq: mu must be >= 0");
    const auto& g = *J.grid;
    const std::size_t ns = g.sphere.nodes.size();
    // isotropy of |Ĵ| is required for the (ω₁, ω₂, η) reduction
    std::vector<double> rho2(g.omega.size());
    for (std::size_t i = 0; i < g.omega.size(); ++i) {
        double lo = 1e300, hi = 0;
        for (std::size_t j = 0; j < ns; ++j) {
            double a = std::abs(J.at(i, j));
            lo = std::min(lo, a);
            hi = std::max(hi, a);
        }
        if (hi > 0 && (hi - lo) > 1e-10 * hi)
            throw std::invalid_argument("two_particle_norm_sq: |J| must be isotropic");
        rho2[i] = hi * hi;
    }
    SpectralWindow win{mu};
    double acc = 0;
    for (std::size_t i = 0; i < g.omega.size(); ++i) {
        double a1 = g.wr[i] * g.omega[i] * rho2[i];
        if (a1 == 0.0) continue;
        for (std::size_t k = 0; k < g.omega.size(); ++k) {
            double frac = win.eta_fraction(g.omega[i], g.omega[k]);
            if (frac == 0.0) continue;
            acc += a1 * g.wr[k] * g.omega[k] * rho2[k] * frac;
        }
    }
    return acc / (8.0 * std::pow(M_PI, 4.0));
}

/// Series bound for ‖φ(a*(J)) P_{H₂}‖ with φ(x) = (e^{-ix}-1+ix)/x², using
/// ‖a*(J)ⁿ P_{H₂}‖² = ((n+2)!/2)(J,J)ⁿ.
inline double phi_operator_bound(double jj) {
    double acc = 0, logfact = std::lgamma(3.0);  // ln 2!
    for (int n = 0; n < 200; ++n) {
        double lg = std::lgamma(n + 3.0);
        double term = std::exp(0.5 * (n * std::log(std::max(jj, 1e-300)) - std::log(2.0) - lg));
        if (jj == 0.0 && n > 0) term = 0.0;
        acc += term;
        if (term < 1e-17 * acc) break;
        (void)logfact;
    }
    return acc;
}

struct SpectralConditionResult {
    double integral;
    std::vector<double> integrand_mu;       // sampled μ
    std::vector<double> integrand_values;   // the bound at those μ
};

/// ∫_{μ_min}^{ε_cut} ‖(E_μ-E₀)W(J)Ω‖ dμ/μ with the integrand realized through
/// the two-particle chain: e^{-(J,J)/2} ‖φ(a*(J))P_{H₂}‖ √(‖E_μ a*(J)²Ω‖²).
inline SpectralConditionResult spectral_condition_integral(const MomentumWavefunction& J, double eps_cut,
                                                           double mu_min, int n_nodes = 48) {
    if (!(mu_min > 0.0) || !(eps_cut > mu_min))
        throw std::invalid_argument("spectral_condition_integral: need 0 < mu_min < eps_cut");
    double jj = norm_sq(J);
    double prefactor = std::exp(-0.5 * jj) * phi_operator_bound(jj);
    auto integrand = [&](double mu) {
        return prefactor * std::sqrt(two_particle_norm_sq(J, mu));
    };
    SpectralConditionResult out;
    // log-μ quadrature: the integrand/μ is smooth and ~const per decade
    double acc = panel_quad(
        [&](double u) {
            double mu = std::exp(u);
            double v = integrand(mu);
            return v;  // dμ/μ = du
        },
        std::log(mu_min), std::log(eps_cut), 0.25, 8);
    out.integral = acc;
    for (double mu : {mu_min, 0.1 * eps_cut, eps_cut}) {
        out.integrand_mu.push_back(mu);
        out.integrand_values.push_back(integrand(mu));
    }
    return out;
}

// ----------------------------------------------------------------------------
// Mass-spread one-particle data for the asymptotic limits.

struct MassSpreadOptions {
    int n_mass = 16;     // slices on [0, m_max]; slice 0 is the lightcone sheet
    double m_max = 1.0;  // in units of 1/λ
};

/// One-particle component of B Ω sampled off the mass shell: slice 0 carries
/// the p² = 0 sheet with full weight, slices j >= 1 the mass spread with
/// trapezoid weights in m. Needed because g̃(R p⁻) acts nontrivially only off
/// the cone.
struct MassSpreadWavefunction {
    std::shared_ptr<const FockGrid> grid;
    std::vector<double> mass, wm;
    std::vector<std::vector<cplx>> slices;  // per mass slice, layout as MomentumWavefunction

    static MassSpreadWavefunction from_function(
        std::shared_ptr<const FockGrid> grid, const std::function<cplx(double m, double w, const Vec3&)>& f,
        const MassSpreadOptions& opt = {}) {
        MassSpreadWavefunction out;
        out.grid = grid;
        out.mass.push_back(0.0);
        out.wm.push_back(1.0);
        const int nm = opt.n_mass - 1;
        const double dm = opt.m_max / grid->lambda / nm;
        for (int j = 1; j <= nm; ++j) {
            out.mass.push_back(j * dm);
            out.wm.push_back((j == nm) ? 0.5 * dm : dm);
        }
        const std::size_t sz = grid->size();
        for (std::size_t s = 0; s < out.mass.size(); ++s) {
            std::vector<cplx> data(sz);
            for (std::size_t i = 0; i < grid->omega.size(); ++i)
                for (std::size_t j = 0; j < grid->sphere.nodes.size(); ++j)
                    data[i * grid->sphere.nodes.size() + j] =
                        f(out.mass[s], grid->omega[i], grid->sphere.nodes[j].n);
            out.slices.push_back(std::move(data));
        }
        return out;
    }

    // total norm²: Σ_slices wm ∫ |ψ|² d³p/(2p⁰) /(2π)³
    double norm_sq() const {
        const auto& g = *grid;
        double acc = 0;
        for (std::size_t s = 0; s < slices.size(); ++s) {
            double m = mass[s];
            double part = 0;
            for (std::size_t i = 0; i < g.omega.size(); ++i) {
                double w = g.omega[i];
                double p0 = std::sqrt(w * w + m * m);
                double wrad = g.wr[i] * w * w / (2.0 * p0);
                for (std::size_t j = 0; j < g.sphere.nodes.size(); ++j)
                    part += wrad * g.sphere.nodes[j].w *
                            std::norm(slices[s][i * g.sphere.nodes.size() + j]);
            }
            acc += wm[s] * part;
        }
        return acc / std::pow(2.0 * M_PI, 3.0);
    }

    MomentumWavefunction sheet() const {
        MomentumWavefunction out;
        out.grid = grid;
        out.psi = slices[0];
        return out;
    }
};

/// The transform value f̃(1, p⁰ p̂⁺) = f̃(p⁰, t+p̂)/p⁰ of a degree -2 kernel.
inline cplx kernel_ft_on_ray(const NullProfile& f, double p0, const Vec3& n) {
    cplx ft = (f.fourier && f.fourier_order == 0) ? f.fourier(p0, n) : profile_fourier(f, p0, n);
    return ft / p0;
}

/// Multiplication by i (2π)² g̃_R^η(p⁻) f̃(1, p⁰ p̂⁺): the one-particle action
/// of the smeared operator on B Ω data. As R → ∞ the massive slices die and
/// the sheet is multiplied by 2πi f̃(1, p).
inline MassSpreadWavefunction asymptotic_one_particle(const MassSpreadWavefunction& psi,
                                                      const NullProfile& f, const GKernel& g, double R,
                                                      double eta = 1.0) {
    if (psi.slices.size() < 2)
        throw std::invalid_argument(
            "asymptotic_one_particle: mass-spread grid missing; g̃(R p⁻) acts trivially on pure "
            "sheet data — build the state with mass slices");
    ScaledG gR = scaled_g(g, R, eta, psi.grid->lambda);
    MassSpreadWavefunction out = psi;
    const auto& grid = *psi.grid;
    const std::size_t ns = grid.sphere.nodes.size();
    for (std::size_t s = 0; s < psi.slices.size(); ++s) {
        double m = psi.mass[s];
        for (std::size_t i = 0; i < grid.omega.size(); ++i) {
            double w = grid.omega[i];
            double p0 = std::sqrt(w * w + m * m);
            double pminus = p0 - w;
            cplx gt = gR.tilde(pminus);
            for (std::size_t j = 0; j < ns; ++j) {
                cplx ft = kernel_ft_on_ray(f, p0, grid.sphere.nodes[j].n);
                cplx mult = cplx(0.0, 1.0) * std::pow(2.0 * M_PI, 2.0) * gt * ft;
                out.slices[s][i * ns + j] = mult * psi.slices[s][i * ns + j];
            }
        }
    }
    return out;
}

/// The R → ∞ limit on the sheet: 2πi f̃(1,p) ψ_sheet.
inline MomentumWavefunction asymptotic_limit_sheet(const MassSpreadWavefunction& psi,
                                                   const NullProfile& f) {
    MomentumWavefunction out = psi.sheet();
    const auto& grid = *psi.grid;
    const std::size_t ns = grid.sphere.nodes.size();
    for (std::size_t i = 0; i < grid.omega.size(); ++i)
        for (std::size_t j = 0; j < ns; ++j)
            out.psi[i * ns + j] *= cplx(0.0, 2.0 * M_PI) * kernel_ft_on_ray(f, grid.omega[i],
                                                                            grid.sphere.nodes[j].n);
    return out;
}

struct EtaFamilyRow {
    double eta, R;
    double sheet_distance;   // ‖sheet part − limit‖ / ‖limit‖
    double massive_norm;     // √(Σ_{s>=1} wm ‖slice‖²)
};

/// Repeats the asymptotic multiplication across η ∈ (0,1] and the R list; the
/// sheet part is η- and R-independent and the massive part must decay.
inline std::vector<EtaFamilyRow> eta_family_limit(const MassSpreadWavefunction& psi, const NullProfile& f,
                                                  const GKernel& g, const std::vector<double>& etas,
                                                  const std::vector<double>& R_list) {
    std::vector<EtaFamilyRow> rows;
    MomentumWavefunction limit = asymptotic_limit_sheet(psi, f);
    double limit_norm = std::sqrt(norm_sq(limit));
    for (double eta : etas)
        for (double R : R_list) {
            MassSpreadWavefunction acted = asymptotic_one_particle(psi, f, g, R, eta);
            // sheet distance
            MomentumWavefunction sheet = acted.sheet();
            double d2 = 0;
            const auto& grid = *psi.grid;
            for (std::size_t k = 0; k < sheet.psi.size(); ++k) sheet.psi[k] -= limit.psi[k];
            d2 = norm_sq(sheet);
            // massive part norm
            MassSpreadWavefunction massive = acted;
            for (auto& v : massive.slices[0]) v = 0.0;
            (void)grid;
            rows.push_back({eta, R, std::sqrt(d2) / std::max(limit_norm, 1e-300),
                            std::sqrt(massive.norm_sq())});
        }
    return rows;
}

/// Vacuum coefficient of the two-operator asymptotic product:
/// (2π)² (f̃₁(1,P)ψ₁, E₀ f̃₂(1,P)ψ₂) on the sheet.
inline cplx scattering_overlap(const MomentumWavefunction& psi1, const NullProfile& f1,
                               const MomentumWavefunction& psi2, const NullProfile& f2) {
    MomentumWavefunction chi1 = psi1, chi2 = psi2;
    const auto& grid = *psi1.grid;
    const std::size_t ns = grid.sphere.nodes.size();
    for (std::size_t i = 0; i < grid.omega.size(); ++i)
        for (std::size_t j = 0; j < ns; ++j) {
            chi1.psi[i * ns + j] *= kernel_ft_on_ray(f1, grid.omega[i], grid.sphere.nodes[j].n);
            chi2.psi[i * ns + j] *= kernel_ft_on_ray(f2, grid.omega[i], grid.sphere.nodes[j].n);
        }
    return std::pow(2.0 * M_PI, 2.0) * inner_product(chi1, chi2);
}

/// The k = 0 adjoint multiplier restricted to the zero-momentum cell: for
/// kernels of the b''' form, f̃(ω)/ω vanishes like ω² at the bottom of the
/// grid, so the adjoint annihilates vacuum-sector data. Returns the max
/// multiplier magnitude on the lowest-ω cell.
inline double vacuum_annihilation_residual(const NullProfile& f, const FockGrid& grid) {
    double w0 = grid.omega.front();
    double worst = 0;
    for (auto& nd : grid.sphere.nodes)
        worst = std::max(worst, std::abs(kernel_ft_on_ray(f, w0, nd.n)));
    return worst * std::pow(2.0 * M_PI, 2.0);
}

/// Residual of d/dR g_R(r) = (1/R) h_R(r) with h(r) = -g(r) - r g'(r),
/// by central differences in R; max over the kernel support.
inline double derivative_kernel_identity(const GKernel& g, double R, double step = 1e-3) {
    double worst = 0;
    for (int k = 0; k <= 200; ++k) {
        double u = g.tau1 + (g.tau2 - g.tau1) * k / 200.0;
        double r = u * R;
        auto gr = [&](double RR) { return g(r / RR) / RR; };
        double fd = (gr(R + step) - gr(R - step)) / (2.0 * step);
        double h = -g(u) - u * g.dg(u);
        double rhs = h / (R * R);
        worst = std::max(worst, std::abs(fd - rhs));
    }
    return worst;
}

}  // namespace lca
