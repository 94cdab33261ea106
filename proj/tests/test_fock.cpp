#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "lca/detail/fit.hpp"
#include "lca/fock.hpp"

using namespace lca;
using Catch::Approx;

namespace {

std::shared_ptr<const FockGrid> default_grid() {
    static std::shared_ptr<const FockGrid> g = FockGrid::make();
    return g;
}

MomentumWavefunction gaussian_state(std::shared_ptr<const FockGrid> g, double width = 1.0) {
    return MomentumWavefunction::from_function(
        g, [width](double w, const Vec3&) { return cplx(std::exp(-w * w / (width * width))); });
}

// independent contraction oracle: plain flattened sum over the grid with the
// d³p/(2ω)/(2π)³ measure assembled in place
cplx wick_pair_oracle(const MomentumWavefunction& a, const MomentumWavefunction& b) {
    const auto& g = *a.grid;
    cplx acc = 0;
    for (std::size_t i = 0; i < g.omega.size(); ++i)
        for (std::size_t j = 0; j < g.sphere.nodes.size(); ++j) {
            double measure = g.wr[i] * g.omega[i] * g.omega[i] / (2.0 * g.omega[i]) * g.sphere.nodes[j].w;
            acc += measure * std::conj(a.at(i, j)) * b.at(i, j);
        }
    return acc / std::pow(2.0 * M_PI, 3.0);
}

}  // namespace

TEST_CASE("one-particle inner product") {
    auto g = default_grid();

    SECTION("zero partner gives zero") {
        MomentumWavefunction a = gaussian_state(g);
        MomentumWavefunction z = MomentumWavefunction::from_function(
            g, [](double, const Vec3&) { return cplx(0.0); });
        REQUIRE(inner_product(a, z) == cplx(0.0));
    }

    SECTION("isotropic gaussian: (J,J) = 1/(16π²)") {
        MomentumWavefunction j = gaussian_state(g);
        double ref = 1.0 / (16.0 * M_PI * M_PI);
        REQUIRE(norm_sq(j) == Approx(ref).margin(1e-6));
    }

    SECTION("conjugate symmetry on random pairs") {
        std::mt19937_64 rng(41);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int trial = 0; trial < 5; ++trial) {
            double a1 = u(rng), a2 = u(rng), ph = u(rng);
            auto ja = MomentumWavefunction::from_function(g, [&](double w, const Vec3& n) {
                return std::exp(-w * w) * cplx(a1 + 0.2 * n.z, ph * w);
            });
            auto jb = MomentumWavefunction::from_function(g, [&](double w, const Vec3& n) {
                return std::exp(-0.8 * w * w) * cplx(a2, 0.3 * n.x * w);
            });
            cplx ab = inner_product(ja, jb), ba = inner_product(jb, ja);
            REQUIRE(std::abs(ab - std::conj(ba)) < 1e-12);
        }
    }

    SECTION("radial tail mass above threshold is reported") {
        auto flat = MomentumWavefunction::from_function(g, [](double, const Vec3&) { return cplx(1.0); });
        REQUIRE_THROWS_AS(inner_product(flat, flat), std::runtime_error);
    }
}

TEST_CASE("two-particle spectral constraint") {
    auto g = default_grid();
    // width 2: soft-pair corrections to the μ² law scale like (μ/width)² ln μ,
    // so the scaling window needs the spectrum concentrated well above μ_max
    MomentumWavefunction j = gaussian_state(g, 2.0);

    SECTION("μ = 0 leaves measure zero") {
        REQUIRE(two_particle_norm_sq(j, 0.0) == 0.0);
    }

    SECTION("μ → ∞ recovers the Wick norm 2(J,J)²") {
        double full = two_particle_norm_sq(j, 1e6);
        double jj = norm_sq(j);
        REQUIRE(full == Approx(2.0 * jj * jj).epsilon(1e-5));
    }

    SECTION("spectral slope 2 over the μ window") {
        std::vector<double> mus{0.4, 0.2, 0.1, 0.05}, vals;
        for (double mu : mus) vals.push_back(two_particle_norm_sq(j, mu));
        REQUIRE(loglog_slope(mus, vals) == Approx(2.0).margin(0.05));
    }

    SECTION("projection family is monotone in μ") {
        double prev = 0.0;
        for (double mu : {0.05, 0.1, 0.2, 0.4, 1.0, 4.0}) {
            double v = two_particle_norm_sq(j, mu);
            REQUIRE(v >= prev);
            prev = v;
        }
        SpectralWindow w{0.3};
        // the window fraction is idempotent and bounded by 1
        for (double w1 : {0.1, 1.0})
            for (double w2 : {0.2, 2.0}) {
                double fr = w.eta_fraction(w1, w2);
                REQUIRE(fr <= 1.0);
                REQUIRE(std::min(1.0, fr) == fr);
            }
    }

    SECTION("anisotropic modulus is rejected") {
        auto bad = MomentumWavefunction::from_function(
            g, [](double w, const Vec3& n) { return cplx(std::exp(-w * w) * (1.0 + 0.5 * n.z)); });
        REQUIRE_THROWS_AS(two_particle_norm_sq(bad, 0.3), std::invalid_argument);
    }
}

TEST_CASE("spectral condition integral") {
    auto g = default_grid();

    SECTION("zero state gives zero") {
        auto z = MomentumWavefunction::from_function(g, [](double, const Vec3&) { return cplx(0.0); });
        REQUIRE(spectral_condition_integral(z, 1.0, 1e-3).integral == 0.0);
    }

    SECTION("gaussian state: integral stable as μ_min decreases") {
        MomentumWavefunction j = gaussian_state(g, 2.0);
        double i2 = spectral_condition_integral(j, 1.0, 1e-2).integral;
        double i3 = spectral_condition_integral(j, 1.0, 1e-3).integral;
        double i4 = spectral_condition_integral(j, 1.0, 1e-4).integral;
        REQUIRE(std::abs(i2 - i4) / i4 < 0.02);
        REQUIRE(std::abs(i3 - i4) / i4 < 0.02);
    }

    SECTION("integrand bound grows monotonically with the amplitude") {
        MomentumWavefunction j = gaussian_state(g);
        MomentumWavefunction j2 = j;
        for (auto& v : j2.psi) v *= 2.0;
        auto a = spectral_condition_integral(j, 0.5, 1e-3);
        auto b = spectral_condition_integral(j2, 0.5, 1e-3);
        for (std::size_t k = 0; k < a.integrand_values.size(); ++k)
            REQUIRE(b.integrand_values[k] > a.integrand_values[k]);
    }
}

TEST_CASE("one-particle asymptotic limits") {
    auto g = default_grid();
    GKernel gk = bump_kernel();
    NullProfile f = kernel_preset("b3gauss");

    // mixed-support data: sheet plus a mass band well off the cone
    auto mixed = MassSpreadWavefunction::from_function(g, [](double m, double w, const Vec3&) {
        double radial = std::exp(-1.5 * w * w);
        if (m == 0.0) return cplx(radial);
        double band = std::exp(-std::pow((m - 0.6) / 0.1, 2.0));
        return cplx(0.7 * radial * band);
    });

    SECTION("sheet-supported data: multiplier is exact and R-independent") {
        auto sheet_only = MassSpreadWavefunction::from_function(g, [](double m, double w, const Vec3&) {
            return m == 0.0 ? cplx(std::exp(-w * w)) : cplx(0.0);
        });
        MomentumWavefunction limit = asymptotic_limit_sheet(sheet_only, f);
        for (double R : {30.0, 300.0}) {
            auto acted = asymptotic_one_particle(sheet_only, f, gk, R);
            MomentumWavefunction s = acted.sheet();
            double d2 = 0;
            for (std::size_t k = 0; k < s.psi.size(); ++k) d2 = std::max(d2, std::abs(s.psi[k] - limit.psi[k]));
            REQUIRE(d2 < 1e-8);
        }
    }

    SECTION("massive-supported data decays in R, bounded by the direct kernel transform") {
        auto massive = MassSpreadWavefunction::from_function(g, [](double m, double w, const Vec3&) {
            if (m == 0.0) return cplx(0.0);
            return cplx(std::exp(-1.5 * w * w) * std::exp(-std::pow((m - 0.6) / 0.1, 2.0)));
        });
        double base = std::sqrt(massive.norm_sq());
        double prev = 1e300;
        for (double R : {50.0, 200.0, 800.0}) {
            auto acted = asymptotic_one_particle(massive, f, gk, R);
            double nn = std::sqrt(acted.norm_sq());
            REQUIRE(nn < prev);
            prev = nn;
            // Riemann-Lebesgue style bound: sup over the grid of the multiplier
            ScaledG gR = scaled_g(gk, R, 1.0);
            double sup_mult = 0;
            for (std::size_t s = 1; s < massive.mass.size(); ++s)
                for (double w : {0.2, 0.6, 1.0, 2.0, 4.0}) {
                    double p0 = std::sqrt(w * w + massive.mass[s] * massive.mass[s]);
                    double mult = std::abs(gR.tilde(p0 - w)) * std::abs(kernel_ft_on_ray(f, p0, Vec3{0, 0, 1}));
                    sup_mult = std::max(sup_mult, std::pow(2.0 * M_PI, 2.0) * mult);
                }
            REQUIRE(nn <= 1.05 * sup_mult * base);
        }
    }

    SECTION("mixed support converges to the sheet restriction at large R") {
        MomentumWavefunction limit = asymptotic_limit_sheet(mixed, f);
        double limit_norm = std::sqrt(norm_sq(limit));
        auto acted = asymptotic_one_particle(mixed, f, gk, 1000.0);
        MomentumWavefunction s = acted.sheet();
        for (std::size_t k = 0; k < s.psi.size(); ++k) s.psi[k] -= limit.psi[k];
        MassSpreadWavefunction off = acted;
        for (auto& v : off.slices[0]) v = 0.0;
        double dist = std::sqrt(norm_sq(s) + off.norm_sq());
        REQUIRE(dist / limit_norm < 1e-5);
    }

    SECTION("pure sheet input without the spread grid is rejected") {
        MassSpreadWavefunction flat;
        flat.grid = g;
        flat.mass = {0.0};
        flat.wm = {1.0};
        flat.slices.resize(1, std::vector<cplx>(g->size(), cplx(1.0)));
        REQUIRE_THROWS_AS(asymptotic_one_particle(flat, f, gk, 50.0), std::invalid_argument);
    }
}

TEST_CASE("eta family of smearing scales") {
    auto g = default_grid();
    GKernel gk = bump_kernel();
    NullProfile f = kernel_preset("b3gauss");
    auto mixed = MassSpreadWavefunction::from_function(g, [](double m, double w, const Vec3&) {
        double radial = std::exp(-1.5 * w * w);
        if (m == 0.0) return cplx(radial);
        return cplx(0.5 * radial * std::exp(-std::pow((m - 0.6) / 0.1, 2.0)));
    });

    SECTION("sheet part is eta-independent") {
        auto rows = eta_family_limit(mixed, f, gk, {0.25, 0.5, 1.0}, {100.0});
        for (auto& r : rows) REQUIRE(r.sheet_distance < 1e-9);
    }

    SECTION("massive part decays, slower for smaller eta") {
        auto r_eta1 = eta_family_limit(mixed, f, gk, {1.0}, {100.0, 1000.0});
        auto r_eta14 = eta_family_limit(mixed, f, gk, {0.25}, {100.0, 1000.0});
        REQUIRE(r_eta1[1].massive_norm < r_eta1[0].massive_norm);
        REQUIRE(r_eta14[1].massive_norm < r_eta14[0].massive_norm);
        // at matched R the smaller eta retains more of the massive component
        REQUIRE(r_eta14[0].massive_norm > r_eta1[0].massive_norm);
    }

    SECTION("limits agree across eta at each family's largest usable R") {
        // w = λ(R/λ)^η: match the suppression scale w by taking R_eta = w_target^{1/η}
        const double w_target = 1e3;
        MomentumWavefunction limit = asymptotic_limit_sheet(mixed, f);
        double limit_norm = std::sqrt(norm_sq(limit));
        std::vector<double> dists;
        for (double eta : {0.25, 0.5, 1.0}) {
            double R = std::pow(w_target, 1.0 / eta);
            auto acted = asymptotic_one_particle(mixed, f, gk, R, eta);
            MomentumWavefunction s = acted.sheet();
            for (std::size_t k = 0; k < s.psi.size(); ++k) s.psi[k] -= limit.psi[k];
            MassSpreadWavefunction off = acted;
            for (auto& v : off.slices[0]) v = 0.0;
            dists.push_back(std::sqrt(norm_sq(s) + off.norm_sq()) / limit_norm);
        }
        for (std::size_t i = 0; i < dists.size(); ++i)
            for (std::size_t k = i + 1; k < dists.size(); ++k)
                REQUIRE(std::abs(dists[i] - dists[k]) < 1e-5);
        for (double d : dists) REQUIRE(d < 1e-5);
    }
}

TEST_CASE("scattering overlap at n = 2") {
    auto g = default_grid();
    NullProfile f = kernel_preset("b3gauss");

    SECTION("zero kernel gives zero") {
        NullProfile z = f;
        z.fourier = [](double, const Vec3&) { return cplx(0.0); };
        MomentumWavefunction psi = gaussian_state(g);
        REQUIRE(std::abs(scattering_overlap(psi, f, psi, z)) == 0.0);
    }

    SECTION("diagonal overlap is positive and matches the contraction oracle") {
        MomentumWavefunction psi = gaussian_state(g);
        cplx v = scattering_overlap(psi, f, psi, f);
        REQUIRE(v.real() > 0.0);
        REQUIRE(std::abs(v.imag()) < 1e-12 * v.real());
        // oracle: independent flattened contraction of χ = f̃(1,p)ψ
        MomentumWavefunction chi = psi;
        for (std::size_t i = 0; i < g->omega.size(); ++i)
            for (std::size_t j = 0; j < g->sphere.nodes.size(); ++j)
                chi.at(i, j) *= kernel_ft_on_ray(f, g->omega[i], g->sphere.nodes[j].n);
        cplx oracle = std::pow(2.0 * M_PI, 2.0) * wick_pair_oracle(chi, chi);
        REQUIRE(std::abs(v - oracle) < 1e-6 * std::abs(oracle));
    }

    SECTION("disjoint angular kernels force the overlap through the sheet product") {
        NullProfile f1 = profile_preset("compact_angular_pair_a");
        NullProfile f2 = profile_preset("compact_angular_pair_b");
        MomentumWavefunction psi = gaussian_state(g);
        cplx v = scattering_overlap(psi, f1, psi, f2);
        // Wick oracle: the contraction of the two sheet wavefunctions
        MomentumWavefunction chi1 = psi, chi2 = psi;
        for (std::size_t i = 0; i < g->omega.size(); ++i)
            for (std::size_t j = 0; j < g->sphere.nodes.size(); ++j) {
                chi1.at(i, j) *= kernel_ft_on_ray(f1, g->omega[i], g->sphere.nodes[j].n);
                chi2.at(i, j) *= kernel_ft_on_ray(f2, g->omega[i], g->sphere.nodes[j].n);
            }
        cplx oracle = std::pow(2.0 * M_PI, 2.0) * wick_pair_oracle(chi1, chi2);
        REQUIRE(std::abs(v - oracle) < 1e-6);
        // disjoint caps: the product vanishes identically
        REQUIRE(std::abs(v) < 1e-14);
    }

    SECTION("Wick combinatorics of the two-particle norm on a coarse grid") {
        // ⟨a*(J1)²Ω, a*(J2)²Ω⟩ = 2 (J1,J2)² by explicit symmetrized amplitudes
        FockGridOptions small;
        small.n_radial = 40;
        small.n_theta = 6;
        auto gs = FockGrid::make(small);
        auto J1 = MomentumWavefunction::from_function(
            gs, [](double w, const Vec3& n) { return cplx(std::exp(-w * w) * (1.0 + 0.3 * n.z)); });
        auto J2 = MomentumWavefunction::from_function(
            gs, [](double w, const Vec3& n) { return cplx(std::exp(-1.3 * w * w), 0.2 * w * n.x); });
        // measure per flattened grid point
        std::vector<double> meas;
        std::vector<cplx> a, b;
        for (std::size_t i = 0; i < gs->omega.size(); ++i)
            for (std::size_t j = 0; j < gs->sphere.nodes.size(); ++j) {
                meas.push_back(gs->wr[i] * 0.5 * gs->omega[i] * gs->sphere.nodes[j].w /
                               std::pow(2.0 * M_PI, 3.0));
                a.push_back(J1.at(i, j));
                b.push_back(J2.at(i, j));
            }
        // H₂ inner product of the symmetrized amplitudes with 1/2! weight
        cplx h2 = 0;
        for (std::size_t p = 0; p < meas.size(); ++p)
            for (std::size_t q = 0; q < meas.size(); ++q) {
                cplx amp1 = 2.0 * a[p] * a[q];
                cplx amp2 = 2.0 * b[p] * b[q];
                h2 += 0.5 * meas[p] * meas[q] * std::conj(amp1) * amp2;
            }
        cplx pair = 0;
        for (std::size_t p = 0; p < meas.size(); ++p) pair += meas[p] * std::conj(a[p]) * b[p];
        REQUIRE(std::abs(h2 - 2.0 * pair * pair) < 1e-12 * std::max(1.0, std::abs(h2)));
    }
}

TEST_CASE("vacuum annihilation of the adjoint") {
    auto g = default_grid();

    SECTION("b''' kernels vanish at the zero-momentum cell") {
        REQUIRE(vacuum_annihilation_residual(kernel_preset("b3gauss"), *g) < 1e-6);
    }

    SECTION("kernels with surviving zero-frequency content do not") {
        REQUIRE(vacuum_annihilation_residual(kernel_preset("rational"), *g) > 1e-2);
    }
}

TEST_CASE("kernel derivative identity in R") {
    GKernel g = bump_kernel();

    SECTION("outside the support both sides vanish") {
        double R = 30.0;
        auto gr = [&](double RR) { return g(2.5 * R / RR) / RR; };  // r = 2.5R is outside supp
        REQUIRE(gr(R) == 0.0);
    }

    SECTION("pointwise residual at R = 30") {
        REQUIRE(derivative_kernel_identity(g, 30.0, 1e-3) < 1e-6);
    }

    SECTION("residual is O(step²)") {
        std::vector<double> hs{0.4, 0.2, 0.1}, res;
        for (double h : hs) res.push_back(derivative_kernel_identity(g, 30.0, h));
        REQUIRE(loglog_slope(hs, res) == Approx(2.0).margin(0.2));
    }
}
