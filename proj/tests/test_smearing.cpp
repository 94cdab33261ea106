#include <catch2/catch_amalgamated.hpp>

#include "lca/smearing.hpp"
#include "lca/sphere_ft.hpp"

using namespace lca;
using Catch::Approx;

namespace {

const Vec3 zhat{0, 0, 1};

SmearOptions fast_opts() {
    SmearOptions o;
    o.n_theta = 48;
    o.s_panel = 1.0;
    return o;
}

FieldOptions fast_field() {
    FieldOptions fo;
    fo.panel = 1.0;
    fo.n_phi = 16;
    return fo;
}

NodeField zero_field() {
    return [](const FourVector&, const Vec3&) { return cplx(0.0); };
}

}  // namespace

TEST_CASE("smear_r") {
    NullProfile b = profile_preset("tanh");
    NullProfile f = kernel_preset("rational");

    SECTION("zero kernel gives zero") {
        NullProfile z = f;
        z.deriv = [](int, double, const Vec3&) { return cplx(0.0); };
        SmearOptions o = fast_opts();
        o.collapse_outer = true;
        REQUIRE(std::abs(smear_r(field_radial_closed(b), 20.0, z, lab_frame(), o)) == 0.0);
    }

    SECTION("radial closed-form sampler equals the quadrature field") {
        NodeField fast = field_radial_closed(b);
        NodeField quad = field_of(b);
        for (auto& x : {FourVector{0.3, 1.0, 0.0, 2.0}, FourVector{21.0, 0.0, 12.0, 16.0}})
            REQUIRE(std::abs(fast(x, zhat) - quad(x, zhat)) < 1e-8);
    }

    SECTION("angular-independent pair against the 1D reduction") {
        // oracle: B[r,f] = 2r ∫ B(s+r, r) f0(s) ds with the radial field
        double r = 25.0;
        auto B1d = [&](double s) {
            return -(std::tanh(s + 2.0 * r) - std::tanh(s)) / r;
        };
        cplx oracle = 2.0 * r *
                      line_quad_decay([&](double s) { return cplx(B1d(s) * std::pow(1.0 + s * s, -2.0)); },
                                      1.0, 3.0, 1e-10);
        SmearOptions o = fast_opts();
        o.collapse_outer = true;
        cplx v = smear_r(field_radial_closed(b), r, f, lab_frame(), o);
        REQUIRE(std::abs(v - oracle) < 1e-7);
        // and the full outer grid agrees with the collapsed one
        SmearOptions full = fast_opts();
        cplx v_full = smear_r(field_radial_closed(b), r, f, lab_frame(), full);
        REQUIRE(std::abs(v_full - v) < 1e-9);
    }

    SECTION("lightcone plane wave against the boundary-expansion closed form") {
        // B(x) = e^{-ik·x}, k = ω0(1, m̂):
        // B[r,f] = 4π f̃(-ω0) e^{-irω0} sin(rω0)/ω0
        const double w0 = 1.3;
        const Vec3 m{0.0, 0.8, 0.6};
        NodeField plane = [&](const FourVector& x, const Vec3&) {
            return std::exp(cplx(0.0, -w0 * (x.t - dot(m, x.s))));
        };
        double r = 18.0;
        SmearOptions o = fast_opts();
        o.n_theta = 96;  // resolve the e^{irω0 m̂·n̂} oscillation
        cplx v = smear_r(plane, r, f, lab_frame(), o);
        cplx ft = f.fourier(-w0, zhat);
        cplx oracle = 4.0 * M_PI * ft * std::exp(cplx(0.0, -r * w0)) * std::sin(r * w0) / w0;
        REQUIRE(std::abs(v - oracle) < 1e-6);
    }
}

TEST_CASE("smear_g") {
    NullProfile b = profile_preset("tanh");
    NullProfile f = kernel_preset("rational");
    GKernel g = bump_kernel();
    NodeField B = field_radial_closed(b);
    SmearOptions o = fast_opts();

    SECTION("narrow kernel approaches the sharp smear") {
        o.collapse_outer = true;
        double R = 30.0;
        ScaledG narrow = scaled_g(g, R, 0.25);  // width w = R^0.25 ≈ 2.3
        cplx sharp = smear_r(B, R, f, lab_frame(), o);
        cplx smeared = smear_g(B, narrow, f, lab_frame(), o);
        // mean-value window: |difference| bounded by the spread of B[.,f] over supp g
        double lo = narrow.support_lo(), hi = narrow.support_hi();
        double spread = 0.0;
        for (int k = 0; k <= 8; ++k) {
            double rr = lo + (hi - lo) * k / 8.0;
            spread = std::max(spread, std::abs(smear_r(B, rr, f, lab_frame(), o) - sharp));
        }
        REQUIRE(std::abs(smeared - sharp) <= spread + 1e-8);
    }

    SECTION("zero kernel annihilates") {
        o.collapse_outer = true;
        NullProfile z = f;
        z.deriv = [](int, double, const Vec3&) { return cplx(0.0); };
        REQUIRE(std::abs(smear_g(B, scaled_g(g, 20.0, 1.0), z, lab_frame(), o)) == 0.0);
    }

    SECTION("g_R sequence approaches the limit functional") {
        o.collapse_outer = true;
        cplx limit = asymptote_functional(b, f);
        std::vector<double> ds;
        for (double R : {20.0, 40.0, 80.0})
            ds.push_back(std::abs(smear_g(B, scaled_g(g, R, 1.0), f, lab_frame(), o) - limit));
        REQUIRE(ds.back() <= ds.front());
        REQUIRE(ds.back() < 1e-5);
    }
}

TEST_CASE("asymptote functional") {
    SECTION("zero kernel") {
        NullProfile b = profile_preset("tanh");
        NullProfile z = kernel_preset("rational");
        z.deriv = [](int, double, const Vec3&) { return cplx(0.0); };
        REQUIRE(std::abs(asymptote_functional(b, z)) == 0.0);
    }

    SECTION("tanh with the rational kernel: 1D oracle") {
        // (1/2π)·4π ∫ (tanh s - 1)(1+s²)^{-2} ds = 2 ∫ (tanh s - 1)(1+s²)^{-2} ds
        NullProfile b = profile_preset("tanh");
        NullProfile f = kernel_preset("rational");
        cplx oracle = 2.0 * line_quad_decay(
                                [&](double s) {
                                    return cplx((std::tanh(s) - 1.0) * std::pow(1.0 + s * s, -2.0));
                                },
                                1.0, 3.0, 1e-12);
        SmearOptions tight;
        tight.s_tail_rel = 1e-12;
        REQUIRE(std::abs(asymptote_functional(b, f, lab_frame(), tight) - oracle) < 1e-8);
    }

    SECTION("smear_r converges to the functional with the expected rate") {
        struct Case {
            const char* preset;
            bool collapse;
        };
        for (auto [preset, collapse] : {Case{"tanh", true}, Case{"sigmoid_angular", false}}) {
            NullProfile b = profile_preset(preset);
            NullProfile f = kernel_preset("rational");
            SmearOptions o = fast_opts();
            o.collapse_outer = collapse;
            if (!collapse) o.rings_axis = zhat;
            NodeField B = b.angular_independent ? field_radial_closed(b) : field_of(b, fast_field());
            std::vector<double> rs{20.0, 40.0, 80.0, 160.0}, vals;
            for (double r : rs) vals.push_back(smear_r(B, r, f, lab_frame(), o).real());
            auto ex = richardson(rs, vals);
            cplx limit = asymptote_functional(b, f);
            INFO(preset);
            REQUIRE(std::abs(ex.limit - limit.real()) < 2e-5);
            REQUIRE(ex.rate > 0.8);  // min(1, ε-2) - 0.2 with ε = 3
        }
    }

    SECTION("kernels without enough decay are rejected") {
        NullProfile b = profile_preset("tanh");
        NullProfile weak = kernel_preset("rational");
        weak.eps = 1.5;
        REQUIRE_THROWS_AS(asymptote_functional(b, weak), std::invalid_argument);
    }
}

TEST_CASE("Lorentz invariance of the asymptote") {
    NullProfile b = profile_preset("tanh");
    NullProfile f = kernel_preset("rational");
    NodeField B = field_radial_closed(b);
    std::vector<double> rs{20.0, 40.0, 80.0, 160.0};

    SECTION("zero rapidity gives identical values") {
        auto res = lorentz_invariance_check(b, f, Boost(0.0, zhat), rs, B, fast_opts());
        REQUIRE(res.diff < 1e-12);
    }

    SECTION("boosted frames agree with the rest frame") {
        for (double chi : {0.5, 1.0}) {
            auto res = lorentz_invariance_check(b, f, Boost(chi, zhat), rs, B, fast_opts());
            INFO("rapidity " << chi);
            REQUIRE(res.diff < 1e-4);
            // the rest-frame extrapolation itself matches the exact limit
            REQUIRE(std::abs(res.value_rest - res.exact_limit) < 2e-5);
        }
    }
}

TEST_CASE("derivative identity in r") {
    NullProfile f = kernel_preset("rational");

    SECTION("constant field reduces both sides to r^{-1} B[r,f]") {
        NodeField one = [](const FourVector&, const Vec3&) { return cplx(1.0); };
        double res = deriv_identity_residual(one, zero_field(), 30.0, f, 1e-2, fast_opts());
        REQUIRE(res < 1e-10);
    }

    SECTION("tanh field at r = 30λ") {
        NullProfile b = profile_preset("tanh");
        SmearOptions o = fast_opts();
        o.collapse_outer = true;
        REQUIRE(deriv_identity_residual(b, 30.0, f, 1e-2, o, fast_field()) < 1e-6);
    }

    SECTION("plane-wave field: residual is O(h²)") {
        const double w0 = 0.9;
        NodeField plane = [&](const FourVector& x, const Vec3&) {
            return std::exp(cplx(0.0, -w0 * (x.t - x.s.z)));
        };
        // l^a ∂_a e^{-ik·x} = -i (k·l) e^{-ik·x}
        NodeField dplane = [&](const FourVector& x, const Vec3& n) {
            double kl = w0 * (1.0 - n.z);
            return cplx(0.0, -kl) * std::exp(cplx(0.0, -w0 * (x.t - x.s.z)));
        };
        SmearOptions o = fast_opts();
        std::vector<double> hs{0.4, 0.2, 0.1}, res;
        for (double h : hs) res.push_back(deriv_identity_residual(plane, dplane, 25.0, f, h, o));
        REQUIRE(loglog_slope(hs, res) == Approx(2.0).margin(0.2));
    }
}

TEST_CASE("frame derivative identity") {
    GKernel g = bump_kernel();
    NullProfile b = profile_preset("tanh");
    // angular test function of homogeneity degree -2; a fully radial pair makes
    // both sides vanish identically
    NullProfile fdot = s_derivative(profile_preset("sigmoid_angular"), 1);

    SECTION("zero field gives zero residual") {
        NullProfile zb = b;
        zb.deriv = [](int, double, const Vec3&) { return cplx(0.0); };
        zb.limit_plus = [](const Vec3&) { return cplx(0.0); };
        zb.limit_minus = [](const Vec3&) { return cplx(0.0); };
        REQUIRE(frame_derivative_residual(zb, g, 30.0, fdot, 3, 1e-2, fast_opts(), fast_field()) <
                1e-14);
    }

    SECTION("radial data with a radial test function is the symmetric null case") {
        NullProfile radial_fdot = s_derivative(b, 1);
        REQUIRE(frame_derivative_residual(b, g, 25.0, radial_fdot, 3, 0.2, fast_opts(), fast_field()) <
                1e-12);
    }

    SECTION("tanh data at R = 40λ") {
        double res = frame_derivative_residual(b, g, 40.0, fdot, 3, 1e-2, fast_opts(), fast_field());
        REQUIRE(res < 1e-4);
    }

    SECTION("residual is O(h²) in the frame step") {
        std::vector<double> hs{0.4, 0.2, 0.1}, res;
        for (double h : hs)
            res.push_back(frame_derivative_residual(b, g, 25.0, fdot, 3, h, fast_opts(), fast_field()));
        REQUIRE(loglog_slope(hs, res) == Approx(2.0).margin(0.25));
    }
}

TEST_CASE("momentum-side smearing") {
    GKernel g = bump_kernel();
    NullProfile b = profile_preset("gauss_bump");  // infrared-regular
    NullProfile f = kernel_preset("b3gauss");
    MomentumProfile mp = momentum_profile(b);

    SECTION("zero spectrum") {
        MomentumProfile z = mp;
        z.bdot_ft = [](double, const Vec3&) { return cplx(0.0); };
        REQUIRE(std::abs(momentum_side_smear(z, g, f, 40.0, +1)) == 0.0);
    }

    SECTION("position side converges to the momentum side") {
        NullProfile fplus = frequency_split(f, +1, 0.0);
        NodeField B = field_radial_closed(b);
        SmearOptions o = fast_opts();
        o.collapse_outer = true;
        cplx sheet = momentum_side_smear(mp, g, f, 0.0, +1);
        std::vector<double> Rs{20.0, 40.0, 80.0, 160.0}, errs;
        for (double R : Rs) {
            cplx pos = smear_g(B, scaled_g(g, R, 1.0), fplus, lab_frame(), o);
            errs.push_back(std::abs(pos - sheet));
        }
        // remainder decays with a positive fitted exponent until the quadrature floor
        REQUIRE(errs.back() < errs.front());
        REQUIRE(-loglog_slope(Rs, errs) > 0.2);
        REQUIRE(errs.back() < 1e-4);
    }

    SECTION("minus split is the conjugate for real data") {
        cplx plus = momentum_side_smear(mp, g, f, 0.0, +1);
        cplx minus = momentum_side_smear(mp, g, f, 0.0, -1);
        REQUIRE(std::abs(minus - std::conj(plus)) < 1e-10);
    }

    SECTION("sheet value equals the limit functional of the split kernel") {
        NullProfile fplus = frequency_split(f, +1, 0.0);
        fplus.eps = 3.0;  // the b''' split keeps enough decay for the limit functional
        cplx via_limit = asymptote_functional(b, fplus);
        cplx sheet = momentum_side_smear(mp, g, f, 0.0, +1);
        REQUIRE(std::abs(via_limit - sheet) < 1e-6);
    }

    SECTION("infrared-singular spectrum with a non-vanishing kernel is rejected") {
        MomentumProfile sing = momentum_profile(profile_preset("tanh"));
        NullProfile flat = kernel_preset("rational");
        REQUIRE_THROWS_AS(momentum_side_smear(sing, g, flat, 10.0, +1), std::invalid_argument);
    }
}

TEST_CASE("angular transform of the smearing measure") {
    // (F₃ν_r)(x⁰,p⃗) = (r/(2π)²) ∫ e^{-i r p⃗·l⃗} f(x⁰-r, l) dΩ equals the two
    // boundary phase terms plus the remainder of the sphere expansion
    NullProfile f = kernel_preset("rational");
    double r = 12.0, x0 = r + 0.7;
    Vec3 p{0.0, 0.4, 0.3};
    double pn = norm(p);
    double fval = f.value(0, x0 - r, zhat).real();  // angular-independent kernel

    SphereFunction slice;
    slice.f = [&](const Vec3& n) { return f.value(0, x0 - r, n); };
    cplx direct = (r / std::pow(2.0 * M_PI, 2.0)) * sphere_fourier(slice, r * p);
    cplx phases = cplx(0.0, 1.0 / (2.0 * M_PI * pn)) *
                  (std::exp(cplx(0.0, -r * pn)) * fval - std::exp(cplx(0.0, r * pn)) * fval);
    cplx rest = (r / std::pow(2.0 * M_PI, 2.0)) * remainder_momentum(slice, r * p);
    REQUIRE(std::abs(direct - phases - rest) < 1e-8);
}
