#include <gtest/gtest.h>

#include <cmath>

#include "test_util.hpp"
#include "wavecascade/dnop.hpp"
#include "wavecascade/errors.hpp"
#include "wavecascade/lgl.hpp"
#include "wavecascade/spectral.hpp"

using namespace wctest;

namespace {

struct RandomGeometry {
    ScalarField zeta;
    ScalarField b;
};

// Admissible: depth 1 + eps zeta - beta b stays above 0.5 for eps, beta <= 1.
RandomGeometry random_geometry(const PeriodicGrid& g, std::mt19937_64& rng) {
    ScalarField z = smooth_random(g, rng, 1.0, 3);
    ScalarField b = smooth_random(g, rng, 1.0, 3);
    z *= 0.2 / z.max_abs();
    b *= 0.2 / b.max_abs();
    return {z, b};
}

ScalarField cos_kx(const PeriodicGrid& g, int k) {
    return field(g, [k](double x, double) { return std::cos(k * x); });
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST(SigmaMap, Traces) {
    const PeriodicGrid g = square_grid(16);
    std::mt19937_64 rng(1);
    const auto rg = random_geometry(g, rng);
    const StripGeometry geom(rg.zeta, rg.b, RegimeParams(0.5, 1, 1, 0.3));
    EXPECT_LT(max_diff(sigma_map(geom, 0.0), 0.5 * rg.zeta), 1e-15);
    EXPECT_LT(max_diff(sigma_map(geom, -1.0), 0.3 * rg.b), 1e-15);
    const auto flat = StripGeometry::flat(g, RegimeParams(1, 1, 1, 1));
    for (double z : {0.0, -0.3, -1.0}) EXPECT_EQ(linf_norm(sigma_map(flat, z)), 0.0);
}

TEST(Geometry, RejectsThinStrip) {
    const PeriodicGrid g = square_grid(16);
    EXPECT_THROW(StripGeometry(ScalarField(g, -0.95), ScalarField(g), RegimeParams(1, 1, 1, 0)), Error);
}

TEST(QMatrix, FlatIsZero) {
    const auto flat = StripGeometry::flat(square_grid(16), RegimeParams(1, 1, 1, 1));
    for (const auto& q : q_matrix(flat, -0.5)) {
        for (double e : q) EXPECT_EQ(e, 0.0);
    }
}

TEST(QMatrix, FactoredFormAndCoercivity) {
    const PeriodicGrid g = square_grid(16);
    std::mt19937_64 rng(2);
    std::normal_distribution<double> n01;
    for (int trial = 0; trial < 5; ++trial) {
        const auto rg = random_geometry(g, rng);
        const RegimeParams p(0.8, 0.5 + trial, 0.6, 0.7);
        const StripGeometry geom(rg.zeta, rg.b, p);
        const double kconst = coercivity_constant(geom);
        for (double z : {0.0, -0.4, -1.0}) {
            const auto q = q_matrix(geom, z);
            // Independent oracle: gradient of sigma from its nodal values.
            const VectorField gs = grad_gamma(sigma_map(geom, z), p.gamma());
            for (std::size_t k = 0; k < q.size(); k += 7) {
                const double h = geom.depth()[k];
                const double a = p.sqrt_mu() * gs.x[k];
                const double c = p.sqrt_mu() * gs.y[k];
                const double t1 = n01(rng), t2 = n01(rng), t3 = n01(rng);
                const auto& m = q[k];
                const double form = (1 + m[0]) * t1 * t1 + (1 + m[3]) * t2 * t2 + (1 + m[5]) * t3 * t3 +
                                    2 * (m[1] * t1 * t2 + m[2] * t1 * t3 + m[4] * t2 * t3);
                const double b1 = h * t1 - a * t3, b2 = h * t2 - c * t3;
                const double expect = (b1 * b1 + b2 * b2 + t3 * t3) / h;
                EXPECT_NEAR(form, expect, 1e-12 * (1 + expect));
                EXPECT_LE(t1 * t1 + t2 * t2 + t3 * t3, kconst * form * (1 + 1e-12));
            }
        }
    }
}

TEST(Lgl, RuleProperties) {
    for (int n : {3, 8, 24}) {
        const LglRule r = make_lgl_rule(n);
        EXPECT_EQ(r.z.front(), 0.0);
        EXPECT_EQ(r.z.back(), -1.0);
        double wsum = 0.0;
        for (double w : r.w) wsum += w;
        EXPECT_NEAR(wsum, 1.0, 1e-14);
        // exact for degree 2n-3 on [-1, 0]
        const int deg = 2 * n - 3;
        double q = 0.0;
        for (int i = 0; i < n; ++i) q += r.w[i] * std::pow(r.z[i], deg);
        EXPECT_NEAR(q, (deg % 2 ? -1.0 : 1.0) / (deg + 1), 1e-13);
        // differentiation exact on z^(n-1)
        for (int i = 0; i < n; ++i) {
            double d = 0.0;
            for (int j = 0; j < n; ++j) d += r.diff(i, j) * std::pow(r.z[j], n - 1);
            EXPECT_NEAR(d, (n - 1) * std::pow(r.z[i], n - 2), 1e-9 * n * n);
        }
    }
    EXPECT_THROW(make_lgl_rule(2), InvalidInput);
}

TEST(Backend, ParseAndValidate) {
    EXPECT_EQ(to_string(parse_dn_backend("small_amplitude:3")), "small_amplitude:3");
    EXPECT_EQ(parse_dn_backend("shallow2").kind, DnBackend::Kind::shallow2);
    EXPECT_THROW(DnBackend::small_amplitude(9).validate(), UnsupportedRegime);
    EXPECT_THROW(DnBackend::elliptic(24, 1e-3).validate(), InvalidInput);
    EXPECT_THROW(DnBackend::elliptic(4).validate(), InvalidInput);
}

class FlatDn : public ::testing::TestWithParam<double> {};

TEST_P(FlatDn, EllipticMatchesClosedForm) {
    const double mu = GetParam();
    const PeriodicGrid g = square_grid(32);
    const auto geom = StripGeometry::flat(g, RegimeParams(1, mu, 1, 0));
    for (int k : {1, 2, 3}) {
        const ScalarField out = dn_apply(geom, cos_kx(g, k), DnBackend::elliptic(24, 1e-10));
        const double s = std::sqrt(mu) * k * std::tanh(std::sqrt(mu) * k);
        EXPECT_LT(max_diff(out, s * cos_kx(g, k)), 1e-8 * s) << "k=" << k;
        EXPECT_LT(max_diff(out, g0(cos_kx(g, k), geom.params())), 1e-8 * s);
    }
}

TEST_P(FlatDn, SmallAmplitudeIsFlatOperatorAtZeroSurface) {
    const PeriodicGrid g = square_grid(16);
    const auto geom = StripGeometry::flat(g, RegimeParams(0.5, GetParam(), 0.7, 0));
    std::mt19937_64 rng(3);
    const ScalarField psi = smooth_random(g, rng, 1.0, 4);
    for (int n = 1; n <= 8; ++n) {
        EXPECT_LT(max_diff(dn_apply(geom, psi, DnBackend::small_amplitude(n)), g0(psi, geom.params())), 1e-12);
    }
}

INSTANTIATE_TEST_SUITE_P(Mu, FlatDn, ::testing::Values(0.25, 1.0, 4.0));

TEST(Dn, ShallowSingleMode) {
    const PeriodicGrid g = square_grid(16);
    const double mu = 0.05;
    const auto geom = StripGeometry::flat(g, RegimeParams(1, mu, 1, 1));
    for (int k : {1, 2}) {
        const double k2 = k * k;
        EXPECT_LT(max_diff(dn_shallow1(geom, cos_kx(g, k)), mu * k2 * cos_kx(g, k)), 1e-12);
        EXPECT_LT(max_diff(dn_shallow2(geom, cos_kx(g, k)), (mu * k2 - mu * mu * k2 * k2 / 3) * cos_kx(g, k)), 1e-12);
    }
}

TEST(Dn, ShallowRequiresIsotropy) {
    const PeriodicGrid g = square_grid(16);
    const auto geom = StripGeometry::flat(g, RegimeParams(1, 0.1, 0.5, 0));
    EXPECT_THROW(dn_shallow1(geom, cos_kx(g, 1)), UnsupportedRegime);
    EXPECT_THROW(dn_shallow2(geom, cos_kx(g, 1)), UnsupportedRegime);
}

TEST(Dn, ConstantsAreInKernel) {
    const PeriodicGrid g = square_grid(16);
    std::mt19937_64 rng(4);
    const auto rg = random_geometry(g, rng);
    const StripGeometry geom(rg.zeta, rg.b, RegimeParams(1, 1, 1, 1));
    const ScalarField c(g, 3.0);
    for (const auto& be : {DnBackend::elliptic(), DnBackend::shallow1(), DnBackend::shallow2()}) {
        EXPECT_LT(linf_norm(dn_apply(geom, c, be)), 1e-12) << to_string(be);
    }
}

TEST(Dn, SelfAdjointAndPositive) {
    const PeriodicGrid g = square_grid(16);
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 4; ++trial) {
        const auto rg = random_geometry(g, rng);
        const StripGeometry geom(rg.zeta, rg.b, RegimeParams(1, 0.3 + trial, 0.8, 0.9));
        const ScalarField u = remove_mean(smooth_random(g, rng, 1.0, 5));
        const ScalarField v = remove_mean(smooth_random(g, rng, 1.0, 5));
        const auto be = DnBackend::elliptic(20, 1e-11);
        const ScalarField gu = dn_apply(geom, u, be);
        const ScalarField gv = dn_apply(geom, v, be);
        EXPECT_NEAR(inner(u, gv), inner(v, gu), 1e-9 * l2_norm(u) * l2_norm(v));
        EXPECT_GE(inner(u, gu), -1e-10);
    }
}

TEST(Dn, ParallelMatvecMatchesReference) {
    const PeriodicGrid g = square_grid(32);
    std::mt19937_64 rng(6);
    const auto rg = random_geometry(g, rng);
    const StripOperator op(StripGeometry(rg.zeta, rg.b, RegimeParams(0.7, 2.0, 0.5, 0.6)), 12);
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<double> x(op.size()), a(op.size()), b(op.size());
    for (double& e : x) e = u(rng);
    op.apply(x.data(), a.data());
    op.apply_reference(x.data(), b.data());
    double scale = 0.0, diff = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        scale = std::max(scale, std::abs(b[k]));
        diff = std::max(diff, std::abs(a[k] - b[k]));
    }
    EXPECT_LT(diff, 1e-12 * scale);
}

TEST(Dn, FlatSolveReproducesDiscreteExtension) {
    // On the flat strip the discrete harmonic extension is known exactly; the
    // CG solve must reproduce it.
    const PeriodicGrid g = square_grid(16);
    std::mt19937_64 rng(7);
    const ScalarField psi = remove_mean(smooth_random(g, rng, 1.0, 5));
    const StripOperator op(StripGeometry::flat(g, RegimeParams(1, 1.5, 0.8, 0)), 16);
    const auto ext = op.flat_extension(psi);
    const auto phi = op.solve(psi, 1e-12, 100);
    double d = 0.0, s = 0.0;
    for (std::size_t k = 0; k < ext.size(); ++k) {
        d = std::max(d, std::abs(ext[k] - phi[k]));
        s = std::max(s, std::abs(ext[k]));
    }
    EXPECT_LT(d, 1e-10 * s);
}

TEST(Dn, SolveLeavesSmallInteriorResidual) {
    const PeriodicGrid g = square_grid(16);
    std::mt19937_64 rng(8);
    const auto rg = random_geometry(g, rng);
    const StripOperator op(StripGeometry(rg.zeta, rg.b, RegimeParams(1, 1, 1, 1)), 16);
    const ScalarField psi = remove_mean(smooth_random(g, rng, 1.0, 4));
    SolveInfo info;
    const auto phi = op.solve(psi, 1e-11, 500, &info);
    EXPECT_GT(info.iterations, 0);
    std::vector<double> r(op.size());
    op.apply(phi.data(), r.data());
    double interior = 0.0, surface = 0.0;
    for (std::size_t k = 0; k < r.size(); ++k) {
        (k < op.plane_size() ? surface : interior) = std::max(k < op.plane_size() ? surface : interior, std::abs(r[k]));
    }
    EXPECT_LT(interior, 1e-8 * surface);
    for (std::size_t k = 0; k < op.plane_size(); ++k) EXPECT_EQ(phi[k], psi[k]);
}

TEST(Dn, GardingBracketBounded) {
    const PeriodicGrid g = square_grid(16);
    std::mt19937_64 rng(9);
    double lo = 1e300, hi = 0.0;
    for (double mu : {0.01, 1.0, 100.0}) {
        for (int trial = 0; trial < 2; ++trial) {
            const auto rg = random_geometry(g, rng);
            const RegimeParams p(1, mu, 1, 1);
            const StripGeometry geom(rg.zeta, rg.b, p);
            const ScalarField u = remove_mean(smooth_random(g, rng, 1.0, 6));
            const double num = inner(u, dn_apply(geom, u, DnBackend::elliptic(24))) / (mu * p.nu());
            const double den = std::pow(l2_norm(frak_p(u, p)), 2);
            lo = std::min(lo, num / den);
            hi = std::max(hi, num / den);
        }
    }
    EXPECT_GT(lo, 0.05);
    EXPECT_LT(hi, 20.0);
}

TEST(TOperator, SingleMode) {
    const PeriodicGrid g = square_grid(16);
    for (int k : {1, 3}) {
        const VectorField v = grad(cos_kx(g, k));
        const VectorField t = t_operator(ScalarField(g, 1.0), ScalarField(g), v);
        EXPECT_LT(linf_norm(t - (k * k / 3.0) * v), 1e-11);
    }
}

TEST(TOperator, ConstantVectorFlatBottom) {
    const PeriodicGrid g = square_grid(16);
    std::mt19937_64 rng(10);
    const ScalarField h = ScalarField(g, 1.0) + smooth_random(g, rng, 0.3, 3);
    const VectorField v(ScalarField(g, 0.4), ScalarField(g, -1.1));
    EXPECT_LT(linf_norm(t_operator(h, ScalarField(g), v)), 1e-12);
}

TEST(TOperator, SelfAdjoint) {
    const PeriodicGrid g = square_grid(32);
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 3; ++trial) {
        const ScalarField h = ScalarField(g, 1.0) + smooth_random(g, rng, 0.3, 3);
        const ScalarField b = smooth_random(g, rng, 0.5, 3);
        const VectorField u(smooth_random(g, rng, 1.0, 4), smooth_random(g, rng, 1.0, 4));
        const VectorField v(smooth_random(g, rng, 1.0, 4), smooth_random(g, rng, 1.0, 4));
        EXPECT_NEAR(inner(t_operator(h, b, u), v), inner(u, t_operator(h, b, v)), 1e-10);
    }
}

TEST(ZOperator, Examples) {
    const PeriodicGrid g = square_grid(16);
    std::mt19937_64 rng(12);
    const RegimeParams p(1, 1, 1, 0.5);
    const ScalarField psi = smooth_random(g, rng, 1.0, 4);
    const auto be = DnBackend::elliptic();
    const auto flat = StripGeometry::flat(g, p);
    EXPECT_LT(max_diff(z_operator(flat, psi, be), dn_apply(flat, psi, be)), 1e-13);
    const auto rg = random_geometry(g, rng);
    const StripGeometry geom(rg.zeta, rg.b, p);
    EXPECT_LT(linf_norm(z_operator(geom, ScalarField(g, 2.0), be)), 1e-12);
    // Denominator >= 1: |Z psi| <= |G psi| + eps mu |grad zeta||grad psi| pointwise.
    const ScalarField z = z_operator(geom, psi, be);
    const ScalarField gp = dn_apply(geom, psi, be);
    const VectorField gz = grad(geom.zeta()), gps = grad(psi);
    for (std::size_t k = 0; k < z.size(); ++k) {
        const double bound = std::abs(gp[k] + gz.x[k] * gps.x[k] + gz.y[k] * gps.y[k]);
        EXPECT_LE(std::abs(z[k]), bound * (1 + 1e-12) + 1e-15);
    }
}

TEST(ShapeDerivative, FlatSurfaceForm) {
    const PeriodicGrid g = square_grid(32);
    std::mt19937_64 rng(13);
    const RegimeParams p(0.6, 0.8, 0.7, 0);
    const auto flat = StripGeometry::flat(g, p);
    const ScalarField psi = remove_mean(smooth_random(g, rng, 1.0, 4));
    const ScalarField h = smooth_random(g, rng, 1.0, 4);
    const ScalarField g0psi = g0(psi, p);
    const ScalarField expect = -p.epsilon() * g0(h * g0psi, p) -
                               p.epsilon() * p.mu() * div_gamma(h * grad_gamma(psi, p.gamma()), p.gamma());
    const ScalarField got = dn_shape_derivative(flat, psi, h, DnBackend::elliptic(24, 1e-11));
    EXPECT_LT(max_diff(got, expect), 1e-8 * linf_norm(expect));
}

TEST(ShapeDerivative, LinearInDirection) {
    const PeriodicGrid g = square_grid(16);
    std::mt19937_64 rng(14);
    const auto rg = random_geometry(g, rng);
    const StripGeometry geom(rg.zeta, rg.b, RegimeParams(1, 1, 1, 1));
    const ScalarField psi = smooth_random(g, rng, 1.0, 4);
    const ScalarField h1 = smooth_random(g, rng, 1.0, 3), h2 = smooth_random(g, rng, 1.0, 3);
    const auto be = DnBackend::elliptic(16, 1e-11);
    EXPECT_LT(linf_norm(dn_shape_derivative(geom, psi, ScalarField(g), be)), 1e-14);
    const ScalarField lhs = dn_shape_derivative(geom, psi, 2.5 * h1 + h2, be);
    const ScalarField rhs = 2.5 * dn_shape_derivative(geom, psi, h1, be) + dn_shape_derivative(geom, psi, h2, be);
    EXPECT_LT(max_diff(lhs, rhs), 1e-10 * (1 + linf_norm(rhs)));
}

TEST(ShapeDerivative, CenteredDifferenceAgrees) {
    const PeriodicGrid g = square_grid(32);
    const RegimeParams p(1, 1, 1, 0.5);
    const ScalarField zeta = 0.2 * field(g, [](double x, double y) { return std::cos(x) * std::cos(y); });
    const ScalarField b = 0.3 * cos_kx(g, 1);
    const ScalarField psi = field(g, [](double x, double y) { return std::sin(x + y) + 0.5 * std::cos(2 * x); });
    const ScalarField h = field(g, [](double x, double) { return std::sin(x); });
    const auto be = DnBackend::elliptic(24, 1e-12);
    const ScalarField dg = dn_shape_derivative(StripGeometry(zeta, b, p), psi, h, be);
    const double delta = 1e-3;
    const ScalarField fd = (0.5 / delta) * (dn_apply(StripGeometry(zeta + delta * h, b, p), psi, be) -
                                            dn_apply(StripGeometry(zeta - delta * h, b, p), psi, be));
    EXPECT_LT(max_diff(fd, dg), 1e-4 * linf_norm(dg));
}

TEST(SmallAmplitude, Unsupported) {
    const PeriodicGrid g = square_grid(16);
    const StripGeometry geom(0.1 * cos_kx(g, 1), 0.1 * cos_kx(g, 1), RegimeParams(0.5, 1, 1, 0.5));
    EXPECT_THROW(dn_small_amplitude(geom, cos_kx(g, 1), 2), UnsupportedRegime);
    EXPECT_THROW(dn_small_amplitude(geom, cos_kx(g, 1), 9), UnsupportedRegime);
    EXPECT_NO_THROW(dn_small_amplitude(geom, cos_kx(g, 1), 1));
}

TEST(SmallAmplitude, OrderOneFormula) {
    // With a bottom the base operator is G[0, beta b] rather than the flat symbol.
    const PeriodicGrid g = square_grid(32);
    std::mt19937_64 rng(15);
    const RegimeParams p(0.3, 2.0, 0.8, 0.4);
    const ScalarField zeta = smooth_random(g, rng, 0.5, 3);
    const ScalarField b = smooth_random(g, rng, 0.5, 3);
    const ScalarField psi = smooth_random(g, rng, 1.0, 4);
    const StripGeometry bottom(ScalarField(g), b, p);
    const auto be = DnBackend::elliptic(24, 1e-12);
    const ScalarField gp = dn_apply(bottom, psi, be);
    const ScalarField expect = gp - p.epsilon() * dn_apply(bottom, zeta * gp, be) -
                               p.epsilon() * p.mu() * div_gamma(zeta * grad_gamma(psi, p.gamma()), p.gamma());
    EXPECT_LT(max_diff(dn_small_amplitude(StripGeometry(zeta, b, p), psi, 1), expect), 1e-9);
}

TEST(SmallAmplitude, HigherOrdersImprove) {
    const PeriodicGrid g = square_grid(32);
    const RegimeParams p(0.1, 1, 1, 0);
    const StripGeometry geom(cos_kx(g, 1), ScalarField(g), p);
    const ScalarField psi = field(g, [](double x, double y) { return std::cos(x + y); });
    const ScalarField ref = dn_apply(geom, psi, DnBackend::elliptic(24, 1e-12));
    double prev = 1e300;
    for (int n = 1; n <= 4; ++n) {
        const double e = max_diff(dn_small_amplitude(geom, psi, n), ref);
        EXPECT_LT(e, 0.3 * prev) << "n=" << n;
        prev = e;
    }
}

TEST(TaylorCheck, FlatBottomAndRest) {
    const PeriodicGrid g = square_grid(16);
    const RegimeParams p(1, 0.1, 1, 1);
    const auto psi = cos_kx(g, 1);
    const auto r = taylor_check(StripGeometry(0.3 * cos_kx(g, 2), ScalarField(g), p), psi, DnBackend::elliptic());
    EXPECT_EQ(r.hessian_margin, 1.0);
    EXPECT_TRUE(r.passes);
    EXPECT_NEAR(r.depth_margin, 0.7 - 0.1, 1e-12);
    const StripGeometry bumpy(ScalarField(g), 0.5 * cos_kx(g, 1), p);
    EXPECT_EQ(taylor_check(bumpy, ScalarField(g), DnBackend::elliptic()).hessian_margin, 1.0);
}

TEST(TaylorCheck, MarginDecreasesWithBottomAmplitude) {
    const PeriodicGrid g = square_grid(16);
    const RegimeParams p(1, 0.1, 1, 1);
    const ScalarField psi = 3.0 * field(g, [](double x, double) { return std::sin(x); });
    double prev = 1.0;
    for (double a : {0.1, 0.3, 0.5, 0.7}) {
        const auto r = taylor_check(StripGeometry(ScalarField(g), a * cos_kx(g, 1), p), psi, DnBackend::elliptic());
        EXPECT_LT(r.hessian_margin, prev) << a;
        prev = r.hessian_margin;
    }
}
