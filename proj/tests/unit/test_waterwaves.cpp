#include <gtest/gtest.h>

#include <cmath>

#include "test_util.hpp"
#include "wavecascade/errors.hpp"
#include "wavecascade/spectral.hpp"
#include "wavecascade/waterwaves.hpp"

using namespace wctest;

namespace {

WaterWavesSystem make_system(const PeriodicGrid& g, const RegimeParams& p, ScalarField bottom = {}) {
    WaterWavesSystem sys{p, bottom.size() ? bottom : ScalarField(g)};
    sys.backend = DnBackend::elliptic(16, 1e-12);
    return sys;
}

SurfaceState gaussian_state(const PeriodicGrid& g, double amp) {
    const double cx = g.lx() / 2, cy = g.ly() / 2;
    SurfaceState s{field(g, [&](double x, double y) { return amp * std::exp(-((x - cx) * (x - cx) + (y - cy) * (y - cy)) / 2); }),
                   field(g, [&](double x, double y) { return 0.5 * amp * std::sin(x) * std::cos(y); })};
    return s;
}

SurfaceState run(const SurfaceState& s0, double t_end, double dt, const WaterWavesSystem& sys) {
    IntegratorConfig cfg;
    cfg.dt = dt;
    cfg.t_end = t_end;
    cfg.snapshot_stride = 1 << 30;
    return integrate(s0, cfg, sys).back();
}

double state_diff(const SurfaceState& a, const SurfaceState& b) {
    return std::max(max_diff(a.zeta, b.zeta), max_diff(remove_mean(a.psi), remove_mean(b.psi)));
}

}  // namespace

TEST(WwRhs, RestIsEquilibrium) {
    const PeriodicGrid g = square_grid(16);
    const auto sys = make_system(g, RegimeParams(1, 1, 1, 0.5), 0.3 * field(g, [](double x, double) { return std::cos(x); }));
    const SurfaceState d = ww_rhs(SurfaceState{ScalarField(g), ScalarField(g)}, sys);
    EXPECT_LT(linf_norm(d.zeta), 1e-14);
    EXPECT_LT(linf_norm(d.psi), 1e-14);
}

TEST(WwRhs, ConstantPotentialFlatBottom) {
    const PeriodicGrid g = square_grid(16);
    const auto sys = make_system(g, RegimeParams(0.5, 2, 0.8, 0));
    const ScalarField zeta = 0.3 * field(g, [](double x, double y) { return std::cos(x) * std::sin(y); });
    const SurfaceState d = ww_rhs(SurfaceState{zeta, ScalarField(g, 1.7)}, sys);
    EXPECT_LT(linf_norm(d.zeta), 1e-12);
    EXPECT_LT(max_diff(d.psi, -1.0 * zeta), 1e-12);
}

TEST(Integrate, RestStaysAtRest) {
    const PeriodicGrid g = square_grid(16);
    const auto sys = make_system(g, RegimeParams(1, 0.5, 1, 0));
    IntegratorConfig cfg;
    cfg.dt = 0.1;
    cfg.t_end = 1.0;
    const auto traj = integrate(SurfaceState{ScalarField(g), ScalarField(g)}, cfg, sys);
    ASSERT_EQ(traj.size(), 11u);
    EXPECT_NEAR(traj.back().time, 1.0, 1e-14);
    for (const auto& s : traj) {
        EXPECT_EQ(linf_norm(s.zeta), 0.0);
        EXPECT_EQ(linf_norm(s.psi), 0.0);
    }
}

TEST(Integrate, SnapshotStride) {
    const PeriodicGrid g = square_grid(16);
    const auto sys = make_system(g, RegimeParams(1, 0.5, 1, 0));
    IntegratorConfig cfg;
    cfg.dt = 0.1;
    cfg.t_end = 1.0;
    cfg.snapshot_stride = 3;
    int seen = 0;
    const auto traj = integrate(SurfaceState{ScalarField(g), ScalarField(g)}, cfg, sys,
                                [&](const SurfaceState&) { ++seen; });
    ASSERT_EQ(traj.size(), 5u);  // 0, 3, 6, 9, 10
    EXPECT_EQ(seen, 5);
    EXPECT_NEAR(traj[1].time, 0.3, 1e-14);
}

struct DispersionCase {
    double mu;
    double gamma;
    int kx;
    int ky;
    DepthScaling scaling;
};

class LinearDispersion : public ::testing::TestWithParam<DispersionCase> {};

TEST_P(LinearDispersion, SingleModeFrequency) {
    const auto c = GetParam();
    const PeriodicGrid g(16, 16, 2 * std::numbers::pi, 2 * std::numbers::pi);
    const RegimeParams p(1, c.mu, c.gamma, 0);
    auto sys = make_system(g, p);
    sys.scaling = c.scaling;
    const double nu = effective_nu(p, c.scaling);
    const double delta = 1e-6;
    const auto mode = [&](double x, double y) { return std::cos(c.kx * x + c.ky * y); };
    const SurfaceState s0{delta * field(g, mode), ScalarField(g)};
    const double k = std::hypot(c.kx, c.gamma * c.ky);
    const double sk = std::sqrt(c.mu) * k;
    const double omega = std::sqrt(sk * std::tanh(sk) / (c.mu * nu));
    const double t_end = 2 * std::numbers::pi / omega;
    const SurfaceState s = run(s0, 0.8 * t_end, t_end / 400, sys);
    const double t = s.time;
    // Relative frequency error: |zeta - delta cos(omega t) cos| <= delta omega t rel.
    EXPECT_LT(max_diff(s.zeta, std::cos(omega * t) * s0.zeta), 1e-5 * delta * omega * t);
}

INSTANTIATE_TEST_SUITE_P(Modes, LinearDispersion,
                         ::testing::Values(DispersionCase{1.0, 1.0, 1, 0, DepthScaling::general},
                                           DispersionCase{0.1, 1.0, 2, 1, DepthScaling::shallow},
                                           DispersionCase{4.0, 0.5, 1, 2, DepthScaling::deep},
                                           DispersionCase{0.5, 0.7, 3, 0, DepthScaling::general}));

TEST(Integrate, TimeReversal) {
    // (zeta, psi)(t) -> (zeta, -psi)(-t) is a symmetry; run forward, flip psi,
    // run forward again, flip back.
    const PeriodicGrid g = square_grid(16);
    const auto sys = make_system(g, RegimeParams(0.5, 1, 1, 0));
    const SurfaceState s0 = gaussian_state(g, 0.3);
    SurfaceState s = run(s0, 1.0, 0.05, sys);
    s.psi *= -1.0;
    s.time = 0.0;
    s = run(s, 1.0, 0.05, sys);
    s.psi *= -1.0;
    EXPECT_LT(state_diff(s, s0), 1e-6);
}

TEST(Integrate, FourthOrderInTime) {
    const PeriodicGrid g = square_grid(16);
    const auto sys = make_system(g, RegimeParams(1, 0.5, 1, 0));
    const SurfaceState s0 = gaussian_state(g, 0.2);
    const double dt = 0.1;
    const SurfaceState ref = run(s0, 1.0, dt / 4, sys);
    const double e1 = state_diff(run(s0, 1.0, dt, sys), ref);
    const double e2 = state_diff(run(s0, 1.0, dt / 2, sys), ref);
    // Self-error against dt/4: ratio (1 - 1/256)/(1/16 - 1/256) = 17.
    EXPECT_GT(e1 / e2, 13.0);
    EXPECT_LT(e1 / e2, 21.0);
}

TEST(Conservation, RestHasZeroInvariants) {
    const PeriodicGrid g = square_grid(16);
    const auto sys = make_system(g, RegimeParams(1, 1, 1, 0));
    const SurfaceState s{ScalarField(g), ScalarField(g)};
    EXPECT_EQ(mass(s), 0.0);
    EXPECT_EQ(hamiltonian(s, sys), 0.0);
}

TEST(Conservation, MassOverNonlinearRun) {
    const PeriodicGrid g = square_grid(16);
    const auto sys = make_system(g, RegimeParams(1, 0.1, 1, 0.5), 0.3 * field(g, [](double x, double y) { return std::cos(x + y); }));
    const SurfaceState s0 = gaussian_state(g, 0.4);
    const double m0 = mass(s0);
    IntegratorConfig cfg;
    cfg.dt = 0.05;
    cfg.t_end = 1.0;
    integrate(s0, cfg, sys, [&](const SurfaceState& s) {
        EXPECT_LT(std::abs(mass(s) - m0), 1e-10 * (1 + l2_norm(s0.zeta)));
        EXPECT_TRUE(s.zeta.all_finite() && s.psi.all_finite());
    });
}

TEST(Conservation, HamiltonianDriftFourthOrder) {
    const PeriodicGrid g = square_grid(16);
    const auto sys = make_system(g, RegimeParams(1, 0.5, 1, 0));
    const SurfaceState s0 = gaussian_state(g, 0.3);
    const double h0 = hamiltonian(s0, sys);
    const double d1 = std::abs(hamiltonian(run(s0, 1.0, 0.2, sys), sys) - h0);
    const double d2 = std::abs(hamiltonian(run(s0, 1.0, 0.1, sys), sys) - h0);
    EXPECT_GT(h0, 0.0);
    EXPECT_GT(d1 / d2, 10.0);
    EXPECT_LT(d2, 1e-5 * h0);
}

TEST(Integrate, GeometryViolationStopsRun) {
    const PeriodicGrid g = square_grid(16);
    auto sys = make_system(g, RegimeParams(1, 0.1, 1, 0));
    sys.h0 = 0.5;
    // Depth starts at 0.6 and deepens/shallows as the trough evolves.
    const SurfaceState s0{-0.4 * field(g, [](double x, double) { return std::cos(x); }),
                          -2.0 * field(g, [](double x, double) { return std::sin(x); })};
    IntegratorConfig cfg;
    cfg.dt = 0.05;
    cfg.t_end = 5.0;
    try {
        integrate(s0, cfg, sys);
        FAIL() << "expected a geometry violation";
    } catch (const DegenerateGeometry& e) {
        EXPECT_GE(e.time(), 0.0);
        EXPECT_LT(e.time(), 5.0);
    }
}

TEST(Integrate, SuggestedStepIsStable) {
    const PeriodicGrid g = square_grid(32);
    const RegimeParams p(1, 1, 1, 0);
    const double dt = suggest_dt(g, p, p.nu());
    EXPECT_GT(dt, 0.0);
    EXPECT_LT(dt, g.dx());
    auto sys = make_system(g, p);
    EXPECT_NO_THROW(run(gaussian_state(g, 0.1), 20 * dt, dt, sys));
}
