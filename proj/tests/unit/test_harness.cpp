#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "test_util.hpp"
#include "wavecascade/errors.hpp"
#include "wavecascade/harness/config.hpp"
#include "wavecascade/harness/experiment.hpp"
#include "wavecascade/harness/rate.hpp"
#include "wavecascade/harness/report.hpp"

using namespace wctest;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
    const fs::path d = fs::temp_directory_path() / ("wavecascade_unit_" + name);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

void write_text(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::string read_text(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct CliRun {
    int code = -1;
    std::string out;
};

CliRun run_cli(const std::string& args, const fs::path& dir) {
    const fs::path log = dir / "stdout.txt";
    const std::string cmd = std::string(WAVECASCADE_CLI_PATH) + " " + args + " > " + log.string() + " 2> " +
                            (dir / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    CliRun r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = read_text(log);
    return r;
}

const char* kFlatTaylor = R"([regime]
epsilon = 1
mu = 0.1
beta = 1
[grid]
nx = 16
ny = 8
[initial]
zeta = gauss(0.3, 3.14, 3.14, 1)
psi = mode(1, 1, 0, 0)
)";

}  // namespace

TEST(FitRate, ExactPowerLaws) {
    const std::vector<double> mu{0.1, 0.05, 0.025, 0.0125};
    for (double rate : {1.0, 2.0}) {
        std::vector<double> e;
        for (double m : mu) e.push_back(3.7 * std::pow(m, rate));
        const RateFit f = fit_rate(mu, e);
        EXPECT_NEAR(f.slope, rate, 1e-12);
        EXPECT_NEAR(f.residual, 0.0, 1e-12);
        EXPECT_TRUE(f.excluded.empty());
    }
}

TEST(FitRate, NoisySlope) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> noise(-0.05, 0.05);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> x, e;
        for (double m = 0.1; m > 0.005; m /= 2) {
            x.push_back(m);
            e.push_back(std::pow(m, 1.5) * (1 + noise(rng)));
        }
        const RateFit f = fit_rate(x, e);
        EXPECT_GE(f.slope, 1.4);
        EXPECT_LE(f.slope, 1.6);
        EXPECT_GT(f.residual, 0.0);
    }
}

TEST(FitRate, ExcludesNonpositiveAndNeedsThreePoints) {
    const std::vector<double> x{0.1, 0.05, 0.025, 0.0125};
    const RateFit f = fit_rate(x, std::vector<double>{0.1, 0.0, 0.025, 0.0125});
    ASSERT_EQ(f.excluded.size(), 1u);
    EXPECT_EQ(f.excluded[0], 1u);
    EXPECT_NEAR(f.slope, 1.0, 1e-12);
    EXPECT_THROW(fit_rate(x, std::vector<double>{0.1, -1.0, 0.0, 0.0125}), NoFit);
    EXPECT_THROW(fit_rate(std::vector<double>{0.1, 0.05}, std::vector<double>{1, 2}), NoFit);
}

TEST(Config, ParsesSectionsAndDefaults) {
    const auto cfg = parse_config(R"(
# comment
[regime]
preset = green_naghdi
values = 0.1, 0.05, 0.025
[grid]
nx = 32   ; trailing comment
[model]
name = green_naghdi
[dn]
reference = elliptic
reference_nz = 16
)");
    ASSERT_TRUE(cfg.preset.has_value());
    EXPECT_EQ(cfg.values.size(), 3u);
    EXPECT_EQ(cfg.nx, 32);
    EXPECT_EQ(cfg.reference.elliptic_opts.nz, 16);
    EXPECT_EQ(experiment_regimes(cfg).size(), 3u);
    EXPECT_EQ(experiment_parameters(cfg)[1], 0.05);
    EXPECT_EQ(cfg.effective.at("time.integrator"), "rk4");
    EXPECT_EQ(cfg.effective.at("time.reference_check"), "true");
    for (const auto& [key, desc] : config_keys()) EXPECT_FALSE(desc.empty()) << key;
}

TEST(Config, RejectsUnknownAndDuplicateKeys) {
    EXPECT_THROW(parse_config("[grid]\nnxx = 32\n"), ConfigError);
    EXPECT_THROW(parse_config("[gird]\nnx = 32\n"), ConfigError);
    EXPECT_THROW(parse_config("[grid]\nnx = 32\nnx = 64\n"), ConfigError);
    EXPECT_THROW(parse_config("[grid]\nnx = many\n"), ConfigError);
    EXPECT_THROW(parse_config("[regime]\npreset = tsunami\n"), ConfigError);
    EXPECT_THROW(parse_config("nx = 32\n"), ConfigError);
    EXPECT_THROW(load_config("/nonexistent/wavecascade.cfg"), ConfigError);
}

TEST(Config, FieldSpecs) {
    const FieldSpec s = parse_field_spec("gauss(0.5, 3, 3, 1) + mode(0.1, 2, 0, 0)");
    ASSERT_EQ(s.terms.size(), 2u);
    EXPECT_EQ(s.terms[1].kind, FieldTerm::Kind::mode);
    EXPECT_TRUE(parse_field_spec("").terms.empty());
    EXPECT_THROW(parse_field_spec("gauss(1, 2)"), ConfigError);
    EXPECT_THROW(parse_field_spec("bump(1, 2, 3, 4)"), ConfigError);
}

TEST(InitialData, EmptySpecIsRest) {
    const PeriodicGrid g = square_grid(16);
    const auto d = make_initial_data(g, {}, {}, {}, RegimeParams(1, 1, 1, 1));
    EXPECT_EQ(linf_norm(d.zeta), 0.0);
    EXPECT_EQ(linf_norm(d.psi), 0.0);
}

TEST(InitialData, AdmissibilityCheck) {
    const PeriodicGrid g = square_grid(32);
    const RegimeParams p(1, 1, 1, 0);
    const auto bump = parse_field_spec("gauss(0.5, 3.14, 3.14, 1)");
    const auto d = make_initial_data(g, bump, {}, {}, p);
    EXPECT_NEAR(d.zeta.max(), 0.5, 1e-2);
    EXPECT_GE(1.0 + d.zeta.min(), 0.1);
    EXPECT_THROW(make_initial_data(g, parse_field_spec("gauss(-1.0, 3.14, 3.14, 1)"), {}, {}, p), InvalidInput);
}

TEST(InitialData, PsiHasZeroMean) {
    const PeriodicGrid g = square_grid(16);
    const auto d = make_initial_data(g, {}, parse_field_spec("gauss(1, 3, 3, 1)"), {}, RegimeParams(1, 1, 1, 0));
    EXPECT_NEAR(d.psi.mean(), 0.0, 1e-15);
    EXPECT_GT(d.psi.max_abs(), 0.1);
}

TEST(InitialData, GaussianIsPeriodic) {
    const PeriodicGrid g(32, 8, 4.0, 2.0);
    const ScalarField u = make_field(g, parse_field_spec("gaussx(1, 0, 1)"));
    // symmetric about x = 0 on the torus
    for (int i = 1; i < g.nx(); ++i) EXPECT_NEAR(u.at(i, 0), u.at(g.nx() - i, 0), 1e-14);
}

TEST(Horizon, RegimeScales) {
    const RegimeParams p(0.1, 0.04, 1, 0.1);
    EXPECT_EQ(regime_horizon(ModelKind::green_naghdi, p, 2.0), 2.0);
    EXPECT_NEAR(regime_horizon(ModelKind::serre, p, 1.0), 5.0, 1e-12);
    EXPECT_NEAR(regime_horizon(ModelKind::boussinesq, p, 1.0), 10.0, 1e-12);
    EXPECT_NEAR(regime_horizon(ModelKind::full_dispersion, p, 1.0), 50.0, 1e-12);
}

TEST(Bisection, ReproducibleAcrossSeeds) {
    const double truth = 0.4321;
    const auto passes = [&](double a) { return a < truth; };
    for (std::uint64_t seed : {0ull, 1ull, 42ull, 977ull}) {
        const double t = bisect_threshold(passes, 0.0, 1.0, 1e-4, seed);
        EXPECT_NEAR(t, truth, 1e-4 * truth + 1e-12) << seed;
    }
    EXPECT_THROW(bisect_threshold([](double) { return true; }, 0.0, 1.0, 1e-3, 0), NoFit);
}

TEST(Parallel, PointsRunOnceEach) {
    std::vector<int> hits(37, 0);
    parallel_for_points(hits.size(), 4, [&](std::size_t k) { hits[k] += 1; });
    for (int h : hits) EXPECT_EQ(h, 1);
    EXPECT_THROW(parallel_for_points(5, 3, [](std::size_t k) { if (k == 3) throw Error("boom"); }), Error);
}

TEST(Report, CompareCsvFormat) {
    ConvergenceReport rep;
    rep.parameter_name = "mu";
    for (double m : {0.1, 0.05, 0.025}) {
        PointResult pt;
        pt.param = m;
        pt.err_linf_zeta = m;
        pt.err_linf_v = m;
        pt.err_hs = 2 * m;
        rep.points.push_back(pt);
    }
    rep.fit = fit_rate(std::vector<double>{0.1, 0.05, 0.025}, std::vector<double>{0.2, 0.1, 0.05});
    std::stringstream ss;
    write_compare_csv(ss, rep, "green_naghdi");
    const std::string text = ss.str();
    EXPECT_NE(text.find("# model=green_naghdi\n"), std::string::npos);
    EXPECT_NE(text.find("# slope=1\n"), std::string::npos);
    EXPECT_NE(text.find("\nparam,err_linf_zeta,err_linf_v,err_hs,slope\n"), std::string::npos);
    // running slope needs three points
    EXPECT_NE(text.find("\n0.05,0.05,0.05,0.1,nan\n"), std::string::npos) << text;
    EXPECT_NE(text.find("\n0.025,0.025,0.025,0.05,1\n"), std::string::npos) << text;
}

TEST(Cli, MissingConfigExitsOne) {
    const fs::path d = scratch_dir("missing");
    EXPECT_EQ(run_cli("compare --config " + (d / "nope.cfg").string() + " --out " + d.string(), d).code, 1);
    EXPECT_EQ(run_cli("compare", d).code, 1);
    EXPECT_EQ(run_cli("frobnicate --config x", d).code, 1);
}

TEST(Cli, BadConfigExitsOne) {
    const fs::path d = scratch_dir("badcfg");
    write_text(d / "bad.cfg", "[grid]\nnx = 32\nbogus = 1\n");
    EXPECT_EQ(run_cli("simulate --config " + (d / "bad.cfg").string() + " --out " + d.string(), d).code, 1);
}

TEST(Cli, TaylorCheckFlatBottom) {
    const fs::path d = scratch_dir("taylor");
    write_text(d / "flat.cfg", kFlatTaylor);
    const CliRun r = run_cli("taylor-check --config " + (d / "flat.cfg").string() + " --out " + d.string(), d);
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("hessian_margin=1.0 passes=true"), std::string::npos) << r.out;
    EXPECT_TRUE(fs::exists(d / "report.csv"));
    EXPECT_TRUE(fs::exists(d / "report.meta"));
}

TEST(Cli, SimulateWritesDiagnosticsAndSnapshots) {
    const fs::path d = scratch_dir("simulate");
    write_text(d / "sim.cfg", std::string(kFlatTaylor) + "[time]\ndt = 0.05\nt_end = 0.2\n[dn]\nnz = 12\n");
    const CliRun r = run_cli("simulate --config " + (d / "sim.cfg").string() + " --out " + d.string(), d);
    ASSERT_EQ(r.code, 0) << read_text(d / "stderr.txt");
    const std::string csv = read_text(d / "report.csv");
    EXPECT_NE(csv.find("t,mass,hamiltonian,linf_zeta,min_depth\n"), std::string::npos);
    EXPECT_TRUE(fs::exists(d / "zeta_00000.bin"));
    EXPECT_TRUE(fs::exists(d / "psi_00000.bin"));
    const std::string meta = read_text(d / "report.meta");
    EXPECT_NE(meta.find("build_id="), std::string::npos);
    EXPECT_NE(meta.find("dn.cg_tol="), std::string::npos);
}

TEST(Cli, CompareColumns) {
    const fs::path d = scratch_dir("compare");
    write_text(d / "sw.cfg", R"([regime]
preset = shallow_water
values = 0.1, 0.05, 0.025
[grid]
nx = 16
ny = 8
[initial]
zeta = dgaussx(-0.1, 6.283185307179586, 2)
psi = gaussx(0.1, 6.283185307179586, 2)
[model]
name = shallow_water
[time]
dt = 0.1
horizon = 0.2
output_every = 0.5
reference_dt_ratio = 2
reference_check = false
[dn]
reference_nz = 10
)");
    const CliRun r = run_cli("compare --config " + (d / "sw.cfg").string() + " --out " + d.string(), d);
    ASSERT_EQ(r.code, 0) << read_text(d / "stderr.txt");
    const std::string csv = read_text(d / "report.csv");
    EXPECT_NE(csv.find("\nparam,err_linf_zeta,err_linf_v,err_hs,slope\n"), std::string::npos);
    EXPECT_NE(csv.find("# model=shallow_water"), std::string::npos);
}
