#include "wavecascade/harness/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numbers>
#include <random>
#include <thread>

#include "wavecascade/asymptotics.hpp"
#include "wavecascade/errors.hpp"
#include "wavecascade/spectral.hpp"

namespace wavecascade {

PeriodicGrid experiment_grid(const ExperimentConfig& cfg) { return PeriodicGrid(cfg.nx, cfg.ny, cfg.lx, cfg.ly); }

namespace {

// Offset from the centre wrapped to [-l/2, l/2), then a symmetric image sum
// wide enough that the omitted images are below 1e-16 relative.
template <class Profile>
double periodize(double x, double c, double w, double l, Profile&& f) {
    const double d0 = x - c - l * std::floor((x - c) / l + 0.5);
    const int images = 1 + static_cast<int>(std::ceil(6.0 * w / l));
    double s = 0.0;
    for (int m = -images; m <= images; ++m) s += f((d0 + m * l) / w);
    return s;
}

double periodic_gauss_1d(double x, double c, double w, double l) {
    return periodize(x, c, w, l, [](double d) { return std::exp(-d * d); });
}

double periodic_dgauss_1d(double x, double c, double w, double l) {
    return periodize(x, c, w, l, [](double d) { return d * std::exp(-d * d); });
}

double eval_term(const FieldTerm& t, double x, double y, double lx, double ly) {
    const auto& a = t.args;
    switch (t.kind) {
        case FieldTerm::Kind::gauss:
            return a[0] * periodic_gauss_1d(x, a[1], a[3], lx) * periodic_gauss_1d(y, a[2], a[3], ly);
        case FieldTerm::Kind::gaussx: return a[0] * periodic_gauss_1d(x, a[1], a[2], lx);
        case FieldTerm::Kind::dgaussx: return a[0] * periodic_dgauss_1d(x, a[1], a[2], lx);
        case FieldTerm::Kind::mode:
            return a[0] * std::cos(2.0 * std::numbers::pi * (a[1] * x / lx + a[2] * y / ly) + a[3]);
    }
    return 0.0;
}

}  // namespace

ScalarField make_field(const PeriodicGrid& grid, const FieldSpec& spec) {
    const double lx = grid.lx(), ly = grid.ly();
    return ScalarField::from_function(grid, [&](double x, double y) {
        double v = 0.0;
        for (const auto& t : spec.terms) v += eval_term(t, x, y, lx, ly);
        if (spec.y_modulation != 0.0) {
            v *= 1.0 + spec.y_modulation * std::cos(2.0 * std::numbers::pi * spec.y_modulation_mode * y / ly);
        }
        return v;
    });
}

InitialData make_initial_data(const PeriodicGrid& grid, const FieldSpec& zeta, const FieldSpec& psi,
                              const FieldSpec& bottom, const RegimeParams& p, double h0) {
    InitialData d{make_field(grid, zeta), remove_mean(make_field(grid, psi)), make_field(grid, bottom)};
    ScalarField depth(grid, 1.0);
    depth.axpy(p.epsilon(), d.zeta);
    depth.axpy(-p.beta(), d.bottom);
    if (depth.min() < h0) {
        throw InvalidInput("initial data violate the depth condition: min depth " + std::to_string(depth.min()) +
                           " < h0 = " + std::to_string(h0));
    }
    return d;
}

InitialData make_initial_data(const ExperimentConfig& cfg, const RegimeParams& p) {
    return make_initial_data(experiment_grid(cfg), cfg.zeta0, cfg.psi0, cfg.bottom, p, cfg.h0);
}

double regime_horizon(ModelKind model, const RegimeParams& p, double T) {
    switch (model) {
        case ModelKind::shallow_water:
        case ModelKind::green_naghdi: return T;
        case ModelKind::serre: return T / p.sqrt_mu();
        case ModelKind::boussinesq:
        case ModelKind::kp: return T / p.epsilon();
        case ModelKind::full_dispersion: return T / p.steepness();
    }
    return T;
}

double preset_parameter(PresetKind kind, const RegimeParams& p) {
    switch (kind) {
        case PresetKind::shallow_water:
        case PresetKind::green_naghdi:
        case PresetKind::serre: return p.mu();
        case PresetKind::boussinesq_long_wave:
        case PresetKind::kp_weakly_transverse: return p.epsilon();
        case PresetKind::full_dispersion: return p.steepness();
    }
    return p.mu();
}

bool ConvergenceReport::all_ok() const {
    return std::all_of(points.begin(), points.end(), [](const PointResult& r) { return r.ok; });
}

void parallel_for_points(std::size_t n, int threads, const std::function<void(std::size_t)>& body) {
    const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, threads)));
    if (workers <= 1) {
        for (std::size_t k = 0; k < n; ++k) body(k);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t k = next++; k < n; k = next++) body(k);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

namespace {

struct MatchedErrors {
    double zeta = 0.0;
    double v = 0.0;
    double hs = 0.0;

    void add(const ScalarField& dz, const VectorField& dv, double s) {
        zeta = std::max(zeta, linf_norm(dz));
        v = std::max(v, linf_norm(dv));
        hs = std::max(hs, sobolev_norm(dz, s) + sobolev_norm(dv, s));
    }
};

struct OutputPlan {
    double t_end;
    int n_out;
    int steps_per_out;
    double dt;
};

OutputPlan plan_outputs(double t_end, double output_every, double dt) {
    OutputPlan o;
    o.t_end = t_end;
    o.n_out = std::max(1, static_cast<int>(std::lround(1.0 / output_every)));
    const double seg = t_end / o.n_out;
    o.steps_per_out = std::max(1, static_cast<int>(std::ceil(seg / dt - 1e-9)));
    o.dt = seg / o.steps_per_out;
    return o;
}

void check_lengths(std::size_t a, std::size_t b) {
    if (a != b) throw Error("reference and model produced different numbers of outputs");
}

}  // namespace

namespace {

double comparison_horizon(const ExperimentConfig& cfg, ModelKind model, const RegimeParams& p) {
    return cfg.fixed_horizon ? cfg.horizon : regime_horizon(model, p, cfg.horizon);
}

std::vector<SurfaceState> reference_run(const ExperimentConfig& cfg, ModelKind model, const RegimeParams& p,
                                        const InitialData& data, const OutputPlan& plan, int ratio) {
    WaterWavesSystem sys{p, data.bottom, cfg.reference, model_scaling(model), cfg.h0, cfg.dealias};
    IntegratorConfig icfg;
    icfg.dt = plan.dt / ratio;
    icfg.t_end = plan.t_end;
    icfg.snapshot_stride = plan.steps_per_out * ratio;
    icfg.filter = cfg.filter;
    return integrate(SurfaceState{data.zeta, data.psi, 0.0}, icfg, sys);
}

}  // namespace

PointResult compare_point(const ExperimentConfig& cfg, const RegimeParams& p, double param) {
    PointResult r;
    r.param = param;
    try {
        if (!cfg.model) throw ConfigError("compare needs [model] name");
        const ModelKind model = *cfg.model;
        const InitialData data = make_initial_data(cfg, p);
        const PeriodicGrid& g = data.zeta.grid();
        const OutputPlan plan = plan_outputs(comparison_horizon(cfg, model, p), cfg.output_every, cfg.dt);
        r.t_end = plan.t_end;
        const auto ref = reference_run(cfg, model, p, data, plan, cfg.reference_dt_ratio);

        ModelRunOptions mopt;
        mopt.dt = plan.dt;
        mopt.t_end = plan.t_end;
        mopt.snapshot_stride = plan.steps_per_out;
        mopt.dealias = cfg.dealias;

        MatchedErrors err;
        if (model == ModelKind::kp) {
            KpPairState pair = kp_initial(data.zeta, data.psi);
            for (std::size_t k = 0; k < ref.size(); ++k) {
                const double t = ref[k].time;
                if (k > 0) {
                    const double dtau = p.epsilon() * (t - ref[k - 1].time);
                    pair.plus = kp_evolve(pair.plus, +1, dtau, cfg.kp_dtau);
                    pair.minus = kp_evolve(pair.minus, -1, dtau, cfg.kp_dtau);
                    pair.tau += dtau;
                }
                const ScalarField dz = ref[k].zeta - kp_reconstruct(pair, t);
                const ScalarField du = dx(ref[k].psi) - kp_reconstruct_dxpsi(pair, t);
                err.add(dz, VectorField(du, ScalarField(g)), cfg.sobolev_s);
            }
        } else {
            ModelTrajectory traj;
            std::function<VectorField(const HyperbolicState&)> velocity = [](const HyperbolicState& s) { return s.v; };
            switch (model) {
                case ModelKind::shallow_water:
                    traj = sw_integrate(sw_initial(data.zeta, data.psi), data.bottom, mopt);
                    break;
                case ModelKind::green_naghdi:
                case ModelKind::serre: {
                    HyperbolicState s0{data.zeta, gn_initial_velocity(data.zeta, data.psi, data.bottom, p), 0.0};
                    traj = gn_integrate(s0, data.bottom, p, mopt, GnOptions{cfg.gn_tol, cfg.gn_maxiter});
                    velocity = [&](const HyperbolicState& s) { return gn_reconstruct(s, data.bottom, p); };
                    break;
                }
                case ModelKind::boussinesq: {
                    const auto c = BoussinesqCoeffs::make(cfg.theta, cfg.p1, cfg.p2);
                    const double eps = p.epsilon();
                    traj = boussinesq_integrate(boussinesq_initial(data.zeta, data.psi, data.bottom, eps, cfg.theta),
                                                data.bottom, c, eps, mopt);
                    velocity = [&data, eps, theta = cfg.theta](const HyperbolicState& s) {
                        return boussinesq_reconstruct(s, data.bottom, eps, theta).v;
                    };
                    break;
                }
                case ModelKind::full_dispersion:
                    traj = fd_integrate(fd_initial(data.zeta, data.psi, p), p, mopt);
                    break;
                case ModelKind::kp: break;
            }
            check_lengths(ref.size(), traj.size());
            for (std::size_t k = 0; k < ref.size(); ++k) {
                err.add(ref[k].zeta - traj[k].zeta, grad(ref[k].psi) - velocity(traj[k]), cfg.sobolev_s);
            }
        }
        r.err_linf_zeta = err.zeta;
        r.err_linf_v = err.v;
        r.err_hs = err.hs;
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        r.ok = false;
        r.failure = e.what();
    }
    return r;
}

namespace {

ConvergenceReport collect(const ExperimentConfig& cfg, int threads,
                          PointResult (*point)(const ExperimentConfig&, const RegimeParams&, double),
                          bool fit_on_hs) {
    const auto regimes = experiment_regimes(cfg);
    const auto params = experiment_parameters(cfg);
    ConvergenceReport rep;
    rep.parameter_name = cfg.preset ? std::string(cfg.preset->parameter_name()) : "mu";
    rep.points.resize(regimes.size());
    parallel_for_points(regimes.size(), threads, [&](std::size_t k) { rep.points[k] = point(cfg, regimes[k], params[k]); });
    std::vector<double> xs, ys;
    for (const auto& pt : rep.points) {
        if (!pt.ok) continue;
        xs.push_back(pt.param);
        ys.push_back(fit_on_hs ? pt.err_hs : pt.err_linf());
    }
    try {
        rep.fit = fit_rate(xs, ys);
    } catch (const NoFit& e) {
        rep.fit_failure = e.what();
    }
    return rep;
}

}  // namespace

double reference_self_check(const ExperimentConfig& cfg, const RegimeParams& p) {
    if (!cfg.model) throw ConfigError("compare needs [model] name");
    const ModelKind model = *cfg.model;
    const InitialData data = make_initial_data(cfg, p);
    const OutputPlan plan = plan_outputs(comparison_horizon(cfg, model, p), cfg.output_every, cfg.dt);
    const auto coarse = reference_run(cfg, model, p, data, plan, cfg.reference_dt_ratio);
    const auto fine = reference_run(cfg, model, p, data, plan, 2 * cfg.reference_dt_ratio);
    check_lengths(coarse.size(), fine.size());
    double e = 0.0;
    for (std::size_t k = 0; k < coarse.size(); ++k) {
        e = std::max(e, linf_norm(coarse[k].zeta - fine[k].zeta));
        e = std::max(e, linf_norm(grad(coarse[k].psi) - grad(fine[k].psi)));
    }
    return e;
}

ConvergenceReport run_comparison(const ExperimentConfig& cfg, int threads) {
    ConvergenceReport rep = collect(cfg, threads, &compare_point, false);
    if (!cfg.reference_check) return rep;
    // Smallest model error is where reference error would show first.
    const auto regimes = experiment_regimes(cfg);
    std::size_t best = regimes.size();
    for (std::size_t k = 0; k < rep.points.size(); ++k) {
        if (rep.points[k].ok && (best == regimes.size() || rep.points[k].err_linf() < rep.points[best].err_linf())) best = k;
    }
    if (best == regimes.size()) return rep;
    try {
        rep.reference_check = ReferenceCheck{rep.points[best].param, reference_self_check(cfg, regimes[best]),
                                             rep.points[best].err_linf()};
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        rep.reference_check_failure = e.what();
    }
    return rep;
}

PointResult dn_study_point(const ExperimentConfig& cfg, const RegimeParams& p, double param) {
    PointResult r;
    r.param = param;
    try {
        if (!cfg.compare_backend) throw ConfigError("dn-study needs [dn] compare");
        const InitialData data = make_initial_data(cfg, p);
        const StripGeometry geom(data.zeta, data.bottom, p, cfg.h0);
        const ScalarField ref = dn_apply(geom, data.psi, cfg.reference);
        const ScalarField cmp = dn_apply(geom, data.psi, *cfg.compare_backend);
        const ScalarField diff = ref - cmp;
        r.err_hs = sobolev_norm(diff, cfg.sobolev_s);
        r.err_linf_zeta = linf_norm(diff);
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        r.ok = false;
        r.failure = e.what();
    }
    return r;
}

ConvergenceReport run_dn_study(const ExperimentConfig& cfg, int threads) {
    return collect(cfg, threads, &dn_study_point, true);
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg, int threads) {
    const auto regimes = experiment_regimes(cfg);
    const auto params = experiment_parameters(cfg);
    std::vector<SweepRow> rows(regimes.size());
    parallel_for_points(regimes.size(), threads, [&](std::size_t k) {
        SweepRow& row = rows[k];
        row.param = params[k];
        try {
            const RegimeParams& p = regimes[k];
            const InitialData data = make_initial_data(cfg, p);
            WaterWavesSystem sys{p, data.bottom, cfg.backend, cfg.scaling, cfg.h0, cfg.dealias};
            const SurfaceState s0{data.zeta, data.psi, 0.0};
            IntegratorConfig icfg{cfg.dt, cfg.t_end, 1 << 30, cfg.filter};
            const auto traj = integrate(s0, icfg, sys);
            const SurfaceState& s = traj.back();
            const Diagnostics d0 = diagnostics(s0, sys);
            const Diagnostics d1 = diagnostics(s, sys);
            row.mass_drift = d1.mass - d0.mass;
            row.hamiltonian_drift = d1.hamiltonian - d0.hamiltonian;
            row.linf_zeta = d1.linf_zeta;
            row.min_depth = d1.min_depth;
        } catch (const ConfigError&) {
            throw;
        } catch (const Error& e) {
            row.ok = false;
            row.failure = e.what();
        }
    });
    return rows;
}

double bisect_threshold(const std::function<bool(double)>& passes, double lo, double hi, double rtol,
                        std::uint64_t seed) {
    if (!(hi > lo) || !(rtol > 0.0)) throw InvalidInput("bisection needs lo < hi and rtol > 0");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 0.1);
    const double width = hi - lo;
    double a = lo + u(rng) * width;
    double b = hi - u(rng) * width;
    if (!passes(a)) a = lo;
    if (passes(b)) b = hi;
    if (!passes(a) || passes(b)) throw NoFit("bisection bracket does not enclose a pass/fail switch");
    while (b - a > rtol * std::max(std::abs(a), std::abs(b))) {
        const double m = 0.5 * (a + b);
        (passes(m) ? a : b) = m;
    }
    return 0.5 * (a + b);
}

TaylorOutcome run_taylor_check(const ExperimentConfig& cfg) {
    const auto regimes = experiment_regimes(cfg);
    const RegimeParams& p = regimes.front();
    const InitialData data = make_initial_data(cfg, p);
    TaylorOutcome out;
    out.result = taylor_check(StripGeometry(data.zeta, data.bottom, p, cfg.h0), data.psi, cfg.backend);
    if (cfg.bisect) {
        auto passes = [&](double amp) {
            const ScalarField b = amp * data.bottom;
            ScalarField depth(b.grid(), 1.0);
            depth.axpy(p.epsilon(), data.zeta);
            depth.axpy(-p.beta(), b);
            if (depth.min() < cfg.h0) return false;
            return taylor_check(StripGeometry(data.zeta, b, p, cfg.h0), data.psi, cfg.backend).passes;
        };
        out.threshold = bisect_threshold(passes, cfg.amp_lo, cfg.amp_hi, cfg.bisect_rtol, cfg.seed);
    }
    return out;
}

}  // namespace wavecascade
