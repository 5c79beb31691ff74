#include "wavecascade/harness/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <utility>

#include "wavecascade/asymptotics.hpp"
#include "wavecascade/errors.hpp"
#include "wavecascade/harness/experiment.hpp"
#include "wavecascade/harness/report.hpp"
#include "wavecascade/parallel.hpp"
#include "wavecascade/snapshot.hpp"
#include "wavecascade/spectral.hpp"
#include "wavecascade/waterwaves.hpp"

namespace wavecascade {

namespace fs = std::filesystem;

namespace {

struct Options {
    std::string command;
    std::string config;
    std::string out = ".";
    int threads = 0;
    std::optional<std::uint64_t> seed;
};

using Extra = std::vector<std::pair<std::string, std::string>>;

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write '" + path.string() + "'");
    f << text;
}

void write_meta_file(const Options& o, const ExperimentConfig& cfg, Extra extra) {
    extra.emplace_back("command", o.command);
    extra.emplace_back("seed", std::to_string(cfg.seed));
    std::ostringstream ss;
    write_meta(ss, cfg, extra);
    write_text(fs::path(o.out) / "report.meta", ss.str());
}

std::string snapshot_name(const char* field, int index) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%s_%05d.bin", field, index);
    return buf;
}

int run_simulate(const Options& o, const ExperimentConfig& cfg) {
    const RegimeParams p = experiment_regimes(cfg).front();
    const InitialData data = make_initial_data(cfg, p);
    const fs::path dir(o.out);
    std::ostringstream csv;
    int index = 0;
    auto snapshot = [&](const ScalarField& zeta, const ScalarField* psi, bool force) {
        if (force || cfg.snapshot_stride > 0) {
            write_snapshot((dir / snapshot_name("zeta", index)).string(), zeta);
            if (psi) write_snapshot((dir / snapshot_name("psi", index)).string(), *psi);
        }
        ++index;
    };
    const int stride = cfg.snapshot_stride > 0 ? cfg.snapshot_stride : 1;
    const int steps = static_cast<int>(std::ceil(cfg.t_end / cfg.dt - 1e-9));
    int stored = 0;
    auto last = [&] { return stored * stride >= steps; };

    if (!cfg.model) {
        WaterWavesSystem sys{p, data.bottom, cfg.backend, cfg.scaling, cfg.h0, cfg.dealias};
        csv << "# wavecascade simulate\n# model=water_waves\nt,mass,hamiltonian,linf_zeta,min_depth\n";
        IntegratorConfig icfg{cfg.dt, cfg.t_end, stride, cfg.filter};
        integrate({data.zeta, data.psi, 0.0}, icfg, sys, [&](const SurfaceState& s) {
            const Diagnostics d = diagnostics(s, sys);
            csv << format_number(d.t) << ',' << format_number(d.mass) << ',' << format_number(d.hamiltonian) << ','
                << format_number(d.linf_zeta) << ',' << format_number(d.min_depth) << '\n';
            snapshot(s.zeta, &s.psi, stored == 0 || last());
            ++stored;
        });
    } else {
        const ModelKind m = *cfg.model;
        if (m == ModelKind::kp) throw ConfigError("simulate supports water waves and the (zeta, V) models, not kp");
        ModelRunOptions mopt{cfg.dt, cfg.t_end, stride, cfg.dealias};
        HyperbolicState s0{data.zeta, grad(data.psi), 0.0};
        ModelTrajectory traj;
        switch (m) {
            case ModelKind::shallow_water: traj = sw_integrate(s0, data.bottom, mopt); break;
            case ModelKind::green_naghdi:
            case ModelKind::serre:
                s0.v = gn_initial_velocity(data.zeta, data.psi, data.bottom, p);
                traj = gn_integrate(s0, data.bottom, p, mopt, GnOptions{cfg.gn_tol, cfg.gn_maxiter});
                break;
            case ModelKind::boussinesq:
                traj = boussinesq_integrate(boussinesq_initial(data.zeta, data.psi, data.bottom, p.epsilon(), cfg.theta),
                                            data.bottom, BoussinesqCoeffs::make(cfg.theta, cfg.p1, cfg.p2),
                                            p.epsilon(), mopt);
                break;
            case ModelKind::full_dispersion: traj = fd_integrate(fd_initial(data.zeta, data.psi, p), p, mopt); break;
            case ModelKind::kp: break;
        }
        csv << "# wavecascade simulate\n# model=" << to_string(m) << "\nt,mass,hamiltonian,linf_zeta,min_depth\n";
        for (std::size_t k = 0; k < traj.size(); ++k) {
            const auto& s = traj[k];
            ScalarField depth(s.zeta.grid(), 1.0);
            depth.axpy(p.epsilon(), s.zeta);
            depth.axpy(-p.beta(), data.bottom);
            csv << format_number(s.time) << ',' << format_number(integral(s.zeta)) << ",nan,"
                << format_number(linf_norm(s.zeta)) << ',' << format_number(depth.min()) << '\n';
            snapshot(s.zeta, nullptr, k == 0 || k + 1 == traj.size());
        }
    }
    write_text(dir / "report.csv", csv.str());
    write_meta_file(o, cfg, {{"regime", to_string(p)}});
    return 0;
}

int run_compare(const Options& o, const ExperimentConfig& cfg, int threads) {
    if (!cfg.model) throw ConfigError("compare needs [model] name");
    const ConvergenceReport rep = run_comparison(cfg, threads);
    std::ostringstream csv;
    write_compare_csv(csv, rep, to_string(*cfg.model));
    write_text(fs::path(o.out) / "report.csv", csv.str());
    write_meta_file(o, cfg, {{"model", to_string(*cfg.model)}, {"error_fit", "err_linf_zeta+err_linf_v"}});
    std::cout << csv.str();
    return rep.all_ok() ? 0 : 2;
}

int run_dn(const Options& o, const ExperimentConfig& cfg, int threads) {
    if (!cfg.compare_backend) throw ConfigError("dn-study needs [dn] compare");
    const ConvergenceReport rep = run_dn_study(cfg, threads);
    std::ostringstream csv;
    write_dn_study_csv(csv, rep, to_string(*cfg.compare_backend));
    write_text(fs::path(o.out) / "report.csv", csv.str());
    write_meta_file(o, cfg, {{"dn.compare", to_string(*cfg.compare_backend)}});
    std::cout << csv.str();
    return rep.all_ok() ? 0 : 2;
}

int run_sweep_cmd(const Options& o, const ExperimentConfig& cfg, int threads) {
    const auto rows = run_sweep(cfg, threads);
    std::ostringstream csv;
    write_sweep_csv(csv, rows, cfg.preset ? std::string(cfg.preset->parameter_name()) : "mu");
    write_text(fs::path(o.out) / "report.csv", csv.str());
    write_meta_file(o, cfg, {});
    std::cout << csv.str();
    for (const auto& r : rows)
        if (!r.ok) return 2;
    return 0;
}

int run_taylor(const Options& o, const ExperimentConfig& cfg) {
    const TaylorOutcome t = run_taylor_check(cfg);
    std::string margin = format_number(t.result.hessian_margin);
    if (margin.find_first_of(".en") == std::string::npos) margin += ".0";
    std::ostringstream line;
    line << "hessian_margin=" << margin << " passes=" << (t.result.passes ? "true" : "false");
    if (t.threshold) line << " threshold=" << format_number(*t.threshold);
    std::cout << line.str() << '\n';
    std::ostringstream csv;
    csv << "# wavecascade taylor-check\nhessian_margin,depth_margin,passes,threshold\n"
        << format_number(t.result.hessian_margin) << ',' << format_number(t.result.depth_margin) << ','
        << (t.result.passes ? "true" : "false") << ',' << (t.threshold ? format_number(*t.threshold) : "nan") << '\n';
    write_text(fs::path(o.out) / "report.csv", csv.str());
    write_meta_file(o, cfg, {});
    return 0;
}

int resolve_threads(int flag) {
    if (flag > 0) return flag;
    if (const char* env = std::getenv("WAVECASCADE_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 1;
}

}  // namespace

int cli_main(int argc, char** argv) {
    CLI::App app{"wavecascade: water waves and their asymptotic models"};
    app.require_subcommand(1);
    Options o;
    const std::pair<const char*, const char*> commands[] = {
        {"simulate", "evolve one regime with the water-waves solver"},
        {"compare", "asymptotic model against the reference over a preset sweep"},
        {"sweep", "water-waves runs over a preset sweep"},
        {"dn-study", "DN backend error against the reference"},
        {"taylor-check", "Taylor sign condition margins, optional threshold bisection"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--config", o.config, "experiment configuration file")->required();
        sub->add_option("--out", o.out, "output directory (default .)");
        sub->add_option("--threads", o.threads, "worker threads (fallback WAVECASCADE_THREADS, then 1)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--seed", o.seed, "seed of randomized steps");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }
    o.command = app.get_subcommands().front()->get_name();

    try {
        ExperimentConfig cfg = load_config(o.config);
        if (o.seed) cfg.seed = *o.seed;
        std::error_code ec;
        fs::create_directories(o.out, ec);
        if (ec) throw ConfigError("cannot create output directory '" + o.out + "'");
        if (cfg.model == ModelKind::boussinesq && BoussinesqCoeffs::make(cfg.theta, cfg.p1, cfg.p2).unsmoothed()) {
            std::cerr << "warning: Boussinesq member with a2 = 0 or a4 = 0 has no smoothing on that equation; "
                         "it may be unstable on fine grids\n";
        }
        const int threads = resolve_threads(o.threads);
        set_kernel_threads(threads > 1 ? 1 : 0);
        if (o.command == "simulate") return run_simulate(o, cfg);
        if (o.command == "compare") return run_compare(o, cfg, threads);
        if (o.command == "sweep") return run_sweep_cmd(o, cfg, threads);
        if (o.command == "dn-study") return run_dn(o, cfg, threads);
        return run_taylor(o, cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return 1;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace wavecascade
