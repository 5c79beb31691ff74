#include "wavecascade/harness/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

#include "wavecascade/errors.hpp"

namespace wavecascade {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
    const std::string t = trim(v);
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty() || !std::isfinite(out)) {
        throw ConfigError(key + ": expected a number, got '" + v + "'");
    }
    return out;
}

int to_int(const std::string& key, const std::string& v) {
    const std::string t = trim(v);
    int out = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
        throw ConfigError(key + ": expected an integer, got '" + v + "'");
    }
    return out;
}

bool to_bool(const std::string& key, const std::string& v) {
    const std::string t = trim(v);
    if (t == "true" || t == "1" || t == "yes") return true;
    if (t == "false" || t == "0" || t == "no") return false;
    throw ConfigError(key + ": expected true/false, got '" + v + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_double(key, item));
    return out;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Key {
    std::string doc;
    std::function<void(ExperimentConfig&, const std::string&)> set;
};

struct Pending {
    std::optional<double> eps, mu, gamma, beta;
    std::optional<std::string> preset;
    double deep_mu = 4.0;
    std::string backend = "elliptic", reference = "elliptic";
    int nz = 24, ref_nz = 32, maxiter = 500;
    double tol = 1e-10, ref_tol = 1e-10;
    std::optional<std::string> compare;
};

thread_local Pending* pending = nullptr;

const std::map<std::string, Key>& registry() {
    static const std::map<std::string, Key> keys = {
        {"regime.preset", {"regime preset: shallow_water, green_naghdi, serre, boussinesq_long_wave, "
                           "kp_weakly_transverse, full_dispersion",
                           [](ExperimentConfig&, const std::string& v) { pending->preset = trim(v); }}},
        {"regime.values", {"comma-separated small-parameter values of the preset",
                           [](ExperimentConfig& c, const std::string& v) { c.values = to_list("regime.values", v); }}},
        {"regime.deep_mu", {"mu held fixed by the full_dispersion preset (default 4)",
                            [](ExperimentConfig&, const std::string& v) { pending->deep_mu = to_double("regime.deep_mu", v); }}},
        {"regime.epsilon", {"single-regime epsilon", [](ExperimentConfig&, const std::string& v) { pending->eps = to_double("regime.epsilon", v); }}},
        {"regime.mu", {"single-regime mu", [](ExperimentConfig&, const std::string& v) { pending->mu = to_double("regime.mu", v); }}},
        {"regime.gamma", {"single-regime gamma (default 1)", [](ExperimentConfig&, const std::string& v) { pending->gamma = to_double("regime.gamma", v); }}},
        {"regime.beta", {"single-regime beta (default 0)", [](ExperimentConfig&, const std::string& v) { pending->beta = to_double("regime.beta", v); }}},
        {"grid.nx", {"nodes along x (power of two >= 8, default 64)", [](ExperimentConfig& c, const std::string& v) { c.nx = to_int("grid.nx", v); }}},
        {"grid.ny", {"nodes along y (power of two >= 8, default 8)", [](ExperimentConfig& c, const std::string& v) { c.ny = to_int("grid.ny", v); }}},
        {"grid.lx", {"period along x (default 4 pi)", [](ExperimentConfig& c, const std::string& v) { c.lx = to_double("grid.lx", v); }}},
        {"grid.ly", {"period along y (default 2 pi)", [](ExperimentConfig& c, const std::string& v) { c.ly = to_double("grid.ly", v); }}},
        {"initial.zeta", {"surface elevation terms", [](ExperimentConfig& c, const std::string& v) { c.zeta0 = parse_field_spec(v); }}},
        {"initial.psi", {"velocity potential terms (mean removed)", [](ExperimentConfig& c, const std::string& v) { c.psi0 = parse_field_spec(v); }}},
        {"initial.bottom", {"bottom profile terms", [](ExperimentConfig& c, const std::string& v) { c.bottom = parse_field_spec(v); }}},
        {"initial.zeta_ymod", {"zeta multiplied by (1 + m cos(2 pi n y/ly)), this is m", [](ExperimentConfig& c, const std::string& v) { c.zeta0.y_modulation = to_double("initial.zeta_ymod", v); }}},
        {"initial.zeta_ymod_mode", {"n of the zeta y-profile", [](ExperimentConfig& c, const std::string& v) { c.zeta0.y_modulation_mode = to_int("initial.zeta_ymod_mode", v); }}},
        {"initial.psi_ymod", {"psi y-profile amplitude", [](ExperimentConfig& c, const std::string& v) { c.psi0.y_modulation = to_double("initial.psi_ymod", v); }}},
        {"initial.psi_ymod_mode", {"n of the psi y-profile", [](ExperimentConfig& c, const std::string& v) { c.psi0.y_modulation_mode = to_int("initial.psi_ymod_mode", v); }}},
        {"model.name", {"asymptotic model: shallow_water, green_naghdi, serre, boussinesq, kp, full_dispersion",
                        [](ExperimentConfig& c, const std::string& v) { c.model = parse_model(trim(v)); }}},
        {"model.theta", {"Boussinesq theta (default 1)", [](ExperimentConfig& c, const std::string& v) { c.theta = to_double("model.theta", v); }}},
        {"model.p1", {"Boussinesq p1 (default 1)", [](ExperimentConfig& c, const std::string& v) { c.p1 = to_double("model.p1", v); }}},
        {"model.p2", {"Boussinesq p2 (default 0)", [](ExperimentConfig& c, const std::string& v) { c.p2 = to_double("model.p2", v); }}},
        {"time.dt", {"model time step (reference uses dt / reference_dt_ratio)", [](ExperimentConfig& c, const std::string& v) { c.dt = to_double("time.dt", v); }}},
        {"time.horizon", {"T of the regime horizon (T, T/sqrt(mu), T/eps or T/steepness)", [](ExperimentConfig& c, const std::string& v) { c.horizon = to_double("time.horizon", v); }}},
        {"time.fixed_horizon", {"compare: run every regime to t = horizon instead of the regime horizon (default false)", [](ExperimentConfig& c, const std::string& v) { c.fixed_horizon = to_bool("time.fixed_horizon", v); }}},
        {"time.reference_check", {"compare: rerun the reference at half its dt for the most accurate point and report the difference (default true)", [](ExperimentConfig& c, const std::string& v) { c.reference_check = to_bool("time.reference_check", v); }}},
        {"time.t_end", {"final time of simulate and sweep", [](ExperimentConfig& c, const std::string& v) { c.t_end = to_double("time.t_end", v); }}},
        {"time.output_every", {"spacing of matched output times, as a fraction of the horizon", [](ExperimentConfig& c, const std::string& v) { c.output_every = to_double("time.output_every", v); }}},
        {"time.reference_dt_ratio", {"reference step refinement (default 4)", [](ExperimentConfig& c, const std::string& v) { c.reference_dt_ratio = to_int("time.reference_dt_ratio", v); }}},
        {"time.kp_dtau", {"KP step in slow time (default 0.01)", [](ExperimentConfig& c, const std::string& v) { c.kp_dtau = to_double("time.kp_dtau", v); }}},
        {"time.dealias", {"2/3-rule dealiasing of tendencies (default true)", [](ExperimentConfig& c, const std::string& v) { c.dealias = to_bool("time.dealias", v); }}},
        {"time.filter", {"exponential high-mode filter after each step (default false)", [](ExperimentConfig& c, const std::string& v) { c.filter = to_bool("time.filter", v); }}},
        {"time.snapshot_stride", {"simulate: write field snapshots every n steps (0 = first and last only)", [](ExperimentConfig& c, const std::string& v) { c.snapshot_stride = to_int("time.snapshot_stride", v); }}},
        {"time.scaling", {"nu convention for simulate/sweep: general, shallow, deep", [](ExperimentConfig& c, const std::string& v) { c.scaling = parse_depth_scaling(trim(v)); }}},
        {"dn.backend", {"DN backend of simulate/sweep: elliptic, shallow1, shallow2, small_amplitude:<n>", [](ExperimentConfig&, const std::string& v) { pending->backend = trim(v); }}},
        {"dn.nz", {"vertical levels of the elliptic backend (default 24)", [](ExperimentConfig&, const std::string& v) { pending->nz = to_int("dn.nz", v); }}},
        {"dn.cg_tol", {"CG relative tolerance (default 1e-10)", [](ExperimentConfig&, const std::string& v) { pending->tol = to_double("dn.cg_tol", v); }}},
        {"dn.cg_maxiter", {"CG iteration cap (default 500)", [](ExperimentConfig&, const std::string& v) { pending->maxiter = to_int("dn.cg_maxiter", v); }}},
        {"dn.reference", {"reference DN backend of compare and dn-study (default elliptic)", [](ExperimentConfig&, const std::string& v) { pending->reference = trim(v); }}},
        {"dn.reference_nz", {"vertical levels of the reference (default 32)", [](ExperimentConfig&, const std::string& v) { pending->ref_nz = to_int("dn.reference_nz", v); }}},
        {"dn.reference_cg_tol", {"CG tolerance of the reference (default 1e-10)", [](ExperimentConfig&, const std::string& v) { pending->ref_tol = to_double("dn.reference_cg_tol", v); }}},
        {"dn.compare", {"dn-study: backend measured against the reference", [](ExperimentConfig&, const std::string& v) { pending->compare = trim(v); }}},
        {"dn.h0", {"minimal depth threshold (default 0.1)", [](ExperimentConfig& c, const std::string& v) { c.h0 = to_double("dn.h0", v); }}},
        {"dn.sobolev_s", {"Sobolev index of the H^s error columns (default 1.5)", [](ExperimentConfig& c, const std::string& v) { c.sobolev_s = to_double("dn.sobolev_s", v); }}},
        {"taylor.bisect", {"locate the threshold bottom amplitude (default false)", [](ExperimentConfig& c, const std::string& v) { c.bisect = to_bool("taylor.bisect", v); }}},
        {"taylor.amp_lo", {"bisection lower bracket on the bottom amplitude factor", [](ExperimentConfig& c, const std::string& v) { c.amp_lo = to_double("taylor.amp_lo", v); }}},
        {"taylor.amp_hi", {"bisection upper bracket", [](ExperimentConfig& c, const std::string& v) { c.amp_hi = to_double("taylor.amp_hi", v); }}},
        {"taylor.rtol", {"bisection relative tolerance (default 1e-3)", [](ExperimentConfig& c, const std::string& v) { c.bisect_rtol = to_double("taylor.rtol", v); }}},
        {"gn.cg_tol", {"Green-Naghdi CG tolerance (default 1e-10)", [](ExperimentConfig& c, const std::string& v) { c.gn_tol = to_double("gn.cg_tol", v); }}},
        {"gn.cg_maxiter", {"Green-Naghdi CG cap (default 400)", [](ExperimentConfig& c, const std::string& v) { c.gn_maxiter = to_int("gn.cg_maxiter", v); }}},
    };
    return keys;
}

FieldTerm parse_term(const std::string& raw) {
    const std::string t = trim(raw);
    const auto open = t.find('(');
    if (open == std::string::npos || t.back() != ')') throw ConfigError("bad field term '" + t + "'");
    const std::string name = trim(t.substr(0, open));
    FieldTerm term;
    std::size_t want = 0;
    if (name == "gauss") {
        term.kind = FieldTerm::Kind::gauss;
        want = 4;
    } else if (name == "gaussx") {
        term.kind = FieldTerm::Kind::gaussx;
        want = 3;
    } else if (name == "dgaussx") {
        term.kind = FieldTerm::Kind::dgaussx;
        want = 3;
    } else if (name == "mode") {
        term.kind = FieldTerm::Kind::mode;
        want = 4;
    } else {
        throw ConfigError("unknown field term '" + name + "'");
    }
    term.args = to_list(name, t.substr(open + 1, t.size() - open - 2));
    if (term.args.size() != want) throw ConfigError(name + " takes " + std::to_string(want) + " arguments");
    if (term.kind != FieldTerm::Kind::mode && !(term.args.back() > 0.0)) throw ConfigError(name + ": width must be positive");
    return term;
}

}  // namespace

FieldSpec parse_field_spec(const std::string& text) {
    FieldSpec spec;
    int depth = 0;
    std::string cur;
    for (char ch : text) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == '+' && depth == 0) {
            if (!trim(cur).empty()) spec.terms.push_back(parse_term(cur));
            cur.clear();
            continue;
        }
        cur += ch;
    }
    if (depth != 0) throw ConfigError("unbalanced parentheses in '" + text + "'");
    if (!trim(cur).empty()) spec.terms.push_back(parse_term(cur));
    return spec;
}

ModelKind parse_model(const std::string& name) {
    if (name == "shallow_water" || name == "sw") return ModelKind::shallow_water;
    if (name == "green_naghdi" || name == "gn") return ModelKind::green_naghdi;
    if (name == "serre") return ModelKind::serre;
    if (name == "boussinesq") return ModelKind::boussinesq;
    if (name == "kp") return ModelKind::kp;
    if (name == "full_dispersion" || name == "fd") return ModelKind::full_dispersion;
    throw ConfigError("unknown model '" + name + "'");
}

std::string to_string(ModelKind m) {
    switch (m) {
        case ModelKind::shallow_water: return "shallow_water";
        case ModelKind::green_naghdi: return "green_naghdi";
        case ModelKind::serre: return "serre";
        case ModelKind::boussinesq: return "boussinesq";
        case ModelKind::kp: return "kp";
        case ModelKind::full_dispersion: return "full_dispersion";
    }
    return "?";
}

PresetKind model_preset(ModelKind m) {
    switch (m) {
        case ModelKind::shallow_water: return PresetKind::shallow_water;
        case ModelKind::green_naghdi: return PresetKind::green_naghdi;
        case ModelKind::serre: return PresetKind::serre;
        case ModelKind::boussinesq: return PresetKind::boussinesq_long_wave;
        case ModelKind::kp: return PresetKind::kp_weakly_transverse;
        case ModelKind::full_dispersion: return PresetKind::full_dispersion;
    }
    return PresetKind::shallow_water;
}

DepthScaling model_scaling(ModelKind m) {
    return m == ModelKind::full_dispersion ? DepthScaling::deep : DepthScaling::shallow;
}

const std::map<std::string, std::string>& config_keys() {
    static const std::map<std::string, std::string> docs = [] {
        std::map<std::string, std::string> d;
        for (const auto& [k, v] : registry()) d[k] = v.doc;
        return d;
    }();
    return docs;
}

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    cfg.lx = 4.0 * std::numbers::pi;
    cfg.ly = 2.0 * std::numbers::pi;
    Pending pend;
    pending = &pend;
    struct Reset {
        ~Reset() { pending = nullptr; }
    } reset;

    std::map<std::string, std::string> raw;
    std::stringstream ss(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("line " + std::to_string(lineno) + ": bad section header");
            section = trim(line.substr(1, line.size() - 2));
            static const char* known[] = {"regime", "grid", "initial", "model", "time", "dn", "taylor", "gn"};
            if (std::find(std::begin(known), std::end(known), section) == std::end(known)) {
                throw ConfigError("line " + std::to_string(lineno) + ": unknown section [" + section + "]");
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        if (section.empty()) throw ConfigError("line " + std::to_string(lineno) + ": key outside a section");
        const std::string key = section + "." + trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = registry().find(key);
        if (it == registry().end()) throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        if (raw.count(key)) throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        raw[key] = value;
        it->second.set(cfg, value);
    }

    try {
        if (pend.preset) {
            RegimePreset p;
            p.kind = parse_preset(*pend.preset);
            p.deep_mu = pend.deep_mu;
            cfg.preset = p;
        }
        if (pend.eps || pend.mu || pend.gamma || pend.beta) {
            if (!pend.eps || !pend.mu) throw ConfigError("[regime] epsilon and mu must both be given");
            cfg.regime = RegimeParams(*pend.eps, *pend.mu, pend.gamma.value_or(1.0), pend.beta.value_or(0.0));
        }
        auto make_backend = [](const std::string& name, int nz, double tol, int maxiter) {
            DnBackend b = parse_dn_backend(name);
            if (b.kind == DnBackend::Kind::elliptic) b = DnBackend::elliptic(nz, tol, maxiter);
            b.validate();
            return b;
        };
        cfg.backend = make_backend(pend.backend, pend.nz, pend.tol, pend.maxiter);
        cfg.reference = make_backend(pend.reference, pend.ref_nz, pend.ref_tol, pend.maxiter);
        if (pend.compare) cfg.compare_backend = make_backend(*pend.compare, pend.nz, pend.tol, pend.maxiter);
        PeriodicGrid(cfg.nx, cfg.ny, cfg.lx, cfg.ly);
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    if (!(cfg.dt > 0.0)) throw ConfigError("time.dt must be positive");
    if (!(cfg.horizon > 0.0)) throw ConfigError("time.horizon must be positive");
    if (!(cfg.t_end >= 0.0)) throw ConfigError("time.t_end must be nonnegative");
    if (!(cfg.output_every > 0.0 && cfg.output_every <= 1.0)) throw ConfigError("time.output_every must lie in (0, 1]");
    if (cfg.reference_dt_ratio < 1) throw ConfigError("time.reference_dt_ratio must be >= 1");
    if (!(cfg.kp_dtau > 0.0)) throw ConfigError("time.kp_dtau must be positive");
    if (!(cfg.h0 > 0.0)) throw ConfigError("dn.h0 must be positive");
    if (!(cfg.sobolev_s >= 0.0 && cfg.sobolev_s <= 10.0)) throw ConfigError("dn.sobolev_s must lie in [0, 10]");
    if (cfg.snapshot_stride < 0) throw ConfigError("time.snapshot_stride must be >= 0");
    if (cfg.preset) {
        for (double v : cfg.values) {
            if (!cfg.preset->admissible(v)) throw ConfigError("regime value " + fmt(v) + " outside the preset range");
        }
    }
    if (cfg.model && cfg.model == ModelKind::boussinesq) {
        try {
            BoussinesqCoeffs::make(cfg.theta, cfg.p1, cfg.p2);
        } catch (const Error& e) {
            throw ConfigError(e.what());
        }
    }

    auto& eff = cfg.effective;
    eff = raw;
    auto dflt = [&](const std::string& k, const std::string& v) { eff.emplace(k, v); };
    dflt("grid.nx", std::to_string(cfg.nx));
    dflt("grid.ny", std::to_string(cfg.ny));
    dflt("grid.lx", fmt(cfg.lx));
    dflt("grid.ly", fmt(cfg.ly));
    dflt("time.dt", fmt(cfg.dt));
    dflt("time.horizon", fmt(cfg.horizon));
    dflt("time.t_end", fmt(cfg.t_end));
    dflt("time.fixed_horizon", cfg.fixed_horizon ? "true" : "false");
    dflt("time.reference_check", cfg.reference_check ? "true" : "false");
    dflt("time.output_every", fmt(cfg.output_every));
    dflt("time.reference_dt_ratio", std::to_string(cfg.reference_dt_ratio));
    dflt("time.kp_dtau", fmt(cfg.kp_dtau));
    dflt("time.dealias", cfg.dealias ? "true" : "false");
    dflt("time.filter", cfg.filter ? "true" : "false");
    dflt("time.scaling", std::string(to_string(cfg.scaling)));
    dflt("dn.backend", to_string(cfg.backend));
    dflt("dn.nz", std::to_string(cfg.backend.elliptic_opts.nz));
    dflt("dn.cg_tol", fmt(cfg.backend.elliptic_opts.cg_tol));
    dflt("dn.cg_maxiter", std::to_string(cfg.backend.elliptic_opts.cg_maxiter));
    dflt("dn.reference", to_string(cfg.reference));
    dflt("dn.reference_nz", std::to_string(cfg.reference.elliptic_opts.nz));
    dflt("dn.reference_cg_tol", fmt(cfg.reference.elliptic_opts.cg_tol));
    dflt("dn.h0", fmt(cfg.h0));
    dflt("dn.sobolev_s", fmt(cfg.sobolev_s));
    dflt("gn.cg_tol", fmt(cfg.gn_tol));
    dflt("gn.cg_maxiter", std::to_string(cfg.gn_maxiter));
    dflt("model.theta", fmt(cfg.theta));
    dflt("model.p1", fmt(cfg.p1));
    dflt("model.p2", fmt(cfg.p2));
    dflt("regime.deep_mu", fmt(pend.deep_mu));
    dflt("spectral.dealias_rule", "2/3");
    dflt("time.integrator", "rk4");
    dflt("dn.vertical_nodes", "legendre_gauss_lobatto");
    dflt("taylor.bisect", cfg.bisect ? "true" : "false");
    dflt("taylor.amp_lo", fmt(cfg.amp_lo));
    dflt("taylor.amp_hi", fmt(cfg.amp_hi));
    dflt("taylor.rtol", fmt(cfg.bisect_rtol));
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read config '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

std::vector<RegimeParams> experiment_regimes(const ExperimentConfig& cfg) {
    if (cfg.preset && !cfg.values.empty()) return preset_sweep(*cfg.preset, cfg.values);
    if (cfg.regime) return {*cfg.regime};
    throw ConfigError("no regime: give [regime] preset + values, or epsilon and mu");
}

std::vector<double> experiment_parameters(const ExperimentConfig& cfg) {
    if (cfg.preset && !cfg.values.empty()) return cfg.values;
    if (cfg.regime) return {cfg.regime->mu()};
    throw ConfigError("no regime: give [regime] preset + values, or epsilon and mu");
}

}  // namespace wavecascade
