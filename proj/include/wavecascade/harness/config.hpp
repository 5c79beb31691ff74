#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wavecascade/asymptotics.hpp"
#include "wavecascade/dnop.hpp"
#include "wavecascade/params.hpp"

namespace wavecascade {

/// One term of an initial-data expression.
///
/// gauss(a, cx, cy, w):  a exp(-((x-cx)^2 + (y-cy)^2)/w^2)
/// gaussx(a, cx, w):     a exp(-(x-cx)^2/w^2)
/// dgaussx(a, cx, w):    a (x-cx)/w exp(-(x-cx)^2/w^2)
/// mode(a, m, n, phase): a cos(2 pi m x/lx + 2 pi n y/ly + phase)
/// Gaussians are periodized over the neighbouring cells.
struct FieldTerm {
    enum class Kind { gauss, gaussx, dgaussx, mode };
    Kind kind = Kind::gauss;
    std::vector<double> args;
};

/// Sum of terms, optionally multiplied by a y-profile (1 + m cos(2 pi n y/ly)).
struct FieldSpec {
    std::vector<FieldTerm> terms;
    double y_modulation = 0.0;
    int y_modulation_mode = 1;
};

FieldSpec parse_field_spec(const std::string& text);

enum class ModelKind { shallow_water, green_naghdi, serre, boussinesq, kp, full_dispersion };

ModelKind parse_model(const std::string& name);
std::string to_string(ModelKind m);
/// Preset whose regimes the model is compared in.
PresetKind model_preset(ModelKind m);
/// nu convention of the model's equations.
DepthScaling model_scaling(ModelKind m);

struct ExperimentConfig {
    // [regime]
    std::optional<RegimePreset> preset;
    std::vector<double> values;
    std::optional<RegimeParams> regime;
    // [grid]
    int nx = 64;
    int ny = 8;
    double lx = 0.0;
    double ly = 0.0;
    // [initial]
    FieldSpec zeta0;
    FieldSpec psi0;
    FieldSpec bottom;
    // [model]
    std::optional<ModelKind> model;
    double theta = 1.0;
    double p1 = 1.0;
    double p2 = 0.0;
    // [time]
    double dt = 0.05;
    double horizon = 1.0;
    bool fixed_horizon = false;
    bool reference_check = true;
    double t_end = 1.0;
    double output_every = 0.25;
    int reference_dt_ratio = 4;
    double kp_dtau = 0.01;
    bool dealias = true;
    bool filter = false;
    int snapshot_stride = 0;
    DepthScaling scaling = DepthScaling::general;
    // [dn]
    DnBackend reference = DnBackend::elliptic(32, 1e-10, 500);
    DnBackend backend = DnBackend::elliptic(24, 1e-10, 500);
    std::optional<DnBackend> compare_backend;
    double h0 = StripGeometry::kDefaultH0;
    double sobolev_s = 1.5;
    // [taylor]
    bool bisect = false;
    double amp_lo = 0.0;
    double amp_hi = 1.0;
    double bisect_rtol = 1e-3;
    // [gn]
    double gn_tol = 1e-10;
    int gn_maxiter = 400;

    std::uint64_t seed = 0;
    /// Every key/value in effect after defaults, for report.meta.
    std::map<std::string, std::string> effective;
};

/// Parses the INI-style text: `[section]` headers, `key = value` lines,
/// `#` or `;` comments.  Unknown sections or keys throw ConfigError.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Regimes of the experiment: the preset sweep, or the single [regime] point.
std::vector<RegimeParams> experiment_regimes(const ExperimentConfig& cfg);
/// Swept parameter value of each regime (the preset variable).
std::vector<double> experiment_parameters(const ExperimentConfig& cfg);

/// Documentation of all keys: section.key -> description.
const std::map<std::string, std::string>& config_keys();

}  // namespace wavecascade
