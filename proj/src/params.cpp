#include "wavecascade/params.hpp"

#include <cmath>
#include <cstdio>

#include "wavecascade/errors.hpp"

namespace wavecascade {

namespace {

bool in_unit_interval(double v, bool open_left) {
    return (open_left ? v > 0.0 : v >= 0.0) && v <= 1.0;
}

}  // namespace

RegimeParams::RegimeParams(double epsilon, double mu, double gamma, double beta)
    : epsilon_(epsilon), mu_(mu), gamma_(gamma), beta_(beta) {
    if (!std::isfinite(epsilon) || !in_unit_interval(epsilon, true)) {
        throw InvalidInput("epsilon must lie in (0,1]");
    }
    if (!std::isfinite(mu) || mu < kMuMin || mu > kMuMax) {
        throw InvalidInput("mu must lie in [1e-8, 1e8]");
    }
    if (!std::isfinite(gamma) || !in_unit_interval(gamma, true)) {
        throw InvalidInput("gamma must lie in (0,1]");
    }
    if (!std::isfinite(beta) || !in_unit_interval(beta, false)) {
        throw InvalidInput("beta must lie in [0,1]");
    }
    sqrt_mu_ = std::sqrt(mu);
    nu_ = 1.0 / (1.0 + sqrt_mu_);
}

std::string to_string(const RegimeParams& p) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "(eps=%.6g, mu=%.6g, gamma=%.6g, beta=%.6g, nu=%.6g)", p.epsilon(),
                  p.mu(), p.gamma(), p.beta(), p.nu());
    return buf;
}

double effective_nu(const RegimeParams& p, DepthScaling scaling) {
    switch (scaling) {
        case DepthScaling::general: return p.nu();
        case DepthScaling::shallow: return 1.0;
        case DepthScaling::deep: return 1.0 / p.sqrt_mu();
    }
    return p.nu();
}

DepthScaling parse_depth_scaling(std::string_view name) {
    if (name == "general") return DepthScaling::general;
    if (name == "shallow") return DepthScaling::shallow;
    if (name == "deep") return DepthScaling::deep;
    throw ConfigError("unknown depth scaling '" + std::string(name) + "'");
}

std::string_view to_string(DepthScaling s) {
    switch (s) {
        case DepthScaling::general: return "general";
        case DepthScaling::shallow: return "shallow";
        case DepthScaling::deep: return "deep";
    }
    return "general";
}

RegimeParams nondimensionalize(const PhysicalScales& s) {
    const bool lengths_ok = s.amplitude_a > 0.0 && s.wavelength_x > 0.0 && s.wavelength_y > 0.0 &&
                            s.depth_d > 0.0 && s.bottom_amplitude >= 0.0 && s.gravity > 0.0;
    if (!lengths_ok) throw InvalidInput("physical lengths must be positive (bottom amplitude >= 0)");
    if (s.amplitude_a > s.depth_d || s.bottom_amplitude > s.depth_d) {
        throw InvalidInput("amplitude and bottom amplitude must not exceed the depth");
    }
    const double gamma = s.wavelength_x / s.wavelength_y;
    if (gamma > 1.0) {
        throw InvalidInput("transversity > 1: the x axis must be the longitudinal direction");
    }
    const double eps = s.amplitude_a / s.depth_d;
    const double ratio = s.depth_d / s.wavelength_x;
    return RegimeParams(eps, ratio * ratio, gamma, s.bottom_amplitude / s.depth_d);
}

PhysicalScales redimensionalize(const RegimeParams& p, double depth_d, double gravity) {
    if (!(depth_d > 0.0)) throw InvalidInput("depth must be positive");
    PhysicalScales s;
    s.depth_d = depth_d;
    s.amplitude_a = p.epsilon() * depth_d;
    s.wavelength_x = depth_d / p.sqrt_mu();
    s.wavelength_y = s.wavelength_x / p.gamma();
    s.bottom_amplitude = p.beta() * depth_d;
    s.gravity = gravity;
    return s;
}

bool in_regime_class(const RegimeParams& p, double bound_m) {
    if (!(bound_m > 0.0)) return false;
    return p.steepness() <= bound_m && p.beta() / p.epsilon() <= bound_m;
}

bool RegimePreset::admissible(double v) const {
    if (!std::isfinite(v) || v <= 0.0) return false;
    switch (kind) {
        case PresetKind::shallow_water:
        case PresetKind::green_naghdi:
        case PresetKind::serre:
            return v < 1.0 && v >= RegimeParams::kMuMin;
        case PresetKind::boussinesq_long_wave:
        case PresetKind::kp_weakly_transverse:
            return v <= 1.0 && v >= RegimeParams::kMuMin;
        case PresetKind::full_dispersion:
            return deep_mu >= 1.0 && deep_mu <= RegimeParams::kMuMax && v <= std::sqrt(deep_mu);
    }
    return false;
}

RegimeParams RegimePreset::generate(double v) const {
    if (!admissible(v)) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "value %.6g outside the admissible interval of preset %s", v,
                      std::string(to_string(kind)).c_str());
        throw InvalidInput(buf);
    }
    switch (kind) {
        case PresetKind::shallow_water:
        case PresetKind::green_naghdi:
            return RegimeParams(1.0, v, 1.0, 1.0);
        case PresetKind::serre: {
            const double s = std::sqrt(v);
            return RegimeParams(s, v, 1.0, s);
        }
        case PresetKind::boussinesq_long_wave:
            return RegimeParams(v, v, 1.0, v);
        case PresetKind::kp_weakly_transverse:
            return RegimeParams(v, v, std::sqrt(v), 0.0);
        case PresetKind::full_dispersion:
            return RegimeParams(v / std::sqrt(deep_mu), deep_mu, 1.0, 0.0);
    }
    throw InvalidInput("unknown preset");
}

std::string_view RegimePreset::parameter_name() const {
    switch (kind) {
        case PresetKind::shallow_water:
        case PresetKind::green_naghdi:
        case PresetKind::serre:
            return "mu";
        case PresetKind::boussinesq_long_wave:
        case PresetKind::kp_weakly_transverse:
            return "epsilon";
        case PresetKind::full_dispersion:
            return "steepness";
    }
    return "mu";
}

PresetKind parse_preset(std::string_view name) {
    if (name == "shallow_water") return PresetKind::shallow_water;
    if (name == "green_naghdi") return PresetKind::green_naghdi;
    if (name == "serre") return PresetKind::serre;
    if (name == "boussinesq_long_wave" || name == "boussinesq") return PresetKind::boussinesq_long_wave;
    if (name == "kp_weakly_transverse" || name == "kp") return PresetKind::kp_weakly_transverse;
    if (name == "full_dispersion") return PresetKind::full_dispersion;
    throw ConfigError("unknown regime preset '" + std::string(name) + "'");
}

std::string_view to_string(PresetKind kind) {
    switch (kind) {
        case PresetKind::shallow_water: return "shallow_water";
        case PresetKind::green_naghdi: return "green_naghdi";
        case PresetKind::serre: return "serre";
        case PresetKind::boussinesq_long_wave: return "boussinesq_long_wave";
        case PresetKind::kp_weakly_transverse: return "kp_weakly_transverse";
        case PresetKind::full_dispersion: return "full_dispersion";
    }
    return "?";
}

std::vector<RegimeParams> preset_sweep(const RegimePreset& preset, std::span<const double> values) {
    std::vector<RegimeParams> out;
    out.reserve(values.size());
    for (double v : values) out.push_back(preset.generate(v));
    return out;
}

}  // namespace wavecascade
