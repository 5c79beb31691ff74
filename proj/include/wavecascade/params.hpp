#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wavecascade {

/// Dimensional scales of a physical configuration (SI units).
struct PhysicalScales {
    double amplitude_a = 0.0;
    double wavelength_x = 0.0;
    double wavelength_y = 0.0;
    double depth_d = 0.0;
    double bottom_amplitude = 0.0;
    double gravity = 9.81;
};

/// Dimensionless quadruple (epsilon, mu, gamma, beta) with the derived nu.
///
/// epsilon: nonlinearity a/d, mu: shallowness d^2/lambda^2, gamma: transversity,
/// beta: bottom variation B/d.  nu = 1/(1+sqrt(mu)) always.
class RegimeParams {
public:
    static constexpr double kMuMin = 1e-8;
    static constexpr double kMuMax = 1e8;

    RegimeParams() : RegimeParams(1.0, 1.0, 1.0, 0.0) {}
    /// Throws InvalidInput outside (0,1] x [1e-8,1e8] x (0,1] x [0,1].
    RegimeParams(double epsilon, double mu, double gamma, double beta);

    double epsilon() const { return epsilon_; }
    double mu() const { return mu_; }
    double gamma() const { return gamma_; }
    double beta() const { return beta_; }
    double nu() const { return nu_; }
    double sqrt_mu() const { return sqrt_mu_; }
    /// epsilon * sqrt(mu), the wave steepness.
    double steepness() const { return epsilon_ * sqrt_mu_; }

    bool operator==(const RegimeParams&) const = default;

private:
    double epsilon_;
    double mu_;
    double gamma_;
    double beta_;
    double nu_;
    double sqrt_mu_;
};

std::string to_string(const RegimeParams& p);

/// Which depth scale the evolution equations are written in.
///
/// The water-waves system holds for any nu > 0; the asymptotic models are
/// stated with nu = 1 (shallow scaling) or nu = mu^{-1/2} (deep scaling).
enum class DepthScaling { general, shallow, deep };

double effective_nu(const RegimeParams& p, DepthScaling scaling);
DepthScaling parse_depth_scaling(std::string_view name);
std::string_view to_string(DepthScaling s);

RegimeParams nondimensionalize(const PhysicalScales& scales);

/// Inverse of nondimensionalize for a chosen depth and wavelength_y; returns the
/// physical scales that map back to p.
PhysicalScales redimensionalize(const RegimeParams& p, double depth_d, double gravity = 9.81);

/// Membership in the parameter set P_M: box constraints plus
/// epsilon*sqrt(mu) <= M and beta/epsilon <= M.
bool in_regime_class(const RegimeParams& p, double bound_m);

enum class PresetKind {
    shallow_water,
    green_naghdi,
    serre,
    boussinesq_long_wave,
    kp_weakly_transverse,
    full_dispersion,
};

/// A one-parameter family of regimes.  For full_dispersion the small
/// parameter is the steepness and mu is held at `deep_mu`.
struct RegimePreset {
    PresetKind kind = PresetKind::shallow_water;
    double deep_mu = 4.0;

    bool admissible(double value) const;
    RegimeParams generate(double value) const;
    /// Name of the swept small parameter ("mu", "epsilon", "steepness").
    std::string_view parameter_name() const;
};

PresetKind parse_preset(std::string_view name);
std::string_view to_string(PresetKind kind);

std::vector<RegimeParams> preset_sweep(const RegimePreset& preset, std::span<const double> values);

}  // namespace wavecascade
