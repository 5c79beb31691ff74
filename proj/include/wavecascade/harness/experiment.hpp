#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wavecascade/dnop.hpp"
#include "wavecascade/harness/config.hpp"
#include "wavecascade/harness/rate.hpp"
#include "wavecascade/waterwaves.hpp"

namespace wavecascade {

struct InitialData {
    ScalarField zeta;
    ScalarField psi;
    ScalarField bottom;
};

PeriodicGrid experiment_grid(const ExperimentConfig& cfg);
/// Evaluates a field expression on the grid.
ScalarField make_field(const PeriodicGrid& grid, const FieldSpec& spec);
/// psi is projected to zero mean.  Throws InvalidInput when
/// min(1 + eps zeta - beta b) < h0.
InitialData make_initial_data(const PeriodicGrid& grid, const FieldSpec& zeta, const FieldSpec& psi,
                              const FieldSpec& bottom, const RegimeParams& p, double h0 = StripGeometry::kDefaultH0);
InitialData make_initial_data(const ExperimentConfig& cfg, const RegimeParams& p);

/// Final time of a comparison: T, T/sqrt(mu) (Serre), T/eps (Boussinesq, KP)
/// or T/(eps sqrt(mu)) (full dispersion).
double regime_horizon(ModelKind model, const RegimeParams& p, double T);

/// Swept parameter of a regime for the given preset.
double preset_parameter(PresetKind kind, const RegimeParams& p);

struct PointResult {
    double param = 0.0;
    double t_end = 0.0;
    double err_linf_zeta = 0.0;
    double err_linf_v = 0.0;
    double err_hs = 0.0;
    bool ok = true;
    std::string failure;

    /// err_linf_zeta + err_linf_v, the quantity rates are fitted on.
    double err_linf() const { return err_linf_zeta + err_linf_v; }
};

/// Reference dt-halving self-check at the point with the smallest model error.
struct ReferenceCheck {
    double param = 0.0;
    /// sup over outputs of |zeta_dt - zeta_dt/2|_inf + |grad psi_dt - grad psi_dt/2|_inf
    double drift = 0.0;
    double model_error = 0.0;
};

struct ConvergenceReport {
    std::string parameter_name;
    std::vector<PointResult> points;
    std::optional<RateFit> fit;
    std::string fit_failure;
    std::optional<ReferenceCheck> reference_check;
    std::string reference_check_failure;
    bool all_ok() const;
};

/// Reference water waves versus one model at a single regime.  Errors are
/// sup over the matched output times.
PointResult compare_point(const ExperimentConfig& cfg, const RegimeParams& p, double param);
/// Max difference between reference runs at reference_dt_ratio and twice it.
double reference_self_check(const ExperimentConfig& cfg, const RegimeParams& p);
/// Every regime of the sweep on a pool of `threads` workers, then the
/// reference self-check when enabled.
ConvergenceReport run_comparison(const ExperimentConfig& cfg, int threads = 1);

/// |G_ref psi - G_cmp psi|_{H^s} per regime; the fit is on err_hs.
PointResult dn_study_point(const ExperimentConfig& cfg, const RegimeParams& p, double param);
ConvergenceReport run_dn_study(const ExperimentConfig& cfg, int threads = 1);

struct SweepRow {
    double param = 0.0;
    double mass_drift = 0.0;
    double hamiltonian_drift = 0.0;
    double linf_zeta = 0.0;
    double min_depth = 0.0;
    bool ok = true;
    std::string failure;
};

std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg, int threads = 1);

/// Smallest amplitude at which `passes` turns false, by bisection to relative
/// width rtol.  The seed perturbs the initial bracket inward by up to 10%
/// (the bracket is widened back if it stops enclosing the switch).
double bisect_threshold(const std::function<bool(double)>& passes, double lo, double hi, double rtol,
                        std::uint64_t seed);

struct TaylorOutcome {
    TaylorCheckResult result;
    std::optional<double> threshold;
};

/// Taylor check of the configured data; with bisect, also the bottom
/// amplitude factor at which the check starts failing.
TaylorOutcome run_taylor_check(const ExperimentConfig& cfg);

/// Bounded worker pool over independent indices, results ordered by index.
void parallel_for_points(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

}  // namespace wavecascade
