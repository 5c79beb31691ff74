#pragma once

#include <functional>
#include <vector>

#include "wavecascade/dnop.hpp"
#include "wavecascade/grid.hpp"
#include "wavecascade/params.hpp"

namespace wavecascade {

/// Zakharov pair (zeta, psi) at time `time`.
struct SurfaceState {
    ScalarField zeta;
    ScalarField psi;
    double time = 0.0;

    SurfaceState& axpy(double a, const SurfaceState& o);
};

/// Everything fixed during a water-waves run.
struct WaterWavesSystem {
    RegimeParams params;
    ScalarField bottom;
    DnBackend backend = DnBackend::elliptic();
    DepthScaling scaling = DepthScaling::general;
    double h0 = StripGeometry::kDefaultH0;
    bool dealias = true;

    double nu() const { return effective_nu(params, scaling); }
    StripGeometry geometry(const ScalarField& zeta) const { return StripGeometry(zeta, bottom, params, h0); }
};

struct IntegratorConfig {
    double dt = 1e-2;
    double t_end = 0.0;
    int snapshot_stride = 1;
    /// Exponential high-mode filter after every step.
    bool filter = false;
};

/// Time derivative of the state (the time field of the result is 1).
SurfaceState ww_rhs(const SurfaceState& s, const WaterWavesSystem& sys);

/// Called on every stored snapshot.
using SurfaceObserver = std::function<void(const SurfaceState&)>;

/// RK4 integration to t_end.  Returns snapshots every snapshot_stride steps,
/// always including the initial and the final state.  Throws
/// DegenerateGeometry or BlowUp carrying the last admissible time.
std::vector<SurfaceState> integrate(const SurfaceState& s0, const IntegratorConfig& cfg, const WaterWavesSystem& sys,
                                    const SurfaceObserver& observer = {});

double mass(const SurfaceState& s);
/// 1/2 |zeta|^2 + 1/(2 mu nu) <psi, G psi>
double hamiltonian(const SurfaceState& s, const WaterWavesSystem& sys);

struct Diagnostics {
    double t = 0.0;
    double mass = 0.0;
    double hamiltonian = 0.0;
    double linf_zeta = 0.0;
    double min_depth = 0.0;
};

Diagnostics diagnostics(const SurfaceState& s, const WaterWavesSystem& sys);

/// Linear angular frequency of mode k: omega^2 = sqrt(mu) k tanh(sqrt(mu) k) / (mu nu).
double ww_linear_frequency(double k_gamma, const RegimeParams& p, double nu);

/// dt = 0.5 min(dx, dy) / c_max with c_max the largest linear phase speed on the grid.
double suggest_dt(const PeriodicGrid& grid, const RegimeParams& p, double nu);

}  // namespace wavecascade
