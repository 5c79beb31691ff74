#include "wavecascade/waterwaves.hpp"

#include <algorithm>
#include <cmath>

#include "wavecascade/errors.hpp"
#include "wavecascade/rk4.hpp"
#include "wavecascade/spectral.hpp"

namespace wavecascade {

SurfaceState& SurfaceState::axpy(double a, const SurfaceState& o) {
    zeta.axpy(a, o.zeta);
    psi.axpy(a, o.psi);
    time += a * o.time;
    return *this;
}

SurfaceState ww_rhs(const SurfaceState& s, const WaterWavesSystem& sys) {
    const RegimeParams& p = sys.params;
    const double eps = p.epsilon();
    const double mu = p.mu();
    const double nu = sys.nu();
    const double gamma = p.gamma();
    const StripGeometry geom = sys.geometry(s.zeta);
    const ScalarField g = dn_apply(geom, s.psi, sys.backend);

    const VectorField gz = grad_gamma(s.zeta, gamma);
    const VectorField gp = grad_gamma(s.psi, gamma);
    ScalarField num = (1.0 / mu) * g;
    num.axpy(eps, dot(gz, gp));
    const ScalarField den = map(dot(gz, gz), [&](double q) { return 2.0 * (1.0 + eps * eps * mu * q); });
    ScalarField nonlin = (-eps / (2.0 * nu)) * dot(gp, gp);
    nonlin.axpy(eps * mu / nu, num * num / den);

    SurfaceState out;
    out.zeta = (1.0 / (mu * nu)) * g;
    out.psi = -s.zeta;
    if (sys.dealias) {
        out.zeta = dealias(out.zeta);
        out.psi += dealias(nonlin);
    } else {
        out.psi += nonlin;
    }
    out.time = 1.0;
    return out;
}

namespace {

void check_bounded(const SurfaceState& s, double last_time) {
    const bool ok = s.zeta.all_finite() && s.psi.all_finite() && s.zeta.max_abs() <= 1e6 && s.psi.max_abs() <= 1e6;
    if (!ok) throw BlowUp("water-waves solution left the bounded regime", last_time);
}

}  // namespace

std::vector<SurfaceState> integrate(const SurfaceState& s0, const IntegratorConfig& cfg, const WaterWavesSystem& sys,
                                    const SurfaceObserver& observer) {
    if (cfg.snapshot_stride < 1) throw InvalidInput("snapshot_stride must be positive");
    const int steps = step_count(cfg.t_end, cfg.dt);
    const double dt = steps > 0 ? cfg.t_end / steps : 0.0;
    sys.geometry(s0.zeta);

    std::vector<SurfaceState> out{s0};
    if (observer) observer(s0);
    SurfaceState s = s0;
    for (int n = 1; n <= steps; ++n) {
        const double t_prev = s.time;
        try {
            s = rk4_step(s, dt, [&](const SurfaceState& u) { return ww_rhs(u, sys); });
        } catch (const DegenerateGeometry& e) {
            throw DegenerateGeometry(e.what(), t_prev);
        }
        s.time = s0.time + n * dt;
        if (cfg.filter) {
            s.zeta = exp_filter(s.zeta);
            s.psi = exp_filter(s.psi);
        }
        check_bounded(s, t_prev);
        try {
            sys.geometry(s.zeta);
        } catch (const DegenerateGeometry& e) {
            throw DegenerateGeometry(e.what(), t_prev);
        }
        if (n % cfg.snapshot_stride == 0 || n == steps) {
            out.push_back(s);
            if (observer) observer(s);
        }
    }
    return out;
}

double mass(const SurfaceState& s) { return integral(s.zeta); }

double hamiltonian(const SurfaceState& s, const WaterWavesSystem& sys) {
    const RegimeParams& p = sys.params;
    const ScalarField g = dn_apply(sys.geometry(s.zeta), s.psi, sys.backend);
    return 0.5 * inner(s.zeta, s.zeta) + inner(remove_mean(s.psi), g) / (2.0 * p.mu() * sys.nu());
}

Diagnostics diagnostics(const SurfaceState& s, const WaterWavesSystem& sys) {
    Diagnostics d;
    d.t = s.time;
    d.mass = mass(s);
    d.hamiltonian = hamiltonian(s, sys);
    d.linf_zeta = s.zeta.max_abs();
    d.min_depth = sys.geometry(s.zeta).min_depth();
    return d;
}

double ww_linear_frequency(double k_gamma, const RegimeParams& p, double nu) {
    return std::sqrt(g0_symbol(k_gamma, p.mu()) / (p.mu() * nu));
}

double suggest_dt(const PeriodicGrid& grid, const RegimeParams& p, double nu) {
    double cmax = 0.0;
    for (int i = 0; i < grid.nx(); ++i)
        for (int j = 0; j < grid.nyh(); ++j) {
            const double k = std::hypot(grid.kx(i), p.gamma() * grid.ky(j));
            const double c = k > 0.0 ? ww_linear_frequency(k, p, nu) / k : 1.0 / std::sqrt(nu);
            cmax = std::max(cmax, c);
        }
    return 0.5 * std::min(grid.dx(), grid.dy()) / cmax;
}

}  // namespace wavecascade
