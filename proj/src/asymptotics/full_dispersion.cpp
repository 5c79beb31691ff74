#include <cmath>

#include "common.hpp"
#include "wavecascade/rk4.hpp"
#include "wavecascade/spectral.hpp"

namespace wavecascade {

HyperbolicState fd_rhs(const HyperbolicState& s, const RegimeParams& p, bool dealias_on) {
    const double mu = p.mu();
    const double e = p.steepness();
    const VectorField& v = s.v;
    const VectorField gz = grad(s.zeta);
    const ScalarField tv = t_mu(v, mu);

    ScalarField nz = t_mu(s.zeta * grad(tv), mu);
    nz += div(s.zeta * v);
    VectorField nv = grad(0.5 * dot(v, v));
    nv.axpy(-1.0, t_mu(gz, mu) * gz);
    if (dealias_on) {
        nz = dealias(nz);
        nv = dealias(nv);
    }
    HyperbolicState out;
    out.zeta = tv;
    out.zeta.axpy(-e, nz);
    out.v = -1.0 * gz;
    out.v.axpy(-e, nv);
    out.time = 1.0;
    return out;
}

namespace {

void require_deep(const RegimeParams& p) {
    if (p.beta() != 0.0 || p.gamma() != 1.0 || p.mu() < 1.0) {
        throw UnsupportedRegime("full-dispersion model needs beta = 0, gamma = 1 and mu >= 1");
    }
}

}  // namespace

ModelTrajectory fd_integrate(const HyperbolicState& s0, const RegimeParams& p, const ModelRunOptions& opt) {
    require_deep(p);
    return run_rk4(
        s0, opt.t_end, opt.dt, opt.snapshot_stride, [&](const HyperbolicState& s) { return fd_rhs(s, p, opt.dealias); },
        [&](const HyperbolicState& s, double tp) { detail::check_bounded(s, tp, "full dispersion"); });
}

HyperbolicState fd_initial(const ScalarField& zeta0, const ScalarField& psi0, const RegimeParams& p) {
    require_deep(p);
    const VectorField gp = grad(psi0);
    VectorField v = gp;
    v.axpy(-p.steepness(), t_mu(gp, p.mu()) * grad(zeta0));
    return HyperbolicState{zeta0, v, 0.0};
}

}  // namespace wavecascade
