#include <cmath>

#include "common.hpp"
#include "wavecascade/rk4.hpp"
#include "wavecascade/spectral.hpp"

namespace wavecascade {

BoussinesqCoeffs BoussinesqCoeffs::make(double theta, double p1, double p2) {
    if (!(theta >= 0.0 && theta <= 1.0)) throw InvalidInput("theta must lie in [0, 1]");
    if (!std::isfinite(p1) || !std::isfinite(p2)) throw InvalidInput("p1, p2 must be finite");
    BoussinesqCoeffs c;
    c.theta = theta;
    c.p1 = p1;
    c.p2 = p2;
    const double t2 = theta * theta;
    c.a1 = (t2 / 2.0 - 1.0 / 6.0) * p1;
    c.a2 = (t2 / 2.0 - 1.0 / 6.0) * (1.0 - p1);
    c.a3 = (1.0 - t2) / 2.0 * p2;
    c.a4 = (1.0 - t2) / 2.0 * (1.0 - p2);
    return c;
}

HyperbolicState boussinesq_rhs(const HyperbolicState& s, const ScalarField& b, const BoussinesqCoeffs& c, double eps,
                               bool dealias_on) {
    const VectorField& v = s.v;
    const ScalarField dv = div(v);
    const VectorField gz = grad(s.zeta);

    ScalarField pot = 0.25 * dot(v, v);
    pot.axpy(0.25, s.zeta * s.zeta);
    VectorField nl = grad(pot);
    nl.axpy(0.5, VectorField(dot(v, grad(v.x)), dot(v, grad(v.y))));
    nl.axpy(0.5, dv * v);
    nl.axpy(-0.5, b * gz);
    if (dealias_on) nl = dealias(nl);
    nl.axpy(c.a1, VectorField(laplacian(gz.x), laplacian(gz.y)));
    VectorField fv = gz;
    fv.axpy(eps, nl);

    ScalarField nz = 0.5 * div((s.zeta - b) * v);
    if (dealias_on) nz = dealias(nz);
    nz.axpy(c.a3, laplacian(dv));
    ScalarField fz = dv;
    fz.axpy(eps, nz);

    HyperbolicState out;
    out.v = VectorField(helmholtz_inverse(fv.x, eps * c.a2), helmholtz_inverse(fv.y, eps * c.a2));
    out.v *= -1.0;
    out.zeta = -1.0 * helmholtz_inverse(fz, eps * c.a4);
    out.time = 1.0;
    return out;
}

ModelTrajectory boussinesq_integrate(const HyperbolicState& s0, const ScalarField& b, const BoussinesqCoeffs& c,
                                     double eps, const ModelRunOptions& opt) {
    if (!c.evolvable()) throw InvalidInput("Boussinesq evolution requires a2 >= 0 and a4 >= 0");
    return run_rk4(
        s0, opt.t_end, opt.dt, opt.snapshot_stride,
        [&](const HyperbolicState& s) { return boussinesq_rhs(s, b, c, eps, opt.dealias); },
        [&](const HyperbolicState& s, double tp) { detail::check_bounded(s, tp, "Boussinesq"); });
}

namespace {

double smoothing(double eps, double theta) { return 0.5 * eps * (1.0 - theta * theta); }

}  // namespace

HyperbolicState boussinesq_initial(const ScalarField& zeta0, const ScalarField& psi0, const ScalarField& b, double eps,
                                   double theta) {
    const double a = smoothing(eps, theta);
    const ScalarField m = helmholtz_inverse(psi0, a);
    ScalarField f = 0.5 * eps * (zeta0 - b);
    f += 1.0;
    return HyperbolicState{zeta0, f * grad(m), 0.0};
}

HyperbolicState boussinesq_reconstruct(const HyperbolicState& s, const ScalarField& b, double eps, double theta) {
    const double a = smoothing(eps, theta);
    ScalarField f = -0.5 * eps * (s.zeta - b);
    f += 1.0;
    const VectorField w = f * s.v;
    return HyperbolicState{s.zeta, VectorField(helmholtz(w.x, a), helmholtz(w.y, a)), s.time};
}

}  // namespace wavecascade
