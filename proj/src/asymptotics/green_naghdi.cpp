#include <cmath>

#include "common.hpp"
#include "wavecascade/dnop.hpp"
#include "wavecascade/fft.hpp"
#include "wavecascade/rk4.hpp"
#include "wavecascade/spectral.hpp"

namespace wavecascade {

ScalarField d_operator(const VectorField& v, const ScalarField& f) {
    return div(v) * f - dot(v, grad(f));
}

namespace {

// (V.grad)^2 b = V.grad(V.grad b)
ScalarField second_directional(const VectorField& v, const ScalarField& b) { return dot(v, grad(dot(v, grad(b)))); }

// (V.grad)V
VectorField advection(const VectorField& v) { return VectorField(dot(v, grad(v.x)), dot(v, grad(v.y))); }

// (1 - mu/3 grad div)^{-1} applied mode by mode.
VectorField flat_inverse(const VectorField& r, double mu) {
    const PeriodicGrid& g = r.grid();
    Spectrum sx = forward(r.x);
    Spectrum sy = forward(r.y);
    for (int i = 0; i < g.nx(); ++i) {
        const double kx = g.kx_derivative(i);
        for (int j = 0; j < g.nyh(); ++j) {
            const double ky = g.ky_derivative(j);
            const double f = (mu / 3.0) / (1.0 + mu * (kx * kx + ky * ky) / 3.0);
            const Complex kr = kx * sx.at(i, j) + ky * sy.at(i, j);
            sx.at(i, j) -= f * kx * kr;
            sy.at(i, j) -= f * ky * kr;
        }
    }
    return VectorField(inverse(sx), inverse(sy));
}

}  // namespace

VectorField q_form(const ScalarField& h, const ScalarField& b, const VectorField& v) {
    const ScalarField vvb = second_directional(v, b);
    VectorField out = 0.5 * grad(h * h * vvb);
    const ScalarField coef = h * (0.5 * h * d_operator(v, div(v)) + vvb);
    out += coef * grad(b);
    return out;
}

VectorField gn_operator(const ScalarField& h, const ScalarField& b, double mu, const VectorField& w) {
    VectorField out = h * w;
    out.axpy(mu, t_operator(h, b, w));
    return out;
}

VectorField gn_solve(const ScalarField& h, const ScalarField& b, double mu, const VectorField& rhs,
                     const VectorField* guess, const GnOptions& opt, int* iterations) {
    VectorField x = guess ? *guess : VectorField(rhs.grid());
    VectorField r = rhs - gn_operator(h, b, mu, x);
    const double scale = std::sqrt(inner(rhs, rhs));
    if (iterations) *iterations = 0;
    if (scale == 0.0) return VectorField(rhs.grid());
    double rnorm = std::sqrt(inner(r, r));
    if (rnorm <= opt.cg_tol * scale) return x;
    VectorField z = flat_inverse(r, mu);
    VectorField p = z;
    double rz = inner(r, z);
    for (int it = 1; it <= opt.cg_maxiter; ++it) {
        const VectorField ap = gn_operator(h, b, mu, p);
        const double alpha = rz / inner(p, ap);
        x.axpy(alpha, p);
        r.axpy(-alpha, ap);
        rnorm = std::sqrt(inner(r, r));
        if (iterations) *iterations = it;
        if (rnorm <= opt.cg_tol * scale) return x;
        if (!std::isfinite(rnorm)) break;
        z = flat_inverse(r, mu);
        const double rz_new = inner(r, z);
        const double beta = rz_new / rz;
        rz = rz_new;
        VectorField pn = z;
        pn.axpy(beta, p);
        p = std::move(pn);
    }
    throw SolverFailure("Green-Naghdi CG did not converge", rnorm / scale, opt.cg_maxiter);
}

GnRhs::GnRhs(ScalarField b, const RegimeParams& p, GnOptions opt, bool dealias_on)
    : b_(std::move(b)), p_(p), opt_(opt), dealias_(dealias_on) {}

HyperbolicState GnRhs::operator()(const HyperbolicState& s) {
    const double eps = p_.epsilon();
    const double mu = p_.mu();
    ScalarField h = eps * (s.zeta - b_);
    h += 1.0;
    if (!(h.min() > 0.0)) throw DegenerateGeometry("Green-Naghdi: water depth vanished");
    const ScalarField eb = eps * b_;
    const VectorField& v = s.v;
    VectorField force = h * grad(s.zeta);
    force.axpy(eps, h * advection(v));
    VectorField disp = (1.0 / 3.0) * grad(h * h * h * d_operator(v, div(v)));
    disp += q_form(h, eb, v);
    force.axpy(mu * eps, disp);
    force *= -1.0;
    if (dealias_) force = dealias(force);
    HyperbolicState out;
    out.v = gn_solve(h, eb, mu, force, guess_.x.size() ? &guess_ : nullptr, opt_, &last_iters_);
    if (dealias_) out.v = dealias(out.v);
    guess_ = out.v;
    const ScalarField dz = -1.0 * div(h * v);
    out.zeta = dealias_ ? dealias(dz) : dz;
    out.time = 1.0;
    return out;
}

ModelTrajectory gn_integrate(const HyperbolicState& s0, const ScalarField& b, const RegimeParams& p,
                             const ModelRunOptions& opt, const GnOptions& gn) {
    GnRhs rhs(b, p, gn, opt.dealias);
    return run_rk4(s0, opt.t_end, opt.dt, opt.snapshot_stride, rhs, [&](const HyperbolicState& s, double tp) {
        detail::check_bounded(s, tp, "Green-Naghdi");
        ScalarField h = p.epsilon() * (s.zeta - b);
        h += 1.0;
        detail::check_depth(h, tp, "Green-Naghdi");
    });
}

VectorField gn_initial_velocity(const ScalarField& zeta0, const ScalarField& psi0, const ScalarField& b,
                                const RegimeParams& p) {
    ScalarField h = p.epsilon() * (zeta0 - b);
    h += 1.0;
    if (!(h.min() > 0.0)) throw DegenerateGeometry("Green-Naghdi: initial depth not positive");
    const VectorField gp = grad(psi0);
    const ScalarField r = map(h, [&](double x) { return -p.mu() / x; });
    VectorField out = gp;
    out += r * t_operator(h, p.epsilon() * b, gp);
    return out;
}

VectorField gn_reconstruct(const HyperbolicState& s, const ScalarField& b, const RegimeParams& p) {
    ScalarField h = p.epsilon() * (s.zeta - b);
    h += 1.0;
    const ScalarField r = map(h, [&](double x) { return p.mu() / x; });
    VectorField out = s.v;
    out += r * t_operator(h, p.epsilon() * b, s.v);
    return out;
}

}  // namespace wavecascade
