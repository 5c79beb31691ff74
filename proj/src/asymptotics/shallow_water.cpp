#include <cmath>

#include "common.hpp"
#include "wavecascade/rk4.hpp"
#include "wavecascade/spectral.hpp"

namespace wavecascade {

HyperbolicState& HyperbolicState::axpy(double a, const HyperbolicState& o) {
    zeta.axpy(a, o.zeta);
    v.axpy(a, o.v);
    time += a * o.time;
    return *this;
}

HyperbolicState sw_rhs(const HyperbolicState& s, const ScalarField& b, bool dealias_on) {
    ScalarField h = s.zeta - b;
    h += 1.0;
    HyperbolicState out;
    ScalarField energy = s.zeta + 0.5 * dot(s.v, s.v);
    out.v = -1.0 * grad(dealias_on ? dealias(energy) : energy);
    ScalarField flux_div = div(h * s.v);
    out.zeta = -1.0 * (dealias_on ? dealias(flux_div) : flux_div);
    out.time = 1.0;
    return out;
}

ModelTrajectory sw_integrate(const HyperbolicState& s0, const ScalarField& b, const ModelRunOptions& opt) {
    auto depth = [&](const HyperbolicState& s) {
        ScalarField h = s.zeta - b;
        h += 1.0;
        return h;
    };
    detail::check_depth(depth(s0), s0.time, "shallow water");
    return run_rk4(
        s0, opt.t_end, opt.dt, opt.snapshot_stride, [&](const HyperbolicState& s) { return sw_rhs(s, b, opt.dealias); },
        [&](const HyperbolicState& s, double tp) {
            detail::check_bounded(s, tp, "shallow water");
            detail::check_depth(depth(s), tp, "shallow water");
        });
}

HyperbolicState sw_initial(const ScalarField& zeta0, const ScalarField& psi0) {
    return HyperbolicState{zeta0, grad(psi0), 0.0};
}

double sw_linear_frequency(double k) { return std::abs(k); }

double gn_linear_frequency(double k, double mu) { return std::abs(k) / std::sqrt(1.0 + mu * k * k / 3.0); }

double fd_linear_frequency(double k, double mu) {
    return std::sqrt(std::abs(k) * std::tanh(std::sqrt(mu) * std::abs(k)));
}

}  // namespace wavecascade
