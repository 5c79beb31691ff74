#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "wavecascade/errors.hpp"

namespace wavecascade {

/// Classical RK4 step for any state type providing
/// `S& S::axpy(double, const S&)` (used as y += a*x).
template <class S, class Rhs>
S rk4_step(const S& u, double dt, Rhs&& rhs) {
    const S k1 = rhs(u);
    S u2 = u;
    u2.axpy(0.5 * dt, k1);
    const S k2 = rhs(u2);
    S u3 = u;
    u3.axpy(0.5 * dt, k2);
    const S k3 = rhs(u3);
    S u4 = u;
    u4.axpy(dt, k3);
    const S k4 = rhs(u4);
    S out = u;
    out.axpy(dt / 6.0, k1);
    out.axpy(dt / 3.0, k2);
    out.axpy(dt / 3.0, k3);
    out.axpy(dt / 6.0, k4);
    return out;
}

/// Step count that lands exactly on t_end with a step no longer than dt.
inline int step_count(double t_end, double dt) {
    if (!(dt > 0.0) || !(t_end >= 0.0)) throw InvalidInput("dt must be positive and t_end nonnegative");
    return static_cast<int>(std::ceil(t_end / dt - 1e-9));
}

}  // namespace wavecascade

namespace wavecascade {

/// Integrates with rk4_step to t_end, storing every `stride`-th state plus the
/// first and last.  `check(state, last_time)` runs after each step and may
/// throw; DegenerateGeometry thrown inside `rhs` is re-stamped with the last
/// accepted time.
template <class S, class Rhs, class Check>
std::vector<S> run_rk4(const S& s0, double t_end, double dt, int stride, Rhs&& rhs, Check&& check) {
    if (stride < 1) throw InvalidInput("snapshot stride must be positive");
    const int steps = step_count(t_end, dt);
    const double h = steps > 0 ? t_end / steps : 0.0;
    std::vector<S> out{s0};
    S s = s0;
    for (int n = 1; n <= steps; ++n) {
        const double t_prev = s.time;
        try {
            s = rk4_step(s, h, rhs);
        } catch (const DegenerateGeometry& e) {
            throw DegenerateGeometry(e.what(), t_prev);
        }
        s.time = s0.time + n * h;
        check(s, t_prev);
        if (n % stride == 0 || n == steps) out.push_back(s);
    }
    return out;
}

}  // namespace wavecascade
