#include <cmath>

#include "common.hpp"
#include "wavecascade/fft.hpp"
#include "wavecascade/rk4.hpp"
#include "wavecascade/spectral.hpp"

namespace wavecascade {

namespace {

bool kp_singular(const PeriodicGrid& g, int i, int j) { return g.mode_x(i) == 0 && j != 0; }

void project(Spectrum& s) {
    const PeriodicGrid& g = s.grid();
    for (int j = 1; j < g.nyh(); ++j) s.at(0, j) = 0.0;
}

// Linear symbol L with dtau z^ = L z^ for the given sign.
Complex kp_symbol(const PeriodicGrid& g, int i, int j, int sign) {
    if (g.mode_x(i) == 0) return 0.0;
    const double kx = g.kx(i);
    const double ky = g.ky(j);
    return Complex(0.0, -sign * (ky * ky / (2.0 * kx) - kx * kx * kx / 6.0));
}

// dtau * (-+ 3/4) dX (z^2), dealiased.
Spectrum kp_nonlinear(const Spectrum& v, int sign, double dtau) {
    const PeriodicGrid& g = v.grid();
    const ScalarField z = inverse(v);
    Spectrum s = forward(z * z);
    const int cx = g.nx() / 3;
    const int cy = g.ny() / 3;
    for (int i = 0; i < g.nx(); ++i)
        for (int j = 0; j < g.nyh(); ++j) {
            if (std::abs(g.mode_x(i)) > cx || j > cy || kp_singular(g, i, j)) {
                s.at(i, j) = 0.0;
                continue;
            }
            s.at(i, j) *= Complex(0.0, -sign * 0.75 * dtau * g.kx_derivative(i));
        }
    return s;
}

}  // namespace

ScalarField kp_project(const ScalarField& u) {
    Spectrum s = forward(u);
    project(s);
    return inverse(s);
}

KpPairState kp_initial(const ScalarField& zeta0, const ScalarField& psi0) {
    const ScalarField px = dx(psi0);
    KpPairState out;
    out.plus = kp_project(0.5 * (zeta0 + px));
    out.minus = kp_project(0.5 * (zeta0 - px));
    return out;
}

ScalarField kp_evolve(const ScalarField& z0, int sign, double tau_end, double dtau) {
    const int steps = step_count(tau_end, dtau);
    if (steps == 0) return kp_project(z0);
    const double h = tau_end / steps;
    const PeriodicGrid& g = z0.grid();
    Spectrum v = forward(z0);
    project(v);
    Spectrum e(g), e2(g);
    for (int i = 0; i < g.nx(); ++i)
        for (int j = 0; j < g.nyh(); ++j) {
            const Complex l = kp_symbol(g, i, j, sign);
            e.at(i, j) = std::exp(l * h);
            e2.at(i, j) = std::exp(l * (0.5 * h));
        }
    const std::size_t n = v.size();
    Spectrum tmp(g);
    for (int step = 0; step < steps; ++step) {
        const Spectrum a = kp_nonlinear(v, sign, h);
        for (std::size_t k = 0; k < n; ++k) tmp.data()[k] = e2.data()[k] * (v.data()[k] + 0.5 * a.data()[k]);
        const Spectrum b = kp_nonlinear(tmp, sign, h);
        for (std::size_t k = 0; k < n; ++k) tmp.data()[k] = e2.data()[k] * v.data()[k] + 0.5 * b.data()[k];
        const Spectrum c = kp_nonlinear(tmp, sign, h);
        for (std::size_t k = 0; k < n; ++k) tmp.data()[k] = e.data()[k] * v.data()[k] + e2.data()[k] * c.data()[k];
        const Spectrum d = kp_nonlinear(tmp, sign, h);
        for (std::size_t k = 0; k < n; ++k) {
            v.data()[k] = e.data()[k] * v.data()[k] +
                          (e.data()[k] * a.data()[k] + 2.0 * e2.data()[k] * (b.data()[k] + c.data()[k]) + d.data()[k]) /
                              6.0;
        }
    }
    ScalarField out = inverse(v);
    if (!out.all_finite() || out.max_abs() > 1e6) throw BlowUp("KP solution left the bounded regime", tau_end);
    return out;
}

std::vector<KpPairState> kp_integrate(const KpPairState& s0, double tau_end, double dtau, int stride) {
    if (stride < 1) throw InvalidInput("snapshot stride must be positive");
    const int steps = step_count(tau_end, dtau);
    const double h = steps > 0 ? tau_end / steps : 0.0;
    std::vector<KpPairState> out{KpPairState{kp_project(s0.plus), kp_project(s0.minus), s0.tau}};
    KpPairState cur = out.front();
    for (int n = 1; n <= steps; ++n) {
        cur.plus = kp_evolve(cur.plus, +1, h, h);
        cur.minus = kp_evolve(cur.minus, -1, h, h);
        cur.tau = s0.tau + n * h;
        if (n % stride == 0 || n == steps) out.push_back(cur);
    }
    return out;
}

namespace {

// u(x - shift) by phase rotation.
ScalarField shift_x(const ScalarField& u, double shift) {
    const PeriodicGrid& g = u.grid();
    Spectrum s = forward(u);
    for (int i = 0; i < g.nx(); ++i) {
        const Complex ph = std::exp(Complex(0.0, -g.kx_derivative(i) * shift));
        for (int j = 0; j < g.nyh(); ++j) s.at(i, j) *= ph;
    }
    return inverse(s);
}

}  // namespace

ScalarField kp_reconstruct(const KpPairState& pair, double t) {
    return shift_x(pair.plus, t) + shift_x(pair.minus, -t);
}

ScalarField kp_reconstruct_dxpsi(const KpPairState& pair, double t) {
    return shift_x(pair.plus, t) - shift_x(pair.minus, -t);
}

double kdv_soliton(double x, double c, double tau, double x0) {
    const double s = 1.0 / std::cosh(0.5 * std::sqrt(6.0 * c) * (x - x0 - c * tau));
    return 2.0 * c * s * s;
}

}  // namespace wavecascade
