#pragma once

#include "wavecascade/fft.hpp"
#include "wavecascade/grid.hpp"
#include "wavecascade/params.hpp"

namespace wavecascade {

/// Multiplies the spectrum of u by a real symbol s(kx, ky) and transforms back.
/// The symbol must be even in (kx, ky) so the output stays real.
template <class Symbol>
ScalarField apply_symbol(const ScalarField& u, Symbol&& symbol) {
    const PeriodicGrid& g = u.grid();
    Spectrum s = forward(u);
    for (int i = 0; i < g.nx(); ++i) {
        const double kx = g.kx(i);
        for (int j = 0; j < g.nyh(); ++j) s.at(i, j) *= symbol(kx, g.ky(j));
    }
    return inverse(s);
}

ScalarField dx(const ScalarField& u);
ScalarField dy(const ScalarField& u);
/// (dx, gamma dy) u
VectorField grad_gamma(const ScalarField& u, double gamma);
/// dx v1 + gamma dy v2; minus the grid adjoint of grad_gamma.
ScalarField div_gamma(const VectorField& v, double gamma);
inline VectorField grad(const ScalarField& u) { return grad_gamma(u, 1.0); }
inline ScalarField div(const VectorField& v) { return div_gamma(v, 1.0); }
/// Laplacian with the derivative (Nyquist-free) wavenumbers, equal to div(grad u).
ScalarField laplacian(const ScalarField& u);

/// |D^gamma| = sqrt(-dx^2 - gamma^2 dy^2)
ScalarField dgamma_abs(const ScalarField& u, double gamma);
/// nu^{-1/2} |D^gamma| / (1 + sqrt(mu) |D^gamma|)^{1/2}
ScalarField frak_p(const ScalarField& u, const RegimeParams& p);
double frak_p_symbol(double k_gamma, const RegimeParams& p);
/// Flat Dirichlet-Neumann operator sqrt(mu)|D^gamma| tanh(sqrt(mu)|D^gamma|).
ScalarField g0(const ScalarField& psi, const RegimeParams& p);
double g0_symbol(double k_gamma, double mu);
/// -tanh(sqrt(mu)|D|)/|D| (i xi) . v, zero mode sent to zero.
ScalarField t_mu(const VectorField& v, double mu);
/// Lambda^s = (1 - Laplacian)^{s/2}
ScalarField lambda_s(const ScalarField& u, double s);
/// (1 - a Laplacian)^{-1}; requires 1 + a|k|^2 > 0 on every mode.
ScalarField helmholtz_inverse(const ScalarField& u, double a);
/// (1 - a Laplacian)
ScalarField helmholtz(const ScalarField& u, double a);

/// |Lambda^s u|_2, evaluated by Parseval on the grid.
double sobolev_norm(const ScalarField& u, double s);
double sobolev_norm(const VectorField& v, double s);
/// |zeta|_{H^s} + |frak_p psi|_{H^s}
double xtilde_seminorm(const ScalarField& zeta, const ScalarField& psi, const RegimeParams& p,
                       double s);

/// Zeroes every mode with |mode index| > n/3 along either axis (2/3 rule).
ScalarField dealias(const ScalarField& u);
VectorField dealias(const VectorField& v);
/// Exponential filter exp(-36 (|k_j|/k_j,max)^36) per axis.
ScalarField exp_filter(const ScalarField& u);
ScalarField remove_mean(const ScalarField& u);

}  // namespace wavecascade
