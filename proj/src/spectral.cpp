#include "wavecascade/spectral.hpp"

#include <cmath>

#include "wavecascade/errors.hpp"

namespace wavecascade {

namespace {

const Complex kI{0.0, 1.0};

}  // namespace

ScalarField dx(const ScalarField& u) {
    const PeriodicGrid& g = u.grid();
    Spectrum s = forward(u);
    for (int i = 0; i < g.nx(); ++i) {
        const Complex f = kI * g.kx_derivative(i);
        for (int j = 0; j < g.nyh(); ++j) s.at(i, j) *= f;
    }
    return inverse(s);
}

ScalarField dy(const ScalarField& u) {
    const PeriodicGrid& g = u.grid();
    Spectrum s = forward(u);
    for (int i = 0; i < g.nx(); ++i) {
        for (int j = 0; j < g.nyh(); ++j) s.at(i, j) *= kI * g.ky_derivative(j);
    }
    return inverse(s);
}

VectorField grad_gamma(const ScalarField& u, double gamma) {
    const PeriodicGrid& g = u.grid();
    const Spectrum s = forward(u);
    Spectrum sx(g), sy(g);
    for (int i = 0; i < g.nx(); ++i) {
        const double kx = g.kx_derivative(i);
        for (int j = 0; j < g.nyh(); ++j) {
            sx.at(i, j) = kI * kx * s.at(i, j);
            sy.at(i, j) = kI * (gamma * g.ky_derivative(j)) * s.at(i, j);
        }
    }
    return VectorField(inverse(sx), inverse(sy));
}

ScalarField div_gamma(const VectorField& v, double gamma) {
    const PeriodicGrid& g = v.grid();
    const Spectrum sx = forward(v.x);
    const Spectrum sy = forward(v.y);
    Spectrum out(g);
    for (int i = 0; i < g.nx(); ++i) {
        const double kx = g.kx_derivative(i);
        for (int j = 0; j < g.nyh(); ++j) {
            out.at(i, j) = kI * (kx * sx.at(i, j) + gamma * g.ky_derivative(j) * sy.at(i, j));
        }
    }
    return inverse(out);
}

ScalarField laplacian(const ScalarField& u) {
    const PeriodicGrid& g = u.grid();
    Spectrum s = forward(u);
    for (int i = 0; i < g.nx(); ++i) {
        const double kx = g.kx_derivative(i);
        for (int j = 0; j < g.nyh(); ++j) {
            const double ky = g.ky_derivative(j);
            s.at(i, j) *= -(kx * kx + ky * ky);
        }
    }
    return inverse(s);
}

ScalarField dgamma_abs(const ScalarField& u, double gamma) {
    return apply_symbol(u, [gamma](double kx, double ky) { return std::hypot(kx, gamma * ky); });
}

double frak_p_symbol(double k_gamma, const RegimeParams& p) {
    return k_gamma / std::sqrt(p.nu() * (1.0 + p.sqrt_mu() * k_gamma));
}

ScalarField frak_p(const ScalarField& u, const RegimeParams& p) {
    const double gamma = p.gamma();
    return apply_symbol(u, [&](double kx, double ky) { return frak_p_symbol(std::hypot(kx, gamma * ky), p); });
}

double g0_symbol(double k_gamma, double mu) {
    const double a = std::sqrt(mu) * k_gamma;
    return a * std::tanh(a);
}

ScalarField g0(const ScalarField& psi, const RegimeParams& p) {
    const double gamma = p.gamma();
    const double mu = p.mu();
    return apply_symbol(psi, [&](double kx, double ky) { return g0_symbol(std::hypot(kx, gamma * ky), mu); });
}

ScalarField t_mu(const VectorField& v, double mu) {
    const PeriodicGrid& g = v.grid();
    const Spectrum sx = forward(v.x);
    const Spectrum sy = forward(v.y);
    Spectrum out(g);
    const double smu = std::sqrt(mu);
    for (int i = 0; i < g.nx(); ++i) {
        for (int j = 0; j < g.nyh(); ++j) {
            const double k = std::hypot(g.kx(i), g.ky(j));
            if (k == 0.0) {
                out.at(i, j) = 0.0;
                continue;
            }
            const double m = -std::tanh(smu * k) / k;
            out.at(i, j) = m * kI * (g.kx_derivative(i) * sx.at(i, j) + g.ky_derivative(j) * sy.at(i, j));
        }
    }
    return inverse(out);
}

ScalarField lambda_s(const ScalarField& u, double s) {
    return apply_symbol(u, [s](double kx, double ky) { return std::pow(1.0 + kx * kx + ky * ky, 0.5 * s); });
}

ScalarField helmholtz_inverse(const ScalarField& u, double a) {
    return apply_symbol(u, [a](double kx, double ky) {
        const double d = 1.0 + a * (kx * kx + ky * ky);
        if (!(d > 0.0)) throw InvalidInput("(1 - a Laplacian) is not invertible on this grid");
        return 1.0 / d;
    });
}

ScalarField helmholtz(const ScalarField& u, double a) {
    return apply_symbol(u, [a](double kx, double ky) { return 1.0 + a * (kx * kx + ky * ky); });
}

double sobolev_norm(const ScalarField& u, double s) {
    const PeriodicGrid& g = u.grid();
    const Spectrum sp = forward(u);
    double acc = 0.0;
    for (int i = 0; i < g.nx(); ++i) {
        const double kx = g.kx(i);
        for (int j = 0; j < g.nyh(); ++j) {
            const double ky = g.ky(j);
            const double w = s == 0.0 ? 1.0 : std::pow(1.0 + kx * kx + ky * ky, s);
            acc += g.column_weight(j) * w * std::norm(sp.at(i, j));
        }
    }
    const double n = static_cast<double>(g.size());
    return std::sqrt(acc * g.cell_area() / n);
}

double sobolev_norm(const VectorField& v, double s) {
    return std::hypot(sobolev_norm(v.x, s), sobolev_norm(v.y, s));
}

double xtilde_seminorm(const ScalarField& zeta, const ScalarField& psi, const RegimeParams& p, double s) {
    return sobolev_norm(zeta, s) + sobolev_norm(frak_p(psi, p), s);
}

ScalarField dealias(const ScalarField& u) {
    const PeriodicGrid& g = u.grid();
    Spectrum s = forward(u);
    const int cx = g.nx() / 3;
    const int cy = g.ny() / 3;
    for (int i = 0; i < g.nx(); ++i) {
        const bool cut_x = std::abs(g.mode_x(i)) > cx;
        for (int j = 0; j < g.nyh(); ++j) {
            if (cut_x || j > cy) s.at(i, j) = 0.0;
        }
    }
    return inverse(s);
}

VectorField dealias(const VectorField& v) { return VectorField(dealias(v.x), dealias(v.y)); }

ScalarField exp_filter(const ScalarField& u) {
    const PeriodicGrid& g = u.grid();
    const double kxm = g.nx() / 2.0;
    const double kym = g.ny() / 2.0;
    Spectrum s = forward(u);
    for (int i = 0; i < g.nx(); ++i) {
        const double fx = std::exp(-36.0 * std::pow(std::abs(g.mode_x(i)) / kxm, 36));
        for (int j = 0; j < g.nyh(); ++j) s.at(i, j) *= fx * std::exp(-36.0 * std::pow(j / kym, 36));
    }
    return inverse(s);
}

ScalarField remove_mean(const ScalarField& u) {
    ScalarField out = u;
    out += -u.mean();
    return out;
}

}  // namespace wavecascade
