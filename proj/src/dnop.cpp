#include "wavecascade/dnop.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "wavecascade/errors.hpp"
#include "wavecascade/spectral.hpp"

namespace wavecascade {

DnBackend DnBackend::elliptic(int nz, double cg_tol, int cg_maxiter) {
    DnBackend b;
    b.kind = Kind::elliptic;
    b.elliptic_opts = {nz, cg_tol, cg_maxiter};
    return b;
}

DnBackend DnBackend::shallow1() {
    DnBackend b;
    b.kind = Kind::shallow1;
    return b;
}

DnBackend DnBackend::shallow2() {
    DnBackend b;
    b.kind = Kind::shallow2;
    return b;
}

DnBackend DnBackend::small_amplitude(int order) {
    DnBackend b;
    b.kind = Kind::small_amplitude;
    b.order = order;
    return b;
}

void DnBackend::validate() const {
    if (kind == Kind::elliptic) {
        if (!(elliptic_opts.cg_tol > 0.0 && elliptic_opts.cg_tol <= 1e-4)) {
            throw InvalidInput("cg_tol must lie in (0, 1e-4]");
        }
        if (elliptic_opts.nz < 8) throw InvalidInput("nz must be at least 8");
        if (elliptic_opts.cg_maxiter < 1) throw InvalidInput("cg_maxiter must be positive");
    }
    if (kind == Kind::small_amplitude && (order < 1 || order > 8)) {
        throw UnsupportedRegime("small-amplitude order must lie in [1, 8]");
    }
}

std::string to_string(const DnBackend& b) {
    switch (b.kind) {
        case DnBackend::Kind::elliptic: return "elliptic";
        case DnBackend::Kind::shallow1: return "shallow1";
        case DnBackend::Kind::shallow2: return "shallow2";
        case DnBackend::Kind::small_amplitude: return "small_amplitude:" + std::to_string(b.order);
    }
    return "elliptic";
}

DnBackend parse_dn_backend(const std::string& name) {
    if (name == "elliptic") return DnBackend::elliptic();
    if (name == "shallow1") return DnBackend::shallow1();
    if (name == "shallow2") return DnBackend::shallow2();
    const std::string prefix = "small_amplitude:";
    if (name.rfind(prefix, 0) == 0) {
        try {
            std::size_t used = 0;
            const int n = std::stoi(name.substr(prefix.size()), &used);
            if (used == name.size() - prefix.size()) return DnBackend::small_amplitude(n);
        } catch (const std::exception&) {
        }
    }
    throw ConfigError("unknown DN backend '" + name + "'");
}

ScalarField dn_elliptic(const StripGeometry& geom, const ScalarField& psi, const EllipticOptions& opts,
                        SolveInfo* info) {
    const StripOperator op(geom, opts.nz);
    const auto phi = op.solve(remove_mean(psi), opts.cg_tol, opts.cg_maxiter, info);
    return remove_mean(op.surface_flux(phi));
}

namespace {

void require_isotropic(const StripGeometry& geom) {
    if (geom.params().gamma() != 1.0) throw UnsupportedRegime("shallow expansions are stated for gamma = 1");
}

}  // namespace

ScalarField dn_shallow1(const StripGeometry& geom, const ScalarField& psi) {
    require_isotropic(geom);
    const double mu = geom.params().mu();
    return -mu * div(geom.depth() * grad(psi));
}

ScalarField dn_shallow2(const StripGeometry& geom, const ScalarField& psi) {
    require_isotropic(geom);
    const RegimeParams& p = geom.params();
    const ScalarField bb = p.beta() * geom.b();
    const VectorField gp = grad(psi);
    ScalarField out = -p.mu() * div(geom.depth() * gp);
    out.axpy(p.mu() * p.mu(), div(t_operator(geom.depth(), bb, gp)));
    return out;
}

VectorField t_operator(const ScalarField& h, const ScalarField& b, const VectorField& v) {
    const ScalarField h2 = h * h;
    const ScalarField h3 = h2 * h;
    const ScalarField dv = div(v);
    const VectorField gb = grad(b);
    const ScalarField gbv = dot(gb, v);
    VectorField out = (-1.0 / 3.0) * grad(h3 * dv);
    out.axpy(0.5, grad(h2 * gbv));
    out.axpy(-0.5, (h2 * dv) * gb);
    out += (h * gbv) * gb;
    return out;
}

namespace {

// Taylor coefficients G_0..G_n[f] of t -> G[eps t zeta] f.
class SmallAmplitudeSeries {
public:
    SmallAmplitudeSeries(const StripGeometry& geom, std::function<ScalarField(const ScalarField&)> g0)
        : geom_(geom), g0_(std::move(g0)) {
        const RegimeParams& p = geom.params();
        grad_zeta_ = grad_gamma(geom.zeta(), p.gamma());
        q_ = dot(grad_zeta_, grad_zeta_);
    }

    std::vector<ScalarField> coefficients(const ScalarField& f, int n) const {
        const RegimeParams& p = geom_.params();
        const double eps = p.epsilon();
        const double mu = p.mu();
        const double gamma = p.gamma();
        const ScalarField& zeta = geom_.zeta();
        const VectorField gf = grad_gamma(f, gamma);

        std::vector<ScalarField> g{g0_(f)};
        std::vector<ScalarField> z;
        for (int j = 0; j < n; ++j) {
            ScalarField zj = g[j];
            if (j == 1) zj.axpy(eps * mu, dot(grad_zeta_, gf));
            if (j >= 2) zj.axpy(-eps * eps * mu, q_ * z[j - 2]);
            z.push_back(std::move(zj));

            VectorField vj(f.grid());
            if (j == 0) vj = gf;
            if (j >= 1) vj.axpy(-eps, z[j - 1] * grad_zeta_);

            ScalarField next = -eps * mu * div_gamma(zeta * vj, gamma);
            for (int k = 0; k <= j; ++k) {
                const ScalarField arg = zeta * z[j - k];
                const ScalarField gk = k == 0 ? g0_(arg) : coefficients(arg, k).back();
                next.axpy(-eps, gk);
            }
            next *= 1.0 / (j + 1);
            g.push_back(std::move(next));
        }
        return g;
    }

private:
    const StripGeometry& geom_;
    std::function<ScalarField(const ScalarField&)> g0_;
    VectorField grad_zeta_;
    ScalarField q_;
};

}  // namespace

ScalarField dn_small_amplitude(const StripGeometry& geom, const ScalarField& psi, int order) {
    if (order < 1 || order > 8) throw UnsupportedRegime("small-amplitude order must lie in [1, 8]");
    const RegimeParams& p = geom.params();
    if (order > 1 && p.beta() != 0.0) {
        throw UnsupportedRegime("small-amplitude orders above 1 need a flat bottom");
    }
    std::function<ScalarField(const ScalarField&)> base;
    if (p.beta() == 0.0) {
        base = [p](const ScalarField& f) { return g0(f, p); };
    } else {
        const StripGeometry bottom(ScalarField(geom.grid()), geom.b(), p, geom.h0());
        base = [bottom](const ScalarField& f) { return dn_elliptic(bottom, f); };
    }
    const SmallAmplitudeSeries series(geom, base);
    const auto g = series.coefficients(remove_mean(psi), order);
    ScalarField out(geom.grid());
    for (const auto& term : g) out += term;
    return remove_mean(out);
}

ScalarField dn_apply(const StripGeometry& geom, const ScalarField& psi, const DnBackend& backend, SolveInfo* info) {
    backend.validate();
    if (!(psi.grid() == geom.grid())) throw InvalidInput("psi lives on a different grid");
    switch (backend.kind) {
        case DnBackend::Kind::elliptic: return dn_elliptic(geom, psi, backend.elliptic_opts, info);
        case DnBackend::Kind::shallow1: return dn_shallow1(geom, remove_mean(psi));
        case DnBackend::Kind::shallow2: return dn_shallow2(geom, remove_mean(psi));
        case DnBackend::Kind::small_amplitude: return dn_small_amplitude(geom, psi, backend.order);
    }
    throw InvalidInput("unknown DN backend");
}

ScalarField z_operator(const StripGeometry& geom, const ScalarField& psi, const DnBackend& backend) {
    const RegimeParams& p = geom.params();
    const double eps = p.epsilon();
    const double mu = p.mu();
    const VectorField gz = grad_gamma(geom.zeta(), p.gamma());
    const VectorField gp = grad_gamma(psi, p.gamma());
    ScalarField num = dn_apply(geom, psi, backend);
    num.axpy(eps * mu, dot(gz, gp));
    const ScalarField den = map(dot(gz, gz), [&](double q) { return 1.0 + eps * eps * mu * q; });
    return num / den;
}

ScalarField dn_shape_derivative(const StripGeometry& geom, const ScalarField& psi, const ScalarField& h,
                                const DnBackend& backend) {
    const RegimeParams& p = geom.params();
    const double eps = p.epsilon();
    const ScalarField z = z_operator(geom, psi, backend);
    VectorField v = grad_gamma(psi, p.gamma());
    v.axpy(-eps, z * grad_gamma(geom.zeta(), p.gamma()));
    ScalarField out = -eps * dn_apply(geom, h * z, backend);
    out.axpy(-eps * p.mu(), div_gamma(h * v, p.gamma()));
    return out;
}

TaylorCheckResult taylor_check(const StripGeometry& geom, const ScalarField& psi0, const DnBackend& backend) {
    backend.validate();
    const RegimeParams& p = geom.params();
    TaylorCheckResult r;
    r.depth_margin = geom.min_depth() - geom.h0();
    const double coef = p.epsilon() * p.epsilon() * p.beta() * p.mu();
    double worst = 0.0;
    if (coef > 0.0 && geom.b().max_abs() > 0.0) {
        const EllipticOptions opts = backend.kind == DnBackend::Kind::elliptic ? backend.elliptic_opts
                                                                               : EllipticOptions{};
        const StripOperator op(geom, opts.nz);
        const auto phi = op.solve(remove_mean(psi0), opts.cg_tol, opts.cg_maxiter);
        const int n = op.nz();
        const std::size_t P = op.plane_size();
        const PeriodicGrid& g = geom.grid();
        ScalarField bottom(g, std::vector<double>(phi.end() - static_cast<std::ptrdiff_t>(P), phi.end()));
        ScalarField phiz(g);
        for (int m = 0; m < n; ++m) {
            const double d = op.rule().diff(n - 1, m);
            for (std::size_t q = 0; q < P; ++q) phiz[q] += d * phi[m * P + q];
        }
        const VectorField gb = grad(geom.b());
        VectorField w = grad(bottom);
        w.axpy(-p.beta(), (phiz / geom.depth()) * gb);
        const ScalarField bx = dx(geom.b());
        const ScalarField bxx = dx(bx);
        const ScalarField bxy = dy(bx);
        const ScalarField byy = dy(dy(geom.b()));
        const double g2 = p.gamma() * p.gamma();
        worst = -std::numeric_limits<double>::infinity();
        for (std::size_t q = 0; q < P; ++q) {
            const double wx = w.x[q], wy = w.y[q];
            const double form = bxx[q] * wx * wx + 2.0 * g2 * bxy[q] * wx * wy + g2 * g2 * byy[q] * wy * wy;
            worst = std::max(worst, -coef * form);
        }
    }
    r.hessian_margin = 1.0 - worst;
    r.passes = r.hessian_margin > 0.0 && r.depth_margin > 0.0;
    return r;
}

}  // namespace wavecascade
