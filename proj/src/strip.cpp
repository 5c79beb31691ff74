#include "wavecascade/strip.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <tuple>

#include "wavecascade/errors.hpp"
#include "wavecascade/fft.hpp"
#include "wavecascade/parallel.hpp"
#include "wavecascade/spectral.hpp"

namespace wavecascade {

StripGeometry::StripGeometry(ScalarField zeta, ScalarField b, const RegimeParams& p, double h0)
    : zeta_(std::move(zeta)), b_(std::move(b)), p_(p), h0_(h0) {
    if (!(zeta_.grid() == b_.grid())) throw InvalidInput("zeta and b live on different grids");
    if (!(h0 > 0.0)) throw InvalidInput("h0 must be positive");
    if (!zeta_.all_finite() || !b_.all_finite()) throw InvalidInput("non-finite surface or bottom");
    depth_ = ScalarField(zeta_.grid(), 1.0);
    depth_.axpy(p.epsilon(), zeta_);
    depth_.axpy(-p.beta(), b_);
    const double m = depth_.min();
    if (m < h0) {
        throw DegenerateGeometry("minimum depth " + std::to_string(m) + " below h0 = " + std::to_string(h0));
    }
}

StripGeometry StripGeometry::flat(const PeriodicGrid& grid, const RegimeParams& p, double h0) {
    return StripGeometry(ScalarField(grid), ScalarField(grid), p, h0);
}

ScalarField sigma_map(const StripGeometry& geom, double z) {
    const RegimeParams& p = geom.params();
    ScalarField s(geom.grid());
    s.axpy(-p.beta() * z, geom.b());
    s.axpy(p.epsilon() * (z + 1.0), geom.zeta());
    return s;
}

namespace {

// sqrt(mu) dx sigma and gamma sqrt(mu) dy sigma at height z, given the
// horizontal gradients of zeta and b.
void scaled_sigma_gradient(const RegimeParams& p, const VectorField& gz, const VectorField& gb, double z,
                           std::vector<double>& a, std::vector<double>& c) {
    const double smu = p.sqrt_mu();
    const double cb = -p.beta() * z;
    const double cz = p.epsilon() * (z + 1.0);
    const std::size_t n = gz.x.size();
    a.resize(n);
    c.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        a[k] = smu * (cb * gb.x[k] + cz * gz.x[k]);
        c[k] = smu * (cb * gb.y[k] + cz * gz.y[k]);
    }
}

}  // namespace

std::vector<SymMatrix3> q_matrix(const StripGeometry& geom, double z) {
    const RegimeParams& p = geom.params();
    const VectorField gz = grad_gamma(geom.zeta(), p.gamma());
    const VectorField gb = grad_gamma(geom.b(), p.gamma());
    std::vector<double> a, c;
    scaled_sigma_gradient(p, gz, gb, z, a, c);
    std::vector<SymMatrix3> q(a.size());
    for (std::size_t k = 0; k < q.size(); ++k) {
        const double h = geom.depth()[k];
        if (!(h > 0.0)) throw DegenerateGeometry("1 + dz sigma <= 0");
        const double sz = h - 1.0;
        q[k] = {sz, 0.0, -a[k], sz, -c[k], (-sz + a[k] * a[k] + c[k] * c[k]) / h};
    }
    return q;
}

double coercivity_constant(const StripGeometry& geom) {
    const RegimeParams& p = geom.params();
    const VectorField gz = grad_gamma(geom.zeta(), p.gamma());
    const VectorField gb = grad_gamma(geom.b(), p.gamma());
    double sz = 0.0, gs = 0.0;
    for (std::size_t k = 0; k < gz.x.size(); ++k) {
        sz = std::max(sz, std::abs(geom.depth()[k] - 1.0));
        gs = std::max(gs, p.epsilon() * std::hypot(gz.x[k], gz.y[k]));
        gs = std::max(gs, p.beta() * std::hypot(gb.x[k], gb.y[k]));
    }
    const double t = 1.0 + p.sqrt_mu() * gs;
    return 1.0 + sz + t * t / geom.h0();
}

// Per Fourier mode: Cholesky factor of the flat interior operator and the
// flat extension profile.  Modes are keyed by (|mode_x|, j).
struct StripOperator::ModeFactors {
    int nxh = 0;
    int nyh = 0;
    std::vector<Eigen::LLT<Eigen::MatrixXd>> llt;
    std::vector<Eigen::VectorXd> extension;

    std::size_t key(const PeriodicGrid& g, int i, int j) const {
        return static_cast<std::size_t>(std::abs(g.mode_x(i))) * nyh + j;
    }
};

namespace {

struct FactorKey {
    int nx, ny, nz;
    double lx, ly, mu, gamma;
    bool operator<(const FactorKey& o) const {
        return std::tie(nx, ny, nz, lx, ly, mu, gamma) < std::tie(o.nx, o.ny, o.nz, o.lx, o.ly, o.mu, o.gamma);
    }
};

}  // namespace

// Flat operator K = mu kappa^2 W + D^T W D for every mode, factored once per
// (grid, mu, gamma, nz) and shared between operators.
std::shared_ptr<const StripOperator::ModeFactors> StripOperator::shared_mode_factors(const PeriodicGrid& g, double mu,
                                                                                     double gamma,
                                                                                     const LglRule& rule) {
    static std::mutex lock;
    static std::map<FactorKey, std::shared_ptr<const ModeFactors>> cache;
    const FactorKey fk{g.nx(), g.ny(), rule.n, g.lx(), g.ly(), mu, gamma};
    {
        std::lock_guard<std::mutex> guard(lock);
        auto it = cache.find(fk);
        if (it != cache.end()) return it->second;
    }
    const int n = rule.n;
    Eigen::MatrixXd dwd = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < n; ++k)
        for (int m = 0; m < n; ++m) {
            double s = 0.0;
            for (int l = 0; l < n; ++l) s += rule.diff(l, k) * rule.w[l] * rule.diff(l, m);
            dwd(k, m) = s;
        }
    auto f = std::make_shared<ModeFactors>();
    f->nxh = g.nx() / 2 + 1;
    f->nyh = g.nyh();
    const std::size_t nmodes = static_cast<std::size_t>(f->nxh) * f->nyh;
    f->llt.resize(nmodes);
    f->extension.resize(nmodes);
#pragma omp parallel for schedule(dynamic)
    for (std::size_t key = 0; key < nmodes; ++key) {
        const int ix = static_cast<int>(key / f->nyh);
        const int j = static_cast<int>(key % f->nyh);
        const double kx = g.kx_derivative(ix);
        const double ky = gamma * g.ky_derivative(j);
        const double kap2 = mu * (kx * kx + ky * ky);
        Eigen::MatrixXd kmat = dwd;
        for (int k = 0; k < n; ++k) kmat(k, k) += kap2 * rule.w[k];
        f->llt[key].compute(kmat.bottomRightCorner(n - 1, n - 1));
        f->extension[key] = -f->llt[key].solve(kmat.block(1, 0, n - 1, 1));
    }
    std::lock_guard<std::mutex> guard(lock);
    if (cache.size() >= 32) cache.clear();
    cache.emplace(fk, f);
    return f;
}

StripOperator::StripOperator(const StripGeometry& geom, int nz)
    : geom_(geom), rule_(make_lgl_rule(nz)), plane_(geom.grid().size()) {
    if (nz < 8) throw InvalidInput("nz must be at least 8");
    const RegimeParams& p = geom.params();
    const PeriodicGrid& g = geom.grid();
    smu_ = p.sqrt_mu();
    gsmu_ = p.gamma() * smu_;

    m11_.assign(geom.depth().values().begin(), geom.depth().values().end());
    const VectorField gz = grad_gamma(geom.zeta(), p.gamma());
    const VectorField gb = grad_gamma(geom.b(), p.gamma());
    a_.resize(size());
    c_.resize(size());
    m33_.resize(size());
    std::vector<double> a, c;
    for (int k = 0; k < nz; ++k) {
        scaled_sigma_gradient(p, gz, gb, rule_.z[k], a, c);
        const std::size_t off = k * plane_;
        for (std::size_t q = 0; q < plane_; ++q) {
            a_[off + q] = a[q];
            c_[off + q] = c[q];
            m33_[off + q] = (1.0 + a[q] * a[q] + c[q] * c[q]) / m11_[q];
        }
    }

    modes_ = shared_mode_factors(g, p.mu(), p.gamma(), rule_);
}

StripOperator::~StripOperator() = default;

void StripOperator::apply(const double* u, double* out) const {
    const PeriodicGrid& g = geom_.grid();
    const int n = rule_.n;
    const std::size_t P = plane_;
    const std::size_t ns = g.spectral_size();
    std::vector<double> fz(size());
    const Complex I{0.0, 1.0};

#pragma omp parallel
    {
        std::vector<Complex> spec(ns), sx(ns), sy(ns);
        std::vector<double> gx(P), gy(P), gzv(P), fx(P), fy(P), tmp(P);
#pragma omp for schedule(static)
        for (int k = 0; k < n; ++k) {
            const double* uk = u + k * P;
            std::fill(gzv.begin(), gzv.end(), 0.0);
            for (int m = 0; m < n; ++m) {
                const double d = rule_.diff(k, m);
                const double* um = u + m * P;
                for (std::size_t q = 0; q < P; ++q) gzv[q] += d * um[q];
            }
            fft::forward(g, uk, spec.data());
            for (int i = 0; i < g.nx(); ++i) {
                const Complex fx_ = I * (smu_ * g.kx_derivative(i));
                for (int j = 0; j < g.nyh(); ++j) {
                    const std::size_t s = static_cast<std::size_t>(i) * g.nyh() + j;
                    sx[s] = fx_ * spec[s];
                    sy[s] = I * (gsmu_ * g.ky_derivative(j)) * spec[s];
                }
            }
            fft::inverse(g, sx.data(), gx.data());
            fft::inverse(g, sy.data(), gy.data());
            const double* ak = a_.data() + k * P;
            const double* ck = c_.data() + k * P;
            const double* m33 = m33_.data() + k * P;
            double* fzk = fz.data() + k * P;
            for (std::size_t q = 0; q < P; ++q) {
                fx[q] = m11_[q] * gx[q] - ak[q] * gzv[q];
                fy[q] = m11_[q] * gy[q] - ck[q] * gzv[q];
                fzk[q] = -ak[q] * gx[q] - ck[q] * gy[q] + m33[q] * gzv[q];
            }
            fft::forward(g, fx.data(), sx.data());
            fft::forward(g, fy.data(), sy.data());
            for (int i = 0; i < g.nx(); ++i) {
                const double kx = smu_ * g.kx_derivative(i);
                for (int j = 0; j < g.nyh(); ++j) {
                    const std::size_t s = static_cast<std::size_t>(i) * g.nyh() + j;
                    spec[s] = -I * (kx * sx[s] + gsmu_ * g.ky_derivative(j) * sy[s]);
                }
            }
            fft::inverse(g, spec.data(), tmp.data());
            double* ok = out + k * P;
            const double wk = rule_.w[k];
            for (std::size_t q = 0; q < P; ++q) ok[q] = wk * tmp[q];
        }
#pragma omp for schedule(static)
        for (int k = 0; k < n; ++k) {
            double* ok = out + k * P;
            for (int m = 0; m < n; ++m) {
                const double d = rule_.diff(m, k) * rule_.w[m];
                const double* fm = fz.data() + m * P;
                for (std::size_t q = 0; q < P; ++q) ok[q] += d * fm[q];
            }
        }
    }
}

void StripOperator::apply_reference(const double* u, double* out) const {
    const PeriodicGrid& g = geom_.grid();
    const int n = rule_.n;
    const double gamma = geom_.params().gamma();
    std::vector<ScalarField> fz(n, ScalarField(g));
    for (int k = 0; k < n; ++k) {
        ScalarField uk(g, std::vector<double>(u + k * plane_, u + (k + 1) * plane_));
        const VectorField gr = grad_gamma(uk, gamma);
        ScalarField fx(g), fy(g);
        for (std::size_t q = 0; q < plane_; ++q) {
            double dz = 0.0;
            for (int m = 0; m < n; ++m) dz += rule_.diff(k, m) * u[m * plane_ + q];
            const double gx = smu_ * gr.x[q];
            const double gy = smu_ * gr.y[q];
            const std::size_t idx = k * plane_ + q;
            fx[q] = m11_[q] * gx - a_[idx] * dz;
            fy[q] = m11_[q] * gy - c_[idx] * dz;
            fz[k][q] = -a_[idx] * gx - c_[idx] * gy + m33_[idx] * dz;
        }
        const ScalarField h = div_gamma(VectorField(fx, fy), gamma);
        for (std::size_t q = 0; q < plane_; ++q) out[k * plane_ + q] = -rule_.w[k] * smu_ * h[q];
    }
    for (int k = 0; k < n; ++k)
        for (int m = 0; m < n; ++m)
            for (std::size_t q = 0; q < plane_; ++q)
                out[k * plane_ + q] += rule_.diff(m, k) * rule_.w[m] * fz[m][q];
}

void StripOperator::precondition(const double* r, double* out) const {
    const PeriodicGrid& g = geom_.grid();
    const int n = rule_.n;
    const std::size_t P = plane_;
    const std::size_t ns = g.spectral_size();
    std::vector<Complex> spec(ns * n);
#pragma omp parallel for schedule(static)
    for (int k = 1; k < n; ++k) fft::forward(g, r + k * P, spec.data() + k * ns);
#pragma omp parallel
    {
        Eigen::MatrixXd rhs(n - 1, 2);
#pragma omp for schedule(static)
        for (int i = 0; i < g.nx(); ++i) {
            for (int j = 0; j < g.nyh(); ++j) {
                const std::size_t s = static_cast<std::size_t>(i) * g.nyh() + j;
                for (int k = 1; k < n; ++k) {
                    rhs(k - 1, 0) = spec[k * ns + s].real();
                    rhs(k - 1, 1) = spec[k * ns + s].imag();
                }
                const Eigen::MatrixXd x = modes_->llt[modes_->key(g, i, j)].solve(rhs);
                for (int k = 1; k < n; ++k) spec[k * ns + s] = Complex(x(k - 1, 0), x(k - 1, 1));
            }
        }
    }
    std::fill(out, out + P, 0.0);
#pragma omp parallel for schedule(static)
    for (int k = 1; k < n; ++k) fft::inverse(g, spec.data() + k * ns, out + k * P);
}

std::vector<double> StripOperator::flat_extension(const ScalarField& psi) const {
    const PeriodicGrid& g = geom_.grid();
    const int n = rule_.n;
    const std::size_t ns = g.spectral_size();
    std::vector<double> phi(size());
    std::copy(psi.values().begin(), psi.values().end(), phi.begin());
    std::vector<Complex> top(ns);
    fft::forward(g, psi.data(), top.data());
#pragma omp parallel
    {
        std::vector<Complex> layer(ns);
#pragma omp for schedule(static)
        for (int k = 1; k < n; ++k) {
            for (int i = 0; i < g.nx(); ++i)
                for (int j = 0; j < g.nyh(); ++j) {
                    const std::size_t s = static_cast<std::size_t>(i) * g.nyh() + j;
                    layer[s] = modes_->extension[modes_->key(g, i, j)](k - 1) * top[s];
                }
            fft::inverse(g, layer.data(), phi.data() + k * plane_);
        }
    }
    return phi;
}

std::vector<double> StripOperator::solve(const ScalarField& psi, double tol, int maxiter, SolveInfo* info) const {
    if (!(psi.grid() == geom_.grid())) throw InvalidInput("psi lives on a different grid");
    const std::size_t N = size();
    std::vector<double> phi = flat_extension(psi);
    std::vector<double> r(N), z(N), p(N), ap(N), x(N, 0.0);
    apply(phi.data(), ap.data());
    const double scale = std::sqrt(chunked_dot(ap, ap));
    for (std::size_t q = 0; q < N; ++q) r[q] = q < plane_ ? 0.0 : -ap[q];
    double rnorm = std::sqrt(chunked_dot(r, r));
    SolveInfo local;
    local.residual = scale > 0.0 ? rnorm / scale : 0.0;
    if (rnorm <= tol * scale) {
        if (info) *info = local;
        return phi;
    }
    precondition(r.data(), z.data());
    p = z;
    double rz = chunked_dot(r, z);
    for (int it = 1; it <= maxiter; ++it) {
        apply(p.data(), ap.data());
        std::fill(ap.begin(), ap.begin() + plane_, 0.0);
        const double alpha = rz / chunked_dot(p, ap);
#pragma omp parallel for schedule(static)
        for (std::size_t q = 0; q < N; ++q) {
            x[q] += alpha * p[q];
            r[q] -= alpha * ap[q];
        }
        rnorm = std::sqrt(chunked_dot(r, r));
        local.iterations = it;
        local.residual = rnorm / scale;
        if (!std::isfinite(rnorm)) break;
        if (rnorm <= tol * scale) {
            for (std::size_t q = 0; q < N; ++q) phi[q] += x[q];
            if (info) *info = local;
            return phi;
        }
        precondition(r.data(), z.data());
        const double rz_new = chunked_dot(r, z);
        const double beta = rz_new / rz;
        rz = rz_new;
#pragma omp parallel for schedule(static)
        for (std::size_t q = 0; q < N; ++q) p[q] = z[q] + beta * p[q];
    }
    if (info) *info = local;
    throw SolverFailure("strip CG did not converge (relative residual " + std::to_string(local.residual) + ")",
                        local.residual, local.iterations);
}

ScalarField StripOperator::surface_flux(const std::vector<double>& phi) const {
    std::vector<double> out(size());
    apply(phi.data(), out.data());
    out.resize(plane_);
    return ScalarField(geom_.grid(), std::move(out));
}

}  // namespace wavecascade
