#pragma once

#include <array>
#include <memory>
#include <vector>

#include "wavecascade/grid.hpp"
#include "wavecascade/lgl.hpp"
#include "wavecascade/params.hpp"

namespace wavecascade {

/// Surface, bottom and regime defining the fluid strip.
///
/// Construction enforces min(1 + eps*zeta - beta*b) >= h0.
class StripGeometry {
public:
    static constexpr double kDefaultH0 = 0.1;

    StripGeometry(ScalarField zeta, ScalarField b, const RegimeParams& p, double h0 = kDefaultH0);
    /// zeta = b = 0.
    static StripGeometry flat(const PeriodicGrid& grid, const RegimeParams& p, double h0 = kDefaultH0);

    const PeriodicGrid& grid() const { return zeta_.grid(); }
    const ScalarField& zeta() const { return zeta_; }
    const ScalarField& b() const { return b_; }
    const RegimeParams& params() const { return p_; }
    double h0() const { return h0_; }
    /// 1 + eps*zeta - beta*b, which is also 1 + dz sigma.
    const ScalarField& depth() const { return depth_; }
    double min_depth() const { return depth_.min(); }

private:
    ScalarField zeta_;
    ScalarField b_;
    RegimeParams p_;
    double h0_;
    ScalarField depth_;
};

/// sigma(X, z) = -beta z b + eps (z + 1) zeta
ScalarField sigma_map(const StripGeometry& geom, double z);

/// Upper triangle (q11, q12, q13, q22, q23, q33) of Q[sigma] at one node.
using SymMatrix3 = std::array<double, 6>;

/// Q[sigma] at height z on every node.  Throws DegenerateGeometry if 1 + dz sigma <= 0.
std::vector<SymMatrix3> q_matrix(const StripGeometry& geom, double z);

/// k[sigma] = 1 + |dz sigma|_inf + (1/h0)(1 + sqrt(mu)|grad^gamma sigma|_inf)^2
double coercivity_constant(const StripGeometry& geom);

struct EllipticOptions {
    int nz = 24;
    double cg_tol = 1e-10;
    int cg_maxiter = 500;
};

struct SolveInfo {
    int iterations = 0;
    double residual = 0.0;
};

/// Discrete variational operator A = D^T W (1 + Q) D of the straightened
/// Laplace problem.  Fourier in X, Legendre-Gauss-Lobatto in z.
///
/// Strip vectors hold nz planes of grid.size() values; plane 0 is the
/// surface z = 0 and plane nz-1 the bottom.  The surface row of A applied to
/// the harmonic extension is the Dirichlet-Neumann flux.
class StripOperator {
public:
    StripOperator(const StripGeometry& geom, int nz);
    ~StripOperator();
    StripOperator(const StripOperator&) = delete;
    StripOperator& operator=(const StripOperator&) = delete;

    int nz() const { return rule_.n; }
    std::size_t plane_size() const { return plane_; }
    std::size_t size() const { return plane_ * rule_.n; }
    const LglRule& rule() const { return rule_; }
    const StripGeometry& geometry() const { return geom_; }

    /// out = A u, OpenMP over planes.
    void apply(const double* u, double* out) const;
    /// out = A u, straightforward serial evaluation (test reference).
    void apply_reference(const double* u, double* out) const;
    /// Solves the flat-strip (Q = 0) problem on planes 1..nz-1 with zero
    /// surface data; plane 0 of out is zero.
    void precondition(const double* r, double* out) const;
    /// Discrete flat-strip harmonic extension of psi (plane 0 equals psi).
    std::vector<double> flat_extension(const ScalarField& psi) const;

    /// Harmonic extension phi of psi: A phi = 0 on planes 1..nz-1.
    /// Preconditioned CG on the correction to the flat extension.
    /// Throws SolverFailure when maxiter is reached.
    std::vector<double> solve(const ScalarField& psi, double tol, int maxiter,
                              SolveInfo* info = nullptr) const;
    /// Plane 0 of A phi.
    ScalarField surface_flux(const std::vector<double>& phi) const;

private:
    struct ModeFactors;
    static std::shared_ptr<const ModeFactors> shared_mode_factors(const PeriodicGrid& g, double mu, double gamma,
                                                                  const LglRule& rule);

    StripGeometry geom_;
    LglRule rule_;
    std::size_t plane_;
    double smu_;
    double gsmu_;
    std::vector<double> m11_;
    std::vector<double> a_;
    std::vector<double> c_;
    std::vector<double> m33_;
    std::shared_ptr<const ModeFactors> modes_;
};

}  // namespace wavecascade
