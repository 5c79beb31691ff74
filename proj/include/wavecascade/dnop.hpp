#pragma once

#include <string>

#include "wavecascade/grid.hpp"
#include "wavecascade/strip.hpp"

namespace wavecascade {

/// How the Dirichlet-Neumann operator is evaluated.
struct DnBackend {
    enum class Kind { elliptic, shallow1, shallow2, small_amplitude };

    Kind kind = Kind::elliptic;
    EllipticOptions elliptic_opts{};
    int order = 1;

    static DnBackend elliptic(int nz = 24, double cg_tol = 1e-10, int cg_maxiter = 500);
    static DnBackend shallow1();
    static DnBackend shallow2();
    static DnBackend small_amplitude(int order);

    /// Throws InvalidInput for cg_tol outside (0, 1e-4] or nz < 8,
    /// UnsupportedRegime for an expansion order outside [1, 8].
    void validate() const;
};

std::string to_string(const DnBackend& b);
/// "elliptic", "shallow1", "shallow2", "small_amplitude:<n>"
DnBackend parse_dn_backend(const std::string& name);

/// G[eps zeta, beta b] psi.  The mean of psi is removed first and the result
/// has zero mean.
ScalarField dn_apply(const StripGeometry& geom, const ScalarField& psi, const DnBackend& backend,
                     SolveInfo* info = nullptr);

ScalarField dn_elliptic(const StripGeometry& geom, const ScalarField& psi, const EllipticOptions& opts = {},
                        SolveInfo* info = nullptr);

/// -mu div(h grad psi), h = 1 + eps zeta - beta b.  Requires gamma = 1.
ScalarField dn_shallow1(const StripGeometry& geom, const ScalarField& psi);
/// dn_shallow1 + mu^2 div(T[h, beta b] grad psi).  Requires gamma = 1.
ScalarField dn_shallow2(const StripGeometry& geom, const ScalarField& psi);

/// T[h,b]V = -1/3 grad(h^3 div V) + 1/2 [grad(h^2 grad b.V) - h^2 grad b div V] + h grad b (grad b.V)
VectorField t_operator(const ScalarField& h, const ScalarField& b, const VectorField& v);

/// (G psi + eps mu grad^g zeta . grad^g psi) / (1 + eps^2 mu |grad^g zeta|^2)
ScalarField z_operator(const StripGeometry& geom, const ScalarField& psi, const DnBackend& backend);

/// dG.h = -eps G(h Z) - eps mu div^g(h (grad^g psi - eps Z grad^g zeta))
ScalarField dn_shape_derivative(const StripGeometry& geom, const ScalarField& psi, const ScalarField& h,
                                const DnBackend& backend);

/// Taylor polynomial of order n of G[eps t zeta] psi at t = 1, generated by
/// differentiating the shape-derivative formula along the ray t zeta.
/// n > 1 requires beta = 0.
ScalarField dn_small_amplitude(const StripGeometry& geom, const ScalarField& psi, int order);

struct TaylorCheckResult {
    bool passes = false;
    double hessian_margin = 1.0;
    double depth_margin = 0.0;
};

/// Sufficient Taylor-sign check: depth above h0 and
/// -eps^2 beta mu W.H W <= 1 with W the bottom horizontal velocity.
TaylorCheckResult taylor_check(const StripGeometry& geom, const ScalarField& psi0, const DnBackend& backend);

}  // namespace wavecascade
