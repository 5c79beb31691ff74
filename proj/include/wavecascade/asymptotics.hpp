#pragma once

#include <vector>

#include "wavecascade/grid.hpp"
#include "wavecascade/params.hpp"

namespace wavecascade {

/// (zeta, V) unknowns of the shallow-water, Green-Naghdi, Boussinesq and
/// full-dispersion models.
struct HyperbolicState {
    ScalarField zeta;
    VectorField v;
    double time = 0.0;

    HyperbolicState& axpy(double a, const HyperbolicState& o);
};

using ModelTrajectory = std::vector<HyperbolicState>;

struct ModelRunOptions {
    double dt = 1e-2;
    double t_end = 0.0;
    int snapshot_stride = 1;
    bool dealias = true;
};

// ---- shallow water --------------------------------------------------------

/// dt V = -grad zeta - 1/2 grad|V|^2,  dt zeta = -div((1 + zeta - b) V)
HyperbolicState sw_rhs(const HyperbolicState& s, const ScalarField& b, bool dealias = true);
ModelTrajectory sw_integrate(const HyperbolicState& s0, const ScalarField& b, const ModelRunOptions& opt);
/// V = grad psi
HyperbolicState sw_initial(const ScalarField& zeta0, const ScalarField& psi0);

// ---- Green-Naghdi / Serre -------------------------------------------------

/// D_V f = -(V.grad) f + div(V) f
ScalarField d_operator(const VectorField& v, const ScalarField& f);
/// Q[h,b](V) = 1/2 grad(h^2 (V.grad)^2 b) + h (h/2 D_V div V + (V.grad)^2 b) grad b
VectorField q_form(const ScalarField& h, const ScalarField& b, const VectorField& v);
/// (h + mu T[h, b]) w
VectorField gn_operator(const ScalarField& h, const ScalarField& b, double mu, const VectorField& w);

struct GnOptions {
    double cg_tol = 1e-10;
    int cg_maxiter = 400;
};

/// Stateful right-hand side: keeps the last dt V as CG warm start.
class GnRhs {
public:
    GnRhs(ScalarField b, const RegimeParams& p, GnOptions opt = {}, bool dealias = true);
    HyperbolicState operator()(const HyperbolicState& s);
    int last_iterations() const { return last_iters_; }

private:
    ScalarField b_;
    RegimeParams p_;
    GnOptions opt_;
    bool dealias_;
    VectorField guess_;
    int last_iters_ = 0;
};

/// Preconditioned CG for (h + mu T[h,b]) w = rhs.  Throws SolverFailure.
VectorField gn_solve(const ScalarField& h, const ScalarField& b, double mu, const VectorField& rhs,
                     const VectorField* guess, const GnOptions& opt, int* iterations = nullptr);

ModelTrajectory gn_integrate(const HyperbolicState& s0, const ScalarField& b, const RegimeParams& p,
                             const ModelRunOptions& opt, const GnOptions& gn = {});
/// V0 = (1 - (mu/h0) T[h0, eps b]) grad psi0
VectorField gn_initial_velocity(const ScalarField& zeta0, const ScalarField& psi0, const ScalarField& b,
                                const RegimeParams& p);
/// grad psi ~ (1 + (mu/h) T[h, eps b]) V
VectorField gn_reconstruct(const HyperbolicState& s, const ScalarField& b, const RegimeParams& p);

// ---- Boussinesq -----------------------------------------------------------

struct BoussinesqCoeffs {
    double theta = 1.0;
    double p1 = 1.0;
    double p2 = 0.0;
    double a1 = 1.0 / 3.0;
    double a2 = 0.0;
    double a3 = 0.0;
    double a4 = 0.0;

    /// Throws InvalidInput for theta outside [0,1]; evolution also needs a2, a4 >= 0.
    static BoussinesqCoeffs make(double theta, double p1, double p2);
    bool evolvable() const { return a2 >= 0.0 && a4 >= 0.0; }
    /// a2 = 0 or a4 = 0: no smoothing on that equation, stability not guaranteed.
    bool unsmoothed() const { return a2 == 0.0 || a4 == 0.0; }
};

HyperbolicState boussinesq_rhs(const HyperbolicState& s, const ScalarField& b, const BoussinesqCoeffs& c, double eps,
                               bool dealias = true);
/// Throws InvalidInput when a2 < 0 or a4 < 0.
ModelTrajectory boussinesq_integrate(const HyperbolicState& s0, const ScalarField& b, const BoussinesqCoeffs& c,
                                     double eps, const ModelRunOptions& opt);
/// V0 = (1 + eps/2 (zeta0 - b)) (1 - eps/2 (1 - theta^2) Lap)^{-1} grad psi0
HyperbolicState boussinesq_initial(const ScalarField& zeta0, const ScalarField& psi0, const ScalarField& b, double eps,
                                   double theta);
/// V_app = (1 - eps/2 (1 - theta^2) Lap) [(1 - eps/2 (zeta - b)) V]
HyperbolicState boussinesq_reconstruct(const HyperbolicState& s, const ScalarField& b, double eps, double theta);

// ---- KP ---------------------------------------------------------------------

/// Counter-propagating pair in the slow variables (tau, Y, X).
struct KpPairState {
    ScalarField plus;
    ScalarField minus;
    double tau = 0.0;
};

/// Removes the modes with zero X-wavenumber and nonzero Y-wavenumber.
ScalarField kp_project(const ScalarField& u);
/// zeta_pm = (zeta0 +- dx psi0)/2, projected.
KpPairState kp_initial(const ScalarField& zeta0, const ScalarField& psi0);
/// Integrating-factor RK4 for
/// dtau z +- 1/2 dX^{-1} dY^2 z +- 1/6 dX^3 z +- 3/2 z dX z = 0.
std::vector<KpPairState> kp_integrate(const KpPairState& s0, double tau_end, double dtau, int stride = 1);
/// One equation of the pair; sign = +1 or -1.
ScalarField kp_evolve(const ScalarField& z0, int sign, double tau_end, double dtau);
/// zeta(t, x, y) = zeta_+(eps t, y, x - t) + zeta_-(eps t, y, x + t), where
/// the pair is given at tau = eps t.
ScalarField kp_reconstruct(const KpPairState& pair, double t);
/// zeta_+ - zeta_- at the same shifts, the matching approximation of dx psi.
ScalarField kp_reconstruct_dxpsi(const KpPairState& pair, double t);
/// 2c sech^2(sqrt(6c)/2 (X - X0 - c tau)), the KdV solitary wave of the + equation.
double kdv_soliton(double x, double c, double tau, double x0);

// ---- full dispersion ----------------------------------------------------------

/// dt zeta = T_mu V - e (T_mu(zeta grad T_mu V) + div(zeta V)),
/// dt V = -grad zeta - e (1/2 grad|V|^2 - grad zeta T_mu grad zeta), e = eps sqrt(mu).
HyperbolicState fd_rhs(const HyperbolicState& s, const RegimeParams& p, bool dealias = true);
/// Requires beta = 0, gamma = 1, mu >= 1 (UnsupportedRegime otherwise).
ModelTrajectory fd_integrate(const HyperbolicState& s0, const RegimeParams& p, const ModelRunOptions& opt);
/// V0 = grad psi0 - e (T_mu grad psi0) grad zeta0
HyperbolicState fd_initial(const ScalarField& zeta0, const ScalarField& psi0, const RegimeParams& p);

// ---- linear symbols -------------------------------------------------------

double sw_linear_frequency(double k);
double gn_linear_frequency(double k, double mu);
double fd_linear_frequency(double k, double mu);

}  // namespace wavecascade
