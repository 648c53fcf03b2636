#pragma once

// Nonlinear engine: Newton correction for the disc-on-torus boundary value
// problem, homotopy continuation in the structure parameter, the
// higher-dimension solver with free torus radii, Levi-flat foliation sweeps,
// bubbling diagnostics, and the non-squeezing demonstration.

#include <jdisc/calculus.hpp>
#include <jdisc/disc_function.hpp>
#include <jdisc/matrix_field.hpp>
#include <jdisc/rh_linear.hpp>
#include <jdisc/torus.hpp>

#include <string>
#include <vector>

namespace jdisc {

struct DiscCertificate {
  double cr_residual = 0.0;
  double boundary_residual = 0.0;
  double normalization_residual = 0.0;
  double area = 0.0;
  double energy = 0.0;
  double min_w = 0.0;  // min over boundary samples and components j >= 2
  std::vector<int> windings;
  int maslov = 0;
};

struct DiscSolution {
  DiscFunction z;
  DiscCertificate cert;
};

/// Build the certificate of a disc against a field, torus and normalization.
DiscCertificate certify(const DiscFunction& z, const MatrixField& a,
                        const TorusSpec& torus,
                        const std::vector<PointConstraint>& normalization);

/// Normalization of the two-dimensional family: z(0) = 0, f(1) = p with the
/// radial parts carried by the boundary condition (phase rows at zeta = 1).
std::vector<PointConstraint> normalization_section3(const TorusSpec& torus,
                                                    const CVector& p);

/// Normalization of the free-radii problem: Z(0) = anchor, z(1) = z-radius.
std::vector<PointConstraint> normalization_section5(const TorusSpec& torus,
                                                    const CVector& anchor);

struct NewtonOptions {
  int max_iterations = 12;
  double tolerance = 1e-10;
  double divergence_factor = 50.0;  // bail out when residuals blow up
  int inner_cap = 40;
};

struct NewtonResult {
  DiscSolution solution;
  TorusSpec torus;  // updated radii when they are free
  int iterations = 0;
  bool converged = false;
  std::vector<double> residual_history;
  RVector obstruction;  // nonempty when the linear step reported a cokernel hit
};

/// Newton correction of a disc toward the boundary value problem
/// Z_conj = A(Z) conj(Z_zeta), rho(Z) = 0 on the boundary, with the given
/// normalization constraints; radii t_j become unknowns when free_radii is
/// set.  Throws BasinError when the residuals diverge.
NewtonResult newton_correct(const DiscFunction& z0, const MatrixField& a,
                            const TorusSpec& torus,
                            const std::vector<PointConstraint>& normalization,
                            const NewtonOptions& opts, bool free_radii = false);

struct TraceControls {
  int degree = 24;
  double initial_step = 0.25;
  double min_step = 1e-6;
  int max_steps = 200;
  double eta = 0.0;  // separation threshold; 0 picks the default rule
  double area_tol = 1e-6;
  double certificate_tol = 1e-8;
  NewtonOptions newton;
};

struct TracePoint {
  double t = 0.0;
  DiscSolution sol;
  TorusSpec torus;
  double step = 0.0;
  int newton_iterations = 0;
};

enum class BubbleKind { none, boundary_disc, interior_pathology };

struct BubblingReport {
  bool flagged = false;
  BubbleKind kind = BubbleKind::none;
  Complex location = 0.0;
  std::vector<double> mass;  // m_eps for halving eps
  double sup_gradient_first = 0.0;
  double sup_gradient_last = 0.0;
  double principal_energy = 0.0;
  double concentrated_mass = 0.0;
  double total_energy = 0.0;
  std::string summary;
};

struct HomotopyTrace {
  std::vector<TracePoint> points;
  bool completed = false;
  std::string failure;  // empty when completed
  BubblingReport diagnostic;
  double eta = 0.0;  // separation threshold in force
};

/// Continuation in the structure parameter from the exact standard disc at
/// t = 0 toward t = 1, fixed torus, with adaptive step halving.  p is the
/// normalization point on the torus.
HomotopyTrace trace_family(const MatrixField& a, const CVector& p,
                           const TorusSpec& torus, const TraceControls& controls);

struct FoliationResult {
  std::vector<HomotopyTrace> traces;
  double min_pairwise_distance = 0.0;
  int offending_a = -1, offending_b = -1;
  int grid_degree = 0;
  bool disjoint = false;
};

/// One traced disc per q on the unit circle; pairwise image distance checked
/// on evaluation grids.
FoliationResult sweep_foliation(const MatrixField& a, const TorusSpec& torus,
                                int q_samples, const TraceControls& controls,
                                int grid_degree = 0);

struct HigherDimResult {
  DiscSolution solution;
  TorusSpec torus;  // discovered radii
  HomotopyTrace trace;
};

/// Free-radii problem: continuation in the scaling of A with unknowns
/// (Z, t_2..t_n), normalization Z(0) = anchor, z(1) = z-radius.
HigherDimResult solve_higher_dim(const MatrixField& a, const CVector& anchor,
                                 double big_r, const TraceControls& controls);

/// Energy-concentration diagnostic over a sequence of discs.
BubblingReport bubbling_diagnostic(const std::vector<DiscFunction>& sequence);

struct AffineSymplectic {
  RMatrix linear;       // 2n x 2n, must satisfy L^T Omega L = Omega
  CVector translation;  // applied after the linear part
};

struct NonsqueezeReport {
  bool pass = false;
  double pulled_area = 0.0;
  double total_area = 0.0;
  double lower_bound = 0.0;  // pi r^2
  double upper_bound = 0.0;  // pi R^2
  TorusSpec torus;
  DiscCertificate certificate;
  std::string note;
};

/// Attach a disc through Phi(0) to R bD x t bD under the pushforward
/// structure cut off outside the embedded ball, pull the curve portion back
/// and compare its area against pi r^2 and pi R^2.
NonsqueezeReport nonsqueezing_demo(const AffineSymplectic& phi, double r,
                                   double big_r, const TraceControls& controls,
                                   double tol = 1e-3);

}  // namespace jdisc
