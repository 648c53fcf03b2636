#pragma once

// Local existence machine: solve the integral equation
//   Z - T(A(Z) conj(Z_zeta)) = W
// for holomorphic W by Picard iteration (optionally Newton-accelerated),
// plus the normalization/dilation chart utilities.

#include <jdisc/disc_function.hpp>
#include <jdisc/matrix_field.hpp>
#include <jdisc/types.hpp>

#include <vector>

namespace jdisc {

/// Affine chart Z' = (1/lambda) S (Z - p) with S real-linear conjugating
/// J(p) to J_st at the origin.
struct AffineChart {
  CVector origin;     // p
  RMatrix s;          // 2n x 2n
  RMatrix s_inverse;
  double dilation = 1.0;

  CVector apply(const CVector& z) const {
    return to_complex(RVector(s * to_real(CVector(z - origin)))) / dilation;
  }
  CVector invert(const CVector& zp) const {
    return origin + to_complex(RVector(s_inverse * to_real(zp))) * dilation;
  }
  /// Pullback of a chart-coordinate disc to the original coordinates.
  DiscFunction invert(const DiscFunction& f) const;
};

struct ChartResult {
  AffineChart chart;
  MatrixField rescaled;   // chart-coordinate field, vanishing at the origin
  double achieved_bound;  // sampled sup of the rescaled field on the unit ball
};

/// Builds the affine chart at p and dilates until the rescaled field stays
/// below lambda0 on the unit ball (sampled).  Throws ScaleError when the
/// dilation budget is exhausted.
ChartResult normalize_chart(const MatrixField& a, const CVector& p, double lambda0);

/// Transform of the complex matrix under a real-linear change of frame
/// L v = C v + B conj(v):  A' = (C A + B) (conj(C) + conj(B) A)^{-1}.
CMatrix transform_matrix(const CMatrix& c, const CMatrix& b, const CMatrix& a);

struct LocalProblem {
  MatrixField field;
  DiscFunction w;  // holomorphic data, dbar(w) = 0 exactly
};

struct LocalOptions {
  double tolerance = 1e-10;
  int max_iterations = 60;
  double newton_threshold = 0.8;  // Picard ratio above which Newton kicks in
  bool anchor = false;            // keep Z(0) and Z_zeta(0) pinned to W's
};

struct LocalSolveReport {
  DiscFunction z;
  double residual = 0.0;           // sup |Z_conj - A(Z) conj(Z_zeta)|
  double contraction_ratio = 0.0;  // measured q
  int iterations = 0;
  bool converged = false;
  bool newton_used = false;
  std::vector<double> residual_history;
};

/// Sup over a dense grid (interior plus boundary ring) of the Euclidean norm
/// of Z_conj - A(Z) conj(Z_zeta).
double cr_residual(const DiscFunction& z, const MatrixField& a, int grid_degree = 0);

/// One application of the integral-equation right side,
/// T(projection of A(Z) conj(Z_zeta) to degree N-1).
DiscFunction picard_map(const DiscFunction& z, const MatrixField& a);

/// Fixed-point solve of Z = W + T(A(Z) conj(Z_zeta)).  Throws DivergenceError
/// when the measured ratio exceeds 1; returns converged = false at the
/// iteration cap.
LocalSolveReport solve_local(const LocalProblem& problem, const LocalOptions& opts);

struct PointDiscResult {
  LocalSolveReport report;
  AffineChart chart;
  double direction_scale = 0.0;  // the dyadic lambda actually used
};

/// J-complex disc through p with dZ(0)(d/dxi) parallel to v (positive factor),
/// solved in the normalized chart and pulled back.
PointDiscResult solve_through_point(const MatrixField& a, const CVector& p,
                                    const CVector& v, int degree,
                                    const LocalOptions& opts);

struct FamilyEntry {
  CVector p;
  CVector v;
  LocalSolveReport report;
};

struct FamilyResult {
  std::vector<FamilyEntry> entries;
  double max_deviation = 0.0;     // sup distance to the base solution
  double continuity_constant = 0.0;  // max deviation / data distance
};

/// Solutions over a grid of perturbed (p, v) around a base pair.
FamilyResult local_family(const MatrixField& a, const CVector& p, const CVector& v,
                          double perturbation, int grid_points, int degree,
                          const LocalOptions& opts);

}  // namespace jdisc
