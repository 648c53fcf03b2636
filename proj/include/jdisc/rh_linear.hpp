#pragma once

// Linear Riemann-Hilbert machinery: the operator
//   L: f -> (dbar f, Re P f |_{boundary})
// with point constraints and optional free constant offsets in the boundary
// data, its kernel/cokernel and Fredholm index on the truncated spaces, and
// a rank-revealing least-squares solver used as the Newton step.
//
// The interior equation is eliminated exactly through the Cauchy-Green
// transform: unknowns are the holomorphic coefficients a_{j,k}, boundary
// conditions are matched Fourier coefficient by Fourier coefficient up to
// frequency K = N + deg P, and the rectangular real system is solved by SVD
// with threshold 1e-8 * sigma_max.

#include <jdisc/boundary_loop.hpp>
#include <jdisc/disc_function.hpp>
#include <jdisc/types.hpp>

#include <memory>
#include <vector>

namespace jdisc {

/// Boundary coefficient matrix theta -> P(theta), stored as Fourier data per
/// entry (trigonometric polynomials of bounded degree).
class BoundaryMatrix {
 public:
  BoundaryMatrix() = default;
  BoundaryMatrix(int n, int kmax)
      : n_(n), kmax_(kmax),
        data_(static_cast<size_t>(n) * n, CVector::Zero(2 * kmax + 1)) {}

  static BoundaryMatrix constant(const CMatrix& m);
  /// P = diag(conj(trace of component j)) along the boundary of z; the
  /// Jacobian of rho = (|z_j|^2 - r_j^2) up to the factor 2 carried by the
  /// right side.
  static BoundaryMatrix diagonal_conjugate_trace(const DiscFunction& z);

  int n() const { return n_; }
  int stored_degree() const { return kmax_; }
  /// Largest |k| carrying a nonzero coefficient.
  int degree(double tol = 1e-13) const;

  Complex fourier(int r, int c, int k) const {
    if (std::abs(k) > kmax_) return 0.0;
    return data_[static_cast<size_t>(r) * n_ + c](k + kmax_);
  }
  void set_fourier(int r, int c, int k, Complex v) {
    data_[static_cast<size_t>(r) * n_ + c](k + kmax_) = v;
  }

  CMatrix eval(double theta) const;
  double min_abs_det(int samples = 0) const;
  int det_winding(int samples = 0) const;

 private:
  int n_ = 0;
  int kmax_ = 0;
  std::vector<CVector> data_;
};

/// Point constraint on the unknown: full pins weight * f_j(point) = value
/// (two real rows); half pins only Im(weight * f_j(point)) = Im(value)
/// (one row, the tangential part of a boundary point condition).
struct PointConstraint {
  int component = 0;
  Complex point = 1.0;
  Complex weight = 1.0;
  bool full = true;
  Complex value = 0.0;
};

struct LinearRHProblem {
  BoundaryMatrix p;
  DiscFunction interior;                  // hdot, degree at most N - 1
  std::vector<CVector> boundary_fourier;  // per component, indices m = 0..K_g
  std::vector<PointConstraint> constraints;
  std::vector<int> free_offset_components;  // rows carrying -s_j/2
  int degree = 24;                          // truncation N of the unknown
};

struct RHSolution {
  DiscFunction f;
  RVector offsets;       // one per free offset component
  double ls_residual = 0.0;
  double boundary_sup = 0.0;  // sup over samples of |Re(P f) - g|
  int rank = 0;
  int kernel_dim = 0;
  int coker_dim = 0;
  RVector obstruction;   // best-fit cokernel direction when residual is large
};

/// Minimum-norm least-squares solution of the truncated system.
RHSolution solve_linear_rh(const LinearRHProblem& prob);

/// Factored form of the truncated operator for repeated solves against the
/// same P, constraint geometry and degree (the right sides may change).
class RHOperator {
 public:
  RHOperator(const BoundaryMatrix& p, std::vector<PointConstraint> constraints,
             std::vector<int> free_offset_components, int degree);
  ~RHOperator();
  RHOperator(RHOperator&&) noexcept;

  int rank() const;
  int kernel_dim() const;
  int coker_dim() const;

  /// Solve with the given interior data, boundary Fourier data, and constraint
  /// values (overriding the values stored in the constraint list).
  RHSolution solve(const DiscFunction& interior,
                   const std::vector<CVector>& boundary_fourier,
                   const std::vector<Complex>& constraint_values) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct LApplied {
  DiscFunction interior;  // dbar f
  RMatrix boundary;       // n x M samples of Re(P f)
};

/// The operator itself, (dbar f, Re(P f) on M equispaced samples).
LApplied apply_L(const BoundaryMatrix& p, const DiscFunction& f, int samples = 0);

struct IndexReport {
  int index = 0;
  int stabilized_at = 0;  // smallest N where both routes agree
  int kernel_dim = 0;
  int coker_dim = 0;
  int det_winding = 0;
  int formula_index = 0;
  std::vector<std::pair<int, int>> per_degree;  // (N, rank-route index)
};

/// Fredholm index of the constrained problem, computed by rank counting on
/// the truncated system and cross-validated against the det-winding count
/// index = n - 2 wind(det P) + #offsets - #constraint rows.  Throws
/// LopatinskiError when det P vanishes on samples and ResolutionError when
/// the two routes never agree on the tried truncations.
IndexReport fredholm_index(const BoundaryMatrix& p,
                           const std::vector<PointConstraint>& constraints,
                           const std::vector<int>& free_offset_components,
                           int degree);

/// Distance in the sup norm on the boundary circle from conj(zeta) to the
/// holomorphic polynomials of degree at most N (Lawson-iterated minimax).
double dbar_distance_witness(int degree);

/// Fourier half-spectrum (m = 0..kmax) of real-valued samples.
CVector real_fourier_half(const RVector& samples, int kmax);

}  // namespace jdisc
