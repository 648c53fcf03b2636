#pragma once

// Algebra of almost complex structures on C^n: the correspondence between
// real-linear operators J with J^2 = -I and complex matrices A with
// det(I - A conj(A)) != 0, taming and calibration predicates, and the
// canonical Riemannian metric of a tamed structure.

#include <jdisc/types.hpp>

namespace jdisc {

/// A real-linear operator on C^n ~ R^2n, stored as a 2n x 2n real matrix
/// over interleaved coordinates (x_1, y_1, ..., x_n, y_n).
struct RealLinearOp {
  RMatrix entries;

  int n() const { return static_cast<int>(entries.rows()) / 2; }
  CVector apply(const CVector& v) const { return to_complex(entries * to_real(v)); }

  /// Max entrywise deviation of entries^2 from -I.
  double square_defect() const;
};

/// Decompose a real-linear map M into its complex-linear part C and
/// anti-linear part B, so that M v = C v + B conj(v).
void split_linear_antilinear(const RMatrix& m, CMatrix& c_part, CMatrix& b_part);

/// Real 2n x 2n matrix of the anti-linear map v -> A conj(v).
RMatrix antilinear_real(const CMatrix& a);

/// Real 2n x 2n matrix of the complex-linear map v -> C v.
RMatrix linear_real(const CMatrix& c);

/// The complex matrix of J: the unique A with A conj(v) = Q v,
/// Q = (J_st + J)^{-1} (J_st - J).  Throws ConversionDomainError when
/// det(J_st + J) = 0.
CMatrix j_to_a(const RealLinearOp& j);

/// Inverse correspondence, J = J_st (I - Q)(I + Q)^{-1} with Q v = A conj(v).
/// Throws ConversionDomainError when det(I - A conj(A)) = 0.
RealLinearOp a_to_j(const CMatrix& a);

/// Membership in the set of admissible complex matrices: det(I - A conj(A)) != 0.
bool in_admissible_set(const CMatrix& a, double tol = 1e-14);

/// Strict taming by omega_st: operator norm of A below 1.
bool is_tamed(const CMatrix& a);

/// Tamed and symmetric (A = A^T).
bool is_calibrated(const CMatrix& a, double tol = 1e-10);

/// Canonical Riemannian metric g(u, v) = (1/2)[omega(u, Jv) + omega(v, Ju)]
/// of a tamed structure.  Throws TamingError when J is not tamed.
double canonical_metric(const RealLinearOp& j, const CVector& u, const CVector& v);

/// Same, without the taming precondition check (hot path for quadrature).
inline double canonical_metric_unchecked(const RealLinearOp& j, const CVector& u,
                                         const CVector& v) {
  return 0.5 * (omega_st(u, j.apply(v)) + omega_st(v, j.apply(u)));
}

}  // namespace jdisc
