#include <jdisc/acs.hpp>

#include <jdisc/errors.hpp>

#include <cmath>

namespace jdisc {

double RealLinearOp::square_defect() const {
  RMatrix sq = entries * entries;
  sq += RMatrix::Identity(sq.rows(), sq.cols());
  return sq.cwiseAbs().maxCoeff();
}

void split_linear_antilinear(const RMatrix& m, CMatrix& c_part, CMatrix& b_part) {
  const int n = static_cast<int>(m.rows()) / 2;
  const RMatrix jst = standard_j(n);
  // Complex-linear part commutes with J_st, anti-linear part anti-commutes.
  RMatrix lin = 0.5 * (m - jst * m * jst);
  RMatrix anti = 0.5 * (m + jst * m * jst);
  c_part.resize(n, n);
  b_part.resize(n, n);
  for (int k = 0; k < n; ++k) {
    CVector ek = CVector::Zero(n);
    ek(k) = 1.0;
    c_part.col(k) = to_complex(lin * to_real(ek));
    b_part.col(k) = to_complex(anti * to_real(ek));  // conj(e_k) = e_k
  }
}

RMatrix antilinear_real(const CMatrix& a) {
  const int n = static_cast<int>(a.rows());
  RMatrix q(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    CVector ek = CVector::Zero(n);
    ek(k) = 1.0;
    // Action on the real direction e_k and on i e_k; anti-linearity flips i.
    q.col(2 * k) = to_real(CVector(a.col(k)));
    q.col(2 * k + 1) = to_real(CVector(-Complex(0, 1) * a.col(k)));
  }
  return q;
}

RMatrix linear_real(const CMatrix& c) {
  const int n = static_cast<int>(c.rows());
  RMatrix m(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    m.col(2 * k) = to_real(CVector(c.col(k)));
    m.col(2 * k + 1) = to_real(CVector(Complex(0, 1) * c.col(k)));
  }
  return m;
}

CMatrix j_to_a(const RealLinearOp& j) {
  const int n = j.n();
  const RMatrix jst = standard_j(n);
  RMatrix sum = jst + j.entries;
  Eigen::FullPivLU<RMatrix> lu(sum);
  if (!lu.isInvertible()) {
    throw ConversionDomainError("j_to_a: det(J_st + J) = 0");
  }
  RMatrix q = lu.solve(jst - j.entries);
  CMatrix lin, anti;
  split_linear_antilinear(q, lin, anti);
  // For J^2 = -I the map Q is purely anti-linear; a residual linear part
  // indicates the input is outside the domain of the correspondence.
  if (lin.cwiseAbs().maxCoeff() > 1e-8 * (1.0 + q.cwiseAbs().maxCoeff())) {
    throw ConversionDomainError("j_to_a: Q has a complex-linear part (J^2 != -I?)");
  }
  return anti;
}

RealLinearOp a_to_j(const CMatrix& a) {
  const int n = static_cast<int>(a.rows());
  if (!in_admissible_set(a)) {
    throw ConversionDomainError("a_to_j: det(I - A conj(A)) = 0");
  }
  const RMatrix jst = standard_j(n);
  RMatrix q = antilinear_real(a);
  RMatrix id = RMatrix::Identity(2 * n, 2 * n);
  Eigen::PartialPivLU<RMatrix> lu(id + q);
  RealLinearOp j{jst * (id - q) * lu.inverse()};
  return j;
}

bool in_admissible_set(const CMatrix& a, double tol) {
  const int n = static_cast<int>(a.rows());
  CMatrix m = CMatrix::Identity(n, n) - a * a.conjugate();
  return std::abs(m.determinant()) > tol;
}

bool is_tamed(const CMatrix& a) { return op_norm(a) < 1.0; }

bool is_calibrated(const CMatrix& a, double tol) {
  if (!is_tamed(a)) return false;
  return (a - a.transpose()).cwiseAbs().maxCoeff() <= tol;
}

double canonical_metric(const RealLinearOp& j, const CVector& u, const CVector& v) {
  CMatrix a = j_to_a(j);
  if (!is_tamed(a)) throw TamingError("canonical_metric: structure not tamed by omega_st");
  return canonical_metric_unchecked(j, u, v);
}

}  // namespace jdisc
