#pragma once

#include <Eigen/Dense>
#include <complex>

namespace jdisc {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Standard complex structure on C^n as a real 2n x 2n matrix.
/// Real coordinates are interleaved (x_1, y_1, ..., x_n, y_n).
inline RMatrix standard_j(int n) {
  RMatrix j = RMatrix::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    j(2 * k, 2 * k + 1) = -1.0;
    j(2 * k + 1, 2 * k) = 1.0;
  }
  return j;
}

inline RVector to_real(const CVector& v) {
  RVector r(2 * v.size());
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    r(2 * k) = v(k).real();
    r(2 * k + 1) = v(k).imag();
  }
  return r;
}

inline CVector to_complex(const RVector& r) {
  CVector v(r.size() / 2);
  for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = Complex(r(2 * k), r(2 * k + 1));
  return v;
}

/// omega_st(u, v) = sum_j dx_j ^ dy_j = Im <u, v>.
inline double omega_st(const CVector& u, const CVector& v) {
  return u.dot(v).imag();  // Eigen's dot conjugates the first argument
}

/// Euclidean metric, Re <u, v>.
inline double euclid(const CVector& u, const CVector& v) { return u.dot(v).real(); }

/// Operator 2-norm (largest singular value).
inline double op_norm(const CMatrix& a) {
  return a.jacobiSvd().singularValues()(0);
}

}  // namespace jdisc
