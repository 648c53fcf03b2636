#pragma once

// C^m-valued functions on the closed unit disc in a finite polar-spectral
// representation: component j is sum_{p+q <= N} c_{j,p,q} zeta^p conj(zeta)^q.

#include <jdisc/types.hpp>

#include <iosfwd>
#include <vector>

namespace jdisc {

class DiscFunction {
 public:
  DiscFunction() = default;
  DiscFunction(int components, int degree)
      : m_(components), n_(degree),
        coef_(components, CMatrix::Zero(degree + 1, degree + 1)) {}

  int components() const { return m_; }
  int degree() const { return n_; }

  Complex coef(int j, int p, int q) const { return coef_[j](p, q); }
  void set_coef(int j, int p, int q, Complex c) { coef_[j](p, q) = c; }
  const CMatrix& table(int j) const { return coef_[j]; }
  CMatrix& table(int j) { return coef_[j]; }

  Complex eval(int j, Complex zeta) const;
  CVector eval(Complex zeta) const;

  /// Coefficientwise d/d(conj zeta): zeta^p conj(zeta)^q -> q zeta^p conj(zeta)^{q-1}.
  DiscFunction dbar() const;
  /// Coefficientwise d/d(zeta).
  DiscFunction dz() const;
  /// Pointwise complex conjugate; the basis is closed under conjugation.
  DiscFunction conjugated() const;

  DiscFunction component(int j) const;
  void set_component(int j, const DiscFunction& f);

  /// Fourier coefficients of the boundary trace of component j:
  /// index k in [-N, N] maps to sum over p - q = k of c_{j,p,q}.
  CVector boundary_fourier(int j) const;

  /// Largest total degree with a nonzero coefficient (-1 for the zero function).
  int effective_degree(double tol = 0.0) const;

  /// Sup over a dense polar grid (Gauss-Legendre radii plus the boundary ring)
  /// of the Euclidean norm of the value vector.
  double sup_norm() const;
  /// Same for a single component.
  double sup_norm(int j) const;

  /// Cheap upper bound for the sup norm: max over components of the sum of
  /// coefficient moduli.
  double coef_norm() const;

  /// Copy with a new truncation degree (coefficients beyond it dropped).
  DiscFunction resized(int degree) const;

  DiscFunction& operator+=(const DiscFunction& o);
  DiscFunction& operator-=(const DiscFunction& o);
  DiscFunction& operator*=(Complex s);

  friend DiscFunction operator+(DiscFunction a, const DiscFunction& b) { return a += b; }
  friend DiscFunction operator-(DiscFunction a, const DiscFunction& b) { return a -= b; }
  friend DiscFunction operator*(Complex s, DiscFunction a) { return a *= s; }

  /// Text serialization: header "m N", then one line "j p q re im" per
  /// coefficient with p + q <= N, at 17 significant digits.
  void write(std::ostream& out) const;
  static DiscFunction read(std::istream& in);

 private:
  int m_ = 0;
  int n_ = 0;
  std::vector<CMatrix> coef_;
};

/// Monomial disc function c * zeta^p * conj(zeta)^q (single component).
DiscFunction monomial(int degree, int p, int q, Complex c = 1.0);

/// Constant C^m-valued disc function.
DiscFunction constant_disc(const CVector& value, int degree);

}  // namespace jdisc
