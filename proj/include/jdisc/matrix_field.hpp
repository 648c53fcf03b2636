#pragma once

// Matrix fields Z -> A(Z): the coefficient of the Cauchy-Riemann equation
// Z_conj = A(Z) conj(Z_zeta), with closed-form directional derivatives,
// a global taming bound a0 < 1, an optional support separation radius r0
// (A vanishes wherever some |w_j| < 2 r0), and a Lipschitz descriptor.

#include <jdisc/types.hpp>

#include <functional>
#include <string>

namespace jdisc {

class MatrixField {
 public:
  using Evaluator = std::function<CMatrix(const CVector&)>;
  using Derivative = std::function<CMatrix(const CVector&, const CVector&)>;

  MatrixField() = default;
  MatrixField(int n, Evaluator eval, Derivative deriv, double a0, double r0,
              double lipschitz, std::string description);

  int n() const { return n_; }
  CMatrix operator()(const CVector& z) const { return eval_(z); }
  /// Directional derivative D A(z)[dir] for a real tangent direction in C^n.
  CMatrix derivative(const CVector& z, const CVector& dir) const {
    return deriv_(z, dir);
  }

  double taming_bound() const { return a0_; }
  double support_radius() const { return r0_; }
  double lipschitz() const { return lipschitz_; }
  const std::string& description() const { return description_; }
  bool is_zero() const { return a0_ == 0.0; }

  /// Scalar scaling t * A (taming bound and Lipschitz scale with t).
  MatrixField scaled(double t) const;

 private:
  int n_ = 0;
  Evaluator eval_;
  Derivative deriv_;
  double a0_ = 0.0;
  double r0_ = 0.0;
  double lipschitz_ = 0.0;
  std::string description_;
};

/// Homotopy of structures t in [0, 1] -> field; default is scalar scaling,
/// zero at t = 0 and the base field at t = 1.
struct StructureFamily {
  MatrixField base;
  MatrixField at(double t) const { return base.scaled(t); }
};

/// Parameters for the builtin families.
struct FieldParams {
  int n = 2;
  double a0 = 0.5;
  double r0 = 0.1;
  double frequency = 1.0;   // spatial frequency of the bounded envelope
  double phase = 0.3;
  unsigned seed = 0;        // 0 keeps the fixed default amplitude pattern
};

/// Builtin families; kind is one of "zero", "bump", "triangular_bump",
/// "calibrated_bump".  Throws ConstructionError on out-of-range parameters.
MatrixField builtin_field(const std::string& kind, const FieldParams& params);

/// C-infinity ramp: 0 for x <= 0, 1 for x >= 1, exp-based in between.
double cutoff01(double x);
double cutoff01_deriv(double x);

/// Sampled invariant check (taming bound, support separation, derivative vs
/// central finite differences with halving h, Lipschitz estimate).
struct FieldCheck {
  double max_norm = 0.0;
  bool support_ok = true;
  double deriv_error_h = 0.0;    // finite-difference mismatch at step h
  double deriv_error_h2 = 0.0;   // at step h/2; expect ~4x smaller
  double lipschitz_observed = 0.0;
  bool pass = false;
};
FieldCheck check_field_invariants(const MatrixField& field, int samples,
                                  unsigned seed);

}  // namespace jdisc
