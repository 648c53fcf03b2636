#include <jdisc/matrix_field.hpp>

#include <jdisc/errors.hpp>

#include <cmath>
#include <random>

namespace jdisc {

MatrixField::MatrixField(int n, Evaluator eval, Derivative deriv, double a0,
                         double r0, double lipschitz, std::string description)
    : n_(n), eval_(std::move(eval)), deriv_(std::move(deriv)), a0_(a0), r0_(r0),
      lipschitz_(lipschitz), description_(std::move(description)) {
  if (a0_ < 0.0 || a0_ >= 1.0)
    throw ConstructionError("matrix field: taming bound must satisfy 0 <= a0 < 1");
  if (r0_ < 0.0) throw ConstructionError("matrix field: r0 must be nonnegative");
}

MatrixField MatrixField::scaled(double t) const {
  if (t == 0.0 || is_zero()) {
    const int n = n_;
    return MatrixField(
        n, [n](const CVector&) { return CMatrix::Zero(n, n); },
        [n](const CVector&, const CVector&) { return CMatrix::Zero(n, n); }, 0.0,
        r0_, 0.0, description_ + " (t=0)");
  }
  Evaluator e = eval_;
  Derivative d = deriv_;
  return MatrixField(
      n_, [e, t](const CVector& z) { return CMatrix(t * e(z)); },
      [d, t](const CVector& z, const CVector& v) { return CMatrix(t * d(z, v)); },
      t * a0_, r0_, t * lipschitz_, description_);
}

double cutoff01(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / x);
  const double b = std::exp(-1.0 / (1.0 - x));
  return a / (a + b);
}

double cutoff01_deriv(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  const double a = std::exp(-1.0 / x);
  const double b = std::exp(-1.0 / (1.0 - x));
  const double da = a / (x * x);
  const double db = -b / ((1.0 - x) * (1.0 - x));
  return (da * b - a * db) / ((a + b) * (a + b));
}

namespace {

// Smooth gate vanishing when any |w_j| < 2 r0 and equal to 1 once every
// |w_j| >= 3 r0; arguments are |w_j|^2 so the gate is smooth through w_j = 0.
double support_gate(const CVector& z, double r0) {
  if (r0 <= 0.0) return 1.0;
  const double lo = 4.0 * r0 * r0, hi = 9.0 * r0 * r0;
  double g = 1.0;
  for (int j = 1; j < z.size(); ++j)
    g *= cutoff01((std::norm(z(j)) - lo) / (hi - lo));
  return g;
}

double support_gate_deriv(const CVector& z, const CVector& dir, double r0) {
  if (r0 <= 0.0) return 0.0;
  const double lo = 4.0 * r0 * r0, hi = 9.0 * r0 * r0;
  const int n = static_cast<int>(z.size());
  // factors and one-sided products
  RVector f(n);
  f(0) = 1.0;
  for (int j = 1; j < n; ++j) f(j) = cutoff01((std::norm(z(j)) - lo) / (hi - lo));
  double total = 0.0;
  for (int j = 1; j < n; ++j) {
    const double x = (std::norm(z(j)) - lo) / (hi - lo);
    const double dx = 2.0 * (z(j).real() * dir(j).real() + z(j).imag() * dir(j).imag()) /
                      (hi - lo);
    double rest = 1.0;
    for (int j2 = 1; j2 < n; ++j2)
      if (j2 != j) rest *= f(j2);
    total += cutoff01_deriv(x) * dx * rest;
  }
  return total;
}

struct EnvelopeEntry {
  int u = 0, v = 0;          // coordinate indices for the trig factors
  double phase_a = 0.0, phase_b = 0.0;
};

// Bounded smooth scalar 0.5 (1 + sin(nu x_u + pa) cos(nu y_v + pb)); values
// in [0, 1], uniformly continuous on all of C^n.
double envelope(const EnvelopeEntry& e, double nu, const CVector& z) {
  const double sa = std::sin(nu * z(e.u).real() + e.phase_a);
  const double cb = std::cos(nu * z(e.v).imag() + e.phase_b);
  return 0.5 * (1.0 + sa * cb);
}

double envelope_deriv(const EnvelopeEntry& e, double nu, const CVector& z,
                      const CVector& dir) {
  const double a = nu * z(e.u).real() + e.phase_a;
  const double b = nu * z(e.v).imag() + e.phase_b;
  return 0.5 * nu * (std::cos(a) * dir(e.u).real() * std::cos(b) -
                     std::sin(a) * std::sin(b) * dir(e.v).imag());
}

struct BumpSpec {
  CMatrix amplitude;                      // scaled so the Frobenius bound is a0
  std::vector<EnvelopeEntry> envelopes;   // row-major n x n
  double nu = 1.0;
  double r0 = 0.0;
  const EnvelopeEntry& env(int k, int l) const {
    return envelopes[k * amplitude.cols() + l];
  }
};

CMatrix bump_eval(const BumpSpec& s, const CVector& z) {
  const int n = static_cast<int>(s.amplitude.rows());
  const double gate = support_gate(z, s.r0);
  CMatrix a(n, n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      a(k, l) = s.amplitude(k, l) == 0.0
                    ? Complex(0.0)
                    : s.amplitude(k, l) * gate * envelope(s.env(k, l), s.nu, z);
  return a;
}

CMatrix bump_deriv(const BumpSpec& s, const CVector& z, const CVector& dir) {
  const int n = static_cast<int>(s.amplitude.rows());
  const double gate = support_gate(z, s.r0);
  const double dgate = support_gate_deriv(z, dir, s.r0);
  CMatrix a(n, n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      if (s.amplitude(k, l) == 0.0) {
        a(k, l) = 0.0;
        continue;
      }
      const double env = envelope(s.env(k, l), s.nu, z);
      const double denv = envelope_deriv(s.env(k, l), s.nu, z, dir);
      a(k, l) = s.amplitude(k, l) * (dgate * env + gate * denv);
    }
  return a;
}

MatrixField make_bump(const FieldParams& p, const CMatrix& pattern,
                      bool shared_envelope, const std::string& name) {
  const int n = p.n;
  if (p.r0 > 0.0 && n < 2)
    throw ConstructionError(name + ": support separation needs n >= 2");
  if (p.r0 < 0.0) throw ConstructionError(name + ": r0 must be nonnegative");
  BumpSpec spec;
  spec.nu = p.frequency;
  spec.r0 = p.r0;
  // Frobenius normalization: |envelope| <= 1 entrywise gives
  // ||A(Z)|| <= ||A(Z)||_F <= a0 everywhere.
  const double fn = pattern.norm();
  if (fn == 0.0) throw ConstructionError(name + ": zero amplitude pattern");
  spec.amplitude = (p.a0 / fn) * pattern;
  spec.envelopes.resize(size_t(n) * n);
  std::mt19937_64 rng(p.seed == 0 ? 0x9e3779b97f4a7c15ull : p.seed);
  std::uniform_real_distribution<double> ph(0.0, 2.0 * kPi);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      EnvelopeEntry e;
      if (shared_envelope) {
        e.u = 0;
        e.v = n > 1 ? 1 : 0;
        e.phase_a = p.phase;
        e.phase_b = 0.5 * p.phase;
      } else {
        e.u = k % n;
        e.v = l % n;
        e.phase_a = p.phase + ph(rng);
        e.phase_b = 0.5 * p.phase + ph(rng);
      }
      spec.envelopes[size_t(k) * n + l] = e;
    }
  // Lipschitz descriptor: product rule bound, gate slope ~ sup|cutoff'| * 2|w|
  // near the collar plus envelope slope nu, all times a0.
  double gate_slope = 0.0;
  if (p.r0 > 0.0) gate_slope = 2.0 * (n - 1) * 2.0 * 3.0 * p.r0 / (5.0 * p.r0 * p.r0);
  const double lip = p.a0 * (gate_slope + p.frequency);
  return MatrixField(
      n, [spec](const CVector& z) { return bump_eval(spec, z); },
      [spec](const CVector& z, const CVector& v) { return bump_deriv(spec, z, v); },
      p.a0, p.r0, lip, name);
}

}  // namespace

MatrixField builtin_field(const std::string& kind, const FieldParams& p) {
  if (p.a0 < 0.0 || p.a0 >= 1.0)
    throw ConstructionError("builtin_field: taming bound a0 must lie in [0, 1)");
  if (kind == "zero") {
    const int n = p.n;
    return MatrixField(
        n, [n](const CVector&) { return CMatrix::Zero(n, n); },
        [n](const CVector&, const CVector&) { return CMatrix::Zero(n, n); }, 0.0,
        0.0, 0.0, "zero");
  }
  if (kind == "bump") {
    CMatrix pattern = CMatrix::Constant(p.n, p.n, Complex(1.0, 0.0));
    for (int k = 0; k < p.n; ++k)
      for (int l = 0; l < p.n; ++l)
        pattern(k, l) = Complex(1.0 + 0.2 * k, 0.3 - 0.1 * l);
    return make_bump(p, pattern, false, "bump");
  }
  if (kind == "triangular_bump") {
    // Lower triangular complex matrix function: d = 0 identically; the gate
    // keeps the whole matrix zero near {w_j = 0} so the axis stays complex.
    CMatrix pattern = CMatrix::Zero(p.n, p.n);
    for (int k = 0; k < p.n; ++k)
      for (int l = 0; l <= k; ++l) pattern(k, l) = Complex(1.0, 0.25 * (k - l));
    return make_bump(p, pattern, false, "triangular_bump");
  }
  if (kind == "calibrated_bump") {
    // Symmetric amplitude with one shared scalar envelope keeps A(Z)
    // symmetric pointwise, hence calibrated wherever tamed.
    CMatrix pattern(p.n, p.n);
    for (int k = 0; k < p.n; ++k)
      for (int l = 0; l < p.n; ++l)
        pattern(k, l) = Complex(1.0 + 0.1 * (k + l), 0.2 * (k + l));
    return make_bump(p, pattern, true, "calibrated_bump");
  }
  throw ConstructionError("builtin_field: unknown kind '" + kind + "'");
}

FieldCheck check_field_invariants(const MatrixField& field, int samples,
                                  unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> box(-2.0, 2.0);
  const int n = field.n();
  FieldCheck out;
  auto random_point = [&] {
    CVector z(n);
    for (int j = 0; j < n; ++j) z(j) = Complex(box(rng), box(rng));
    return z;
  };
  for (int s = 0; s < samples; ++s) {
    CVector z = random_point();
    CMatrix a = field(z);
    out.max_norm = std::max(out.max_norm, op_norm(a));
    if (field.support_radius() > 0.0) {
      bool inside_collar = false;
      for (int j = 1; j < n; ++j)
        if (std::abs(z(j)) < 2.0 * field.support_radius()) inside_collar = true;
      if (inside_collar && a.cwiseAbs().maxCoeff() > 0.0) out.support_ok = false;
    }
    CVector dir(n);
    for (int j = 0; j < n; ++j) dir(j) = Complex(box(rng), box(rng));
    dir /= std::sqrt(to_real(dir).squaredNorm());
    const double h = 1e-4;
    auto fd = [&](double step) {
      CMatrix num = (field(z + step * dir) - field(z - step * dir)) / (2.0 * step);
      return (num - field.derivative(z, dir)).cwiseAbs().maxCoeff();
    };
    out.deriv_error_h = std::max(out.deriv_error_h, fd(h));
    out.deriv_error_h2 = std::max(out.deriv_error_h2, fd(0.5 * h));
    CVector z2 = random_point();
    const double dist = std::sqrt(to_real(CVector(z2 - z)).squaredNorm());
    if (dist > 1e-9) {
      const double slope = (field(z2) - a).norm() / dist;
      out.lipschitz_observed = std::max(out.lipschitz_observed, slope);
    }
  }
  const bool taming_ok = out.max_norm <= field.taming_bound() + 1e-12;
  const bool deriv_ok = out.deriv_error_h <= 1e-5;
  const bool lip_ok = field.lipschitz() == 0.0 ||
                      out.lipschitz_observed <= field.lipschitz() * 1.05 + 1e-12;
  out.pass = taming_ok && out.support_ok && deriv_ok && lip_ok;
  return out;
}

}  // namespace jdisc
