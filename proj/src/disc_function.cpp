#include <jdisc/disc_function.hpp>

#include <jdisc/errors.hpp>
#include <jdisc/projection.hpp>

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace jdisc {

Complex DiscFunction::eval(int j, Complex zeta) const {
  const Complex zb = std::conj(zeta);
  // Powers of zeta and conj(zeta) up to degree N.
  CVector zp(n_ + 1), zq(n_ + 1);
  zp(0) = 1.0;
  zq(0) = 1.0;
  for (int k = 1; k <= n_; ++k) {
    zp(k) = zp(k - 1) * zeta;
    zq(k) = zq(k - 1) * zb;
  }
  Complex acc = 0.0;
  const CMatrix& c = coef_[j];
  for (int p = 0; p <= n_; ++p)
    for (int q = 0; q + p <= n_; ++q)
      if (c(p, q) != 0.0) acc += c(p, q) * zp(p) * zq(q);
  return acc;
}

CVector DiscFunction::eval(Complex zeta) const {
  CVector v(m_);
  for (int j = 0; j < m_; ++j) v(j) = eval(j, zeta);
  return v;
}

DiscFunction DiscFunction::dbar() const {
  DiscFunction out(m_, n_);
  for (int j = 0; j < m_; ++j)
    for (int p = 0; p <= n_; ++p)
      for (int q = 1; p + q <= n_; ++q)
        out.coef_[j](p, q - 1) += double(q) * coef_[j](p, q);
  return out;
}

DiscFunction DiscFunction::dz() const {
  DiscFunction out(m_, n_);
  for (int j = 0; j < m_; ++j)
    for (int p = 1; p <= n_; ++p)
      for (int q = 0; p + q <= n_; ++q)
        out.coef_[j](p - 1, q) += double(p) * coef_[j](p, q);
  return out;
}

DiscFunction DiscFunction::conjugated() const {
  DiscFunction out(m_, n_);
  for (int j = 0; j < m_; ++j) out.coef_[j] = coef_[j].transpose().conjugate();
  return out;
}

DiscFunction DiscFunction::component(int j) const {
  DiscFunction out(1, n_);
  out.coef_[0] = coef_[j];
  return out;
}

void DiscFunction::set_component(int j, const DiscFunction& f) {
  coef_[j] = f.coef_[0];
}

CVector DiscFunction::boundary_fourier(int j) const {
  CVector g = CVector::Zero(2 * n_ + 1);  // index k + N
  for (int p = 0; p <= n_; ++p)
    for (int q = 0; p + q <= n_; ++q) g(p - q + n_) += coef_[j](p, q);
  return g;
}

int DiscFunction::effective_degree(double tol) const {
  int deg = -1;
  for (int j = 0; j < m_; ++j)
    for (int p = 0; p <= n_; ++p)
      for (int q = 0; p + q <= n_; ++q)
        if (std::abs(coef_[j](p, q)) > tol) deg = std::max(deg, p + q);
  return deg;
}

double DiscFunction::sup_norm() const {
  const PolarGrid& grid = PolarGrid::shared(std::max(n_, 4));
  double best = 0.0;
  for (const Complex& zeta : grid.nodes_with_boundary()) {
    double s = 0.0;
    for (int j = 0; j < m_; ++j) s += std::norm(eval(j, zeta));
    best = std::max(best, s);
  }
  return std::sqrt(best);
}

double DiscFunction::sup_norm(int j) const {
  const PolarGrid& grid = PolarGrid::shared(std::max(n_, 4));
  double best = 0.0;
  for (const Complex& zeta : grid.nodes_with_boundary())
    best = std::max(best, std::abs(eval(j, zeta)));
  return best;
}

double DiscFunction::coef_norm() const {
  double best = 0.0;
  for (int j = 0; j < m_; ++j) best = std::max(best, coef_[j].cwiseAbs().sum());
  return best;
}

DiscFunction DiscFunction::resized(int degree) const {
  DiscFunction out(m_, degree);
  const int lim = std::min(degree, n_);
  for (int j = 0; j < m_; ++j)
    for (int p = 0; p <= lim; ++p)
      for (int q = 0; p + q <= lim; ++q) out.coef_[j](p, q) = coef_[j](p, q);
  return out;
}

DiscFunction& DiscFunction::operator+=(const DiscFunction& o) {
  for (int j = 0; j < m_; ++j) coef_[j] += o.coef_[j];
  return *this;
}

DiscFunction& DiscFunction::operator-=(const DiscFunction& o) {
  for (int j = 0; j < m_; ++j) coef_[j] -= o.coef_[j];
  return *this;
}

DiscFunction& DiscFunction::operator*=(Complex s) {
  for (int j = 0; j < m_; ++j) coef_[j] *= s;
  return *this;
}

void DiscFunction::write(std::ostream& out) const {
  out << m_ << ' ' << n_ << '\n';
  char buf[64];
  for (int j = 0; j < m_; ++j)
    for (int p = 0; p <= n_; ++p)
      for (int q = 0; p + q <= n_; ++q) {
        out << j << ' ' << p << ' ' << q << ' ';
        std::snprintf(buf, sizeof buf, "%.17g", coef_[j](p, q).real());
        out << buf << ' ';
        std::snprintf(buf, sizeof buf, "%.17g", coef_[j](p, q).imag());
        out << buf << '\n';
      }
}

DiscFunction DiscFunction::read(std::istream& in) {
  int m = 0, n = -1;
  if (!(in >> m >> n) || m <= 0 || n < 0)
    throw ConstructionError("disc function header: expected 'm N'");
  DiscFunction f(m, n);
  int j, p, q;
  double re, im;
  for (int line = 0; line < m * (n + 1) * (n + 2) / 2; ++line) {
    if (!(in >> j >> p >> q >> re >> im))
      throw ConstructionError("disc function: truncated coefficient table");
    if (j < 0 || j >= m || p < 0 || q < 0 || p + q > n)
      throw ConstructionError("disc function: coefficient index out of range");
    f.coef_[j](p, q) = Complex(re, im);
  }
  return f;
}

DiscFunction monomial(int degree, int p, int q, Complex c) {
  if (p + q > degree) throw TruncationError("monomial: p + q exceeds degree");
  DiscFunction f(1, degree);
  f.set_coef(0, p, q, c);
  return f;
}

DiscFunction constant_disc(const CVector& value, int degree) {
  DiscFunction f(static_cast<int>(value.size()), degree);
  for (int j = 0; j < value.size(); ++j) f.set_coef(j, 0, 0, value(j));
  return f;
}

}  // namespace jdisc
