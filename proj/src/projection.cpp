#include <jdisc/projection.hpp>

#include <jdisc/errors.hpp>

#include <cmath>
#include <map>
#include <memory>

namespace jdisc {

void gauss_legendre_01(int count, RVector& nodes, RVector& weights) {
  RMatrix jac = RMatrix::Zero(count, count);
  for (int k = 1; k < count; ++k) {
    double b = k / std::sqrt(4.0 * k * k - 1.0);
    jac(k, k - 1) = b;
    jac(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<RMatrix> es(jac);
  nodes.resize(count);
  weights.resize(count);
  for (int k = 0; k < count; ++k) {
    nodes(k) = 0.5 * (es.eigenvalues()(k) + 1.0);
    double v = es.eigenvectors()(0, k);
    weights(k) = v * v;  // total weight 2 on [-1,1], halved by the map to [0,1]
  }
}

namespace {

// Shifted Legendre coefficient triangle in long double:
// P~_q(s) = sum_l tri[q][l] s^l with the recurrence
// (q+1) P~_{q+1} = (2q+1)(2s-1) P~_q - q P~_{q-1}.
std::vector<std::vector<long double>> shifted_legendre_triangle(int qmax) {
  std::vector<std::vector<long double>> tri(qmax + 1);
  tri[0] = {1.0L};
  if (qmax >= 1) tri[1] = {-1.0L, 2.0L};
  for (int q = 1; q < qmax; ++q) {
    std::vector<long double> next(q + 2, 0.0L);
    for (int l = 0; l <= q; ++l) {
      long double c = tri[q][l];
      next[l + 1] += (2.0L * q + 1.0L) * 2.0L * c / (q + 1.0L);
      next[l] -= (2.0L * q + 1.0L) * c / (q + 1.0L);
    }
    for (int l = 0; l < q; ++l) next[l] -= q * tri[q - 1][l] / (q + 1.0L);
    tri[q + 1] = std::move(next);
  }
  return tri;
}

}  // namespace

PolarGrid::PolarGrid(int degree) : degree_(degree) {
  mr_ = degree + 1;
  mth_ = 4 * std::max(degree, 1);
  gauss_legendre_01(mr_, s_, w_);
  rho_ = s_.cwiseSqrt();
  theta_.resize(mth_);
  unit_row_.resize(mth_);
  for (int j = 0; j < mth_; ++j) {
    theta_(j) = 2.0 * kPi * j / mth_;
    unit_row_[j] = Complex(std::cos(theta_(j)), std::sin(theta_(j)));
  }
  harmonics_.resize(2 * degree + 1, mth_);
  for (int k = -degree; k <= degree; ++k)
    for (int j = 0; j < mth_; ++j) {
      double a = k * theta_(j);
      harmonics_(k + degree, j) = Complex(std::cos(a), std::sin(a));
    }
  const int qmax = degree / 2;
  auto tri = shifted_legendre_triangle(qmax);
  legendre_to_monomial_ = RMatrix::Zero(qmax + 1, qmax + 1);
  for (int q = 0; q <= qmax; ++q)
    for (int l = 0; l <= q; ++l)
      legendre_to_monomial_(q, l) = static_cast<double>(tri[q][l]);
  legendre_at_s_.resize(qmax + 1, mr_);
  for (int i = 0; i < mr_; ++i) {
    double x = 2.0 * s_(i) - 1.0;
    double pm = 1.0, pc = x;
    legendre_at_s_(0, i) = 1.0;
    if (qmax >= 1) legendre_at_s_(1, i) = x;
    for (int q = 1; q < qmax; ++q) {
      double pn = ((2.0 * q + 1.0) * x * pc - q * pm) / (q + 1.0);
      legendre_at_s_(q + 1, i) = pn;
      pm = pc;
      pc = pn;
    }
  }
  nodes_.reserve(mr_ * mth_);
  for (int i = 0; i < mr_; ++i)
    for (int j = 0; j < mth_; ++j) nodes_.push_back(node(i, j));
  nodes_bd_ = nodes_;
  for (int j = 0; j < mth_; ++j) nodes_bd_.push_back(unit_row_[j]);
}

const PolarGrid& PolarGrid::shared(int degree) {
  static std::map<int, std::unique_ptr<PolarGrid>> cache;
  auto it = cache.find(degree);
  if (it == cache.end())
    it = cache.emplace(degree, std::make_unique<PolarGrid>(degree)).first;
  return *it->second;
}

CMatrix PolarGrid::values(const DiscFunction& f, int j) const {
  const int nf = f.degree();
  CMatrix out(mr_, mth_);
  const CMatrix& c = f.table(j);
  CVector freq(2 * nf + 1);
  RVector rpow(nf + 1);
  for (int i = 0; i < mr_; ++i) {
    rpow(0) = 1.0;
    for (int d = 1; d <= nf; ++d) rpow(d) = rpow(d - 1) * rho_(i);
    freq.setZero();
    for (int p = 0; p <= nf; ++p)
      for (int q = 0; p + q <= nf; ++q)
        if (c(p, q) != 0.0) freq(p - q + nf) += c(p, q) * rpow(p + q);
    for (int jj = 0; jj < mth_; ++jj) {
      Complex acc = 0.0;
      for (int k = -nf; k <= nf; ++k) {
        if (freq(k + nf) == 0.0) continue;
        // e^{i k theta_j}: reuse the harmonics table when in range
        if (std::abs(k) <= degree_)
          acc += freq(k + nf) * harmonics_(k + degree_, jj);
        else
          acc += freq(k + nf) * std::pow(unit_row_[jj], k);
      }
      out(i, jj) = acc;
    }
  }
  return out;
}

CVector PolarGrid::boundary_values(const DiscFunction& f, int j) const {
  const int nf = f.degree();
  CVector g = f.boundary_fourier(j);
  CVector out(mth_);
  for (int jj = 0; jj < mth_; ++jj) {
    Complex acc = 0.0;
    for (int k = -nf; k <= nf; ++k) {
      if (g(k + nf) == 0.0) continue;
      if (std::abs(k) <= degree_)
        acc += g(k + nf) * harmonics_(k + degree_, jj);
      else
        acc += g(k + nf) * std::pow(unit_row_[jj], k);
    }
    out(jj) = acc;
  }
  return out;
}

DiscFunction PolarGrid::analyze(const std::vector<CMatrix>& values,
                                int out_degree) const {
  if (out_degree > degree_)
    throw TruncationError("analyze: output degree exceeds grid degree");
  const int m = static_cast<int>(values.size());
  DiscFunction f(m, out_degree);
  CVector hat(mr_);
  for (int j = 0; j < m; ++j) {
    for (int k = -out_degree; k <= out_degree; ++k) {
      // Angular analysis at frequency k.
      for (int i = 0; i < mr_; ++i) {
        Complex acc = 0.0;
        for (int jj = 0; jj < mth_; ++jj)
          acc += values[j](i, jj) * std::conj(harmonics_(k + degree_, jj));
        hat(i) = acc / double(mth_);
      }
      const int ak = std::abs(k);
      const int dk = (out_degree - ak) / 2;
      // Radial fit: hat / rho^{|k|} is a polynomial in s of degree <= dk.
      CVector scaled(mr_);
      for (int i = 0; i < mr_; ++i) scaled(i) = hat(i) / std::pow(rho_(i), ak);
      CVector leg(dk + 1);
      for (int q = 0; q <= dk; ++q) {
        Complex b = 0.0;
        for (int i = 0; i < mr_; ++i) b += w_(i) * legendre_at_s_(q, i) * scaled(i);
        leg(q) = (2.0 * q + 1.0) * b;
      }
      for (int l = 0; l <= dk; ++l) {
        Complex mono = 0.0;
        for (int q = l; q <= dk; ++q) mono += leg(q) * legendre_to_monomial_(q, l);
        int p = l + std::max(k, 0);
        int qq = l + std::max(-k, 0);
        f.set_coef(j, p, qq, mono);
      }
    }
  }
  return f;
}

}  // namespace jdisc
