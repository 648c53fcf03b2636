#include <jdisc/rh_linear.hpp>

#include <jdisc/cauchy_green.hpp>
#include <jdisc/errors.hpp>

#include <cmath>
#include <limits>

namespace jdisc {

BoundaryMatrix BoundaryMatrix::constant(const CMatrix& m) {
  BoundaryMatrix p(static_cast<int>(m.rows()), 0);
  for (int r = 0; r < p.n_; ++r)
    for (int c = 0; c < p.n_; ++c) p.set_fourier(r, c, 0, m(r, c));
  return p;
}

BoundaryMatrix BoundaryMatrix::diagonal_conjugate_trace(const DiscFunction& z) {
  const int n = z.components();
  const int nd = z.degree();
  BoundaryMatrix p(n, nd);
  for (int j = 0; j < n; ++j) {
    CVector hat = z.boundary_fourier(j);  // indices k + nd
    for (int k = -nd; k <= nd; ++k)
      p.set_fourier(j, j, -k, std::conj(hat(k + nd)));
  }
  return p;
}

int BoundaryMatrix::degree(double tol) const {
  double scale = 0.0;
  for (const auto& v : data_) scale = std::max(scale, v.cwiseAbs().maxCoeff());
  if (scale == 0.0) return 0;
  int deg = 0;
  for (int k = 1; k <= kmax_; ++k)
    for (int r = 0; r < n_; ++r)
      for (int c = 0; c < n_; ++c)
        if (std::abs(fourier(r, c, k)) > tol * scale ||
            std::abs(fourier(r, c, -k)) > tol * scale)
          deg = std::max(deg, k);
  return deg;
}

CMatrix BoundaryMatrix::eval(double theta) const {
  CMatrix m(n_, n_);
  for (int r = 0; r < n_; ++r)
    for (int c = 0; c < n_; ++c) {
      Complex acc = 0.0;
      for (int k = -kmax_; k <= kmax_; ++k)
        acc += fourier(r, c, k) * Complex(std::cos(k * theta), std::sin(k * theta));
      m(r, c) = acc;
    }
  return m;
}

double BoundaryMatrix::min_abs_det(int samples) const {
  if (samples <= 0) samples = std::max(8 * (kmax_ + 1) * n_, 64);
  double worst = std::numeric_limits<double>::max();
  for (int i = 0; i < samples; ++i)
    worst = std::min(worst, std::abs(eval(2.0 * kPi * i / samples).determinant()));
  return worst;
}

int BoundaryMatrix::det_winding(int samples) const {
  if (samples <= 0) samples = std::max(8 * (kmax_ + 1) * n_, 64);
  Complex prev = eval(0.0).determinant();
  if (std::abs(prev) == 0.0)
    throw LopatinskiError("det_winding: det P vanishes on a sample");
  double total = 0.0;
  for (int i = 1; i <= samples; ++i) {
    Complex cur = eval(2.0 * kPi * (i % samples) / samples).determinant();
    if (std::abs(cur) == 0.0)
      throw LopatinskiError("det_winding: det P vanishes on a sample");
    total += std::arg(cur / prev);
    prev = cur;
  }
  return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

namespace {

// Convolution (P f0)_r in Fourier from entry data and the boundary data of f0.
CVector product_fourier(const BoundaryMatrix& p, const DiscFunction& f0, int r,
                        int kfreq) {
  const int nd = f0.degree();
  const int dp = p.stored_degree();
  CVector out = CVector::Zero(2 * kfreq + 1);
  for (int j = 0; j < p.n(); ++j) {
    CVector hat = f0.boundary_fourier(j);
    for (int l1 = -dp; l1 <= dp; ++l1) {
      const Complex pc = p.fourier(r, j, l1);
      if (pc == 0.0) continue;
      for (int l2 = -nd; l2 <= nd; ++l2) {
        const int l = l1 + l2;
        if (std::abs(l) > kfreq) continue;
        out(l + kfreq) += pc * hat(l2 + nd);
      }
    }
  }
  return out;
}

// Real Fourier folding: Re(y) has coefficient (y(m) + conj(y(-m)))/2 at m.
Complex fold(const CVector& yhat, int kfreq, int m) {
  return 0.5 * (yhat(m + kfreq) + std::conj(yhat(-m + kfreq)));
}

DiscFunction holomorphic_from_vector(const RVector& x, int n, int nd) {
  DiscFunction f(n, nd);
  const int ncoef = nd + 1;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k <= nd; ++k)
      f.set_coef(j, k, 0,
                 Complex(x(2 * (j * ncoef + k)), x(2 * (j * ncoef + k) + 1)));
  return f;
}

DiscFunction lift_degree(const DiscFunction& f, int nd) {
  if (f.degree() == nd) return f;
  DiscFunction out(f.components(), nd);
  for (int j = 0; j < f.components(); ++j)
    for (int p = 0; p <= f.degree(); ++p)
      for (int q = 0; p + q <= f.degree(); ++q)
        out.set_coef(j, p, q, f.coef(j, p, q));
  return out;
}

}  // namespace

struct RHOperator::Impl {
  BoundaryMatrix p;
  std::vector<PointConstraint> constraints;
  std::vector<int> offsets;
  int degree = 0;
  int kfreq = 0;
  int boundary_rows = 0, constraint_rows = 0, cols = 0;
  RMatrix a;
  Eigen::BDCSVD<RMatrix> svd;

  int row_base(int r) const { return r * (2 * kfreq + 1); }

  void build() {
    const int n = p.n();
    const int nd = degree;
    const int ncoef = nd + 1;
    kfreq = nd + p.degree();
    boundary_rows = n * (2 * kfreq + 1);
    constraint_rows = 0;
    for (const auto& c : constraints) constraint_rows += c.full ? 2 : 1;
    cols = 2 * n * ncoef + static_cast<int>(offsets.size());
    a = RMatrix::Zero(boundary_rows + constraint_rows, cols);

    // Boundary block: the response Re(P_{r j} i^s e^{i k theta}) written in
    // Fourier coefficients, directly from the entry data of P.
    for (int j = 0; j < n; ++j)
      for (int k = 0; k <= nd; ++k) {
        const int col = 2 * (j * ncoef + k);
        for (int r = 0; r < n; ++r)
          for (int m = 0; m <= kfreq; ++m) {
            const Complex pa = p.fourier(r, j, m - k);
            const Complex pb = std::conj(p.fourier(r, j, -m - k));
            if (pa == 0.0 && pb == 0.0) continue;
            const Complex cre = 0.5 * (pa + pb);
            const Complex cim = 0.5 * Complex(0, 1) * (pa - pb);
            if (m == 0) {
              a(row_base(r), col) = cre.real();
              a(row_base(r), col + 1) = cim.real();
            } else {
              const int rr = row_base(r) + 2 * m - 1;
              a(rr, col) = cre.real();
              a(rr, col + 1) = cim.real();
              a(rr + 1, col) = cre.imag();
              a(rr + 1, col + 1) = cim.imag();
            }
          }
      }
    for (size_t o = 0; o < offsets.size(); ++o)
      a(row_base(offsets[o]), 2 * n * ncoef + static_cast<int>(o)) = -0.5;

    int row = boundary_rows;
    for (const auto& c : constraints) {
      CVector pow(nd + 1);
      pow(0) = 1.0;
      for (int k = 1; k <= nd; ++k) pow(k) = pow(k - 1) * c.point;
      for (int k = 0; k <= nd; ++k) {
        const Complex w = c.weight * pow(k);
        const int col = 2 * (c.component * ncoef + k);
        if (c.full) {
          a(row, col) = w.real();
          a(row, col + 1) = -w.imag();
          a(row + 1, col) = w.imag();
          a(row + 1, col + 1) = w.real();
        } else {
          a(row, col) = w.imag();
          a(row, col + 1) = w.real();
        }
      }
      row += c.full ? 2 : 1;
    }
    svd.compute(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-8);
  }

  RVector build_rhs(const DiscFunction& particular,
                    const std::vector<CVector>& boundary_fourier,
                    const std::vector<Complex>& values) const {
    const int n = p.n();
    RVector b = RVector::Zero(a.rows());
    for (int r = 0; r < n; ++r) {
      CVector yp = product_fourier(p, particular, r, kfreq);
      for (int m = 0; m <= kfreq; ++m) {
        Complex ghat = 0.0;
        if (r < static_cast<int>(boundary_fourier.size()) &&
            m < boundary_fourier[r].size())
          ghat = boundary_fourier[r](m);
        const Complex rhs = ghat - fold(yp, kfreq, m);
        if (m == 0) {
          b(row_base(r)) = rhs.real();
        } else {
          b(row_base(r) + 2 * m - 1) = rhs.real();
          b(row_base(r) + 2 * m) = rhs.imag();
        }
      }
    }
    int row = boundary_rows;
    for (size_t ci = 0; ci < constraints.size(); ++ci) {
      const auto& c = constraints[ci];
      const Complex value = ci < values.size() ? values[ci] : c.value;
      const Complex part =
          value - c.weight * particular.eval(c.component, c.point);
      if (c.full) {
        b(row) = part.real();
        b(row + 1) = part.imag();
        row += 2;
      } else {
        b(row) = part.imag();
        row += 1;
      }
    }
    return b;
  }
};

RHOperator::RHOperator(const BoundaryMatrix& p,
                       std::vector<PointConstraint> constraints,
                       std::vector<int> free_offset_components, int degree)
    : impl_(std::make_unique<Impl>()) {
  impl_->p = p;
  impl_->constraints = std::move(constraints);
  impl_->offsets = std::move(free_offset_components);
  impl_->degree = degree;
  impl_->build();
}

RHOperator::~RHOperator() = default;
RHOperator::RHOperator(RHOperator&&) noexcept = default;

int RHOperator::rank() const { return static_cast<int>(impl_->svd.rank()); }
int RHOperator::kernel_dim() const { return impl_->cols - rank(); }
int RHOperator::coker_dim() const {
  return static_cast<int>(impl_->a.rows()) - rank();
}

RHSolution RHOperator::solve(const DiscFunction& interior,
                             const std::vector<CVector>& boundary_fourier,
                             const std::vector<Complex>& constraint_values) const {
  const int n = impl_->p.n();
  const int nd = impl_->degree;
  if (interior.components() > 0 && interior.effective_degree() > nd - 1)
    throw TruncationError("solve_linear_rh: interior data exceeds degree N - 1");
  DiscFunction particular = interior.components() == 0
                                ? DiscFunction(n, nd)
                                : lift_degree(cauchy_green(interior), nd);
  RVector b = impl_->build_rhs(particular, boundary_fourier, constraint_values);
  RVector x = impl_->svd.solve(b);
  RHSolution sol;
  sol.rank = rank();
  sol.kernel_dim = kernel_dim();
  sol.coker_dim = coker_dim();
  sol.f = particular +
          holomorphic_from_vector(RVector(x.head(2 * n * (nd + 1))), n, nd);
  sol.offsets.resize(impl_->offsets.size());
  for (int o = 0; o < sol.offsets.size(); ++o)
    sol.offsets(o) = x(2 * n * (nd + 1) + o);
  RVector resid = impl_->a * x - b;
  sol.ls_residual = resid.norm();
  if (sol.ls_residual > 1e-10 * (1.0 + b.norm()) && resid.norm() > 0.0)
    sol.obstruction = resid / resid.norm();

  // Honest sample-space check of the boundary condition.
  const int msamp = std::max(4 * nd, 2 * impl_->kfreq + 8);
  double sup = 0.0;
  for (int i = 0; i < msamp; ++i) {
    const double th = 2.0 * kPi * i / msamp;
    const Complex zeta(std::cos(th), std::sin(th));
    CMatrix pm = impl_->p.eval(th);
    CVector fv = sol.f.eval(zeta);
    for (int r = 0; r < n; ++r) {
      double g = 0.0;
      if (r < static_cast<int>(boundary_fourier.size())) {
        const CVector& gh = boundary_fourier[r];
        if (gh.size() > 0) g = gh(0).real();
        for (int m = 1; m < gh.size(); ++m)
          g += 2.0 * (gh(m) * Complex(std::cos(m * th), std::sin(m * th))).real();
      }
      double offset = 0.0;
      for (size_t o = 0; o < impl_->offsets.size(); ++o)
        if (impl_->offsets[o] == r) offset = -0.5 * sol.offsets(o);
      const double lhs = (pm.row(r) * fv).value().real() + offset;
      sup = std::max(sup, std::abs(lhs - g));
    }
  }
  sol.boundary_sup = sup;
  return sol;
}

RHSolution solve_linear_rh(const LinearRHProblem& prob) {
  if (prob.p.min_abs_det() < 1e-10)
    throw LopatinskiError("solve_linear_rh: det P vanishes on the boundary");
  RHOperator op(prob.p, prob.constraints, prob.free_offset_components,
                prob.degree);
  std::vector<Complex> values;
  for (const auto& c : prob.constraints) values.push_back(c.value);
  return op.solve(prob.interior, prob.boundary_fourier, values);
}

LApplied apply_L(const BoundaryMatrix& p, const DiscFunction& f, int samples) {
  if (samples <= 0) samples = 4 * std::max(f.degree(), 1);
  LApplied out;
  out.interior = f.dbar();
  out.boundary.resize(p.n(), samples);
  for (int i = 0; i < samples; ++i) {
    const double th = 2.0 * kPi * i / samples;
    const Complex zeta(std::cos(th), std::sin(th));
    const CMatrix pm = p.eval(th);
    const CVector fv = f.eval(zeta);
    for (int r = 0; r < p.n(); ++r)
      out.boundary(r, i) = (pm.row(r) * fv).value().real();
  }
  return out;
}

IndexReport fredholm_index(const BoundaryMatrix& p,
                           const std::vector<PointConstraint>& constraints,
                           const std::vector<int>& free_offset_components,
                           int degree) {
  if (p.min_abs_det() < 1e-10)
    throw LopatinskiError("fredholm_index: Lopatinski condition fails");
  IndexReport rep;
  rep.det_winding = p.det_winding();
  int crows = 0;
  for (const auto& c : constraints) crows += c.full ? 2 : 1;
  rep.formula_index = p.n() - 2 * rep.det_winding +
                      static_cast<int>(free_offset_components.size()) - crows;
  for (int nd : {degree, degree + 4, degree + 8}) {
    RHOperator op(p, constraints, free_offset_components, nd);
    const int index = op.kernel_dim() - op.coker_dim();
    rep.per_degree.emplace_back(nd, index);
    if (index == rep.formula_index) {
      rep.index = index;
      rep.stabilized_at = nd;
      rep.kernel_dim = op.kernel_dim();
      rep.coker_dim = op.coker_dim();
      return rep;
    }
  }
  throw ResolutionError(
      "fredholm_index: rank count never matched the det-winding formula");
}

CVector real_fourier_half(const RVector& samples, int kmax) {
  const int msamp = static_cast<int>(samples.size());
  CVector out(kmax + 1);
  for (int m = 0; m <= kmax; ++m) {
    Complex acc = 0.0;
    for (int i = 0; i < msamp; ++i) {
      const double th = 2.0 * kPi * i / msamp;
      acc += samples(i) * Complex(std::cos(m * th), -std::sin(m * th));
    }
    out(m) = acc / double(msamp);
  }
  return out;
}

double dbar_distance_witness(int degree) {
  const int msamp = std::max(8 * (degree + 1), 64);
  RVector weights = RVector::Constant(msamp, 1.0 / msamp);
  CVector target(msamp);
  CMatrix basis(msamp, degree + 1);
  for (int i = 0; i < msamp; ++i) {
    const double th = 2.0 * kPi * i / msamp;
    const Complex zeta(std::cos(th), std::sin(th));
    target(i) = std::conj(zeta);
    Complex pw = 1.0;
    for (int k = 0; k <= degree; ++k) {
      basis(i, k) = pw;
      pw *= zeta;
    }
  }
  double best = std::numeric_limits<double>::max();
  for (int iter = 0; iter < 60; ++iter) {
    // Weighted least squares, reweighted toward the minimax fit (Lawson).
    CMatrix g = CMatrix::Zero(degree + 1, degree + 1);
    CVector rhs = CVector::Zero(degree + 1);
    for (int i = 0; i < msamp; ++i) {
      for (int k = 0; k <= degree; ++k) {
        rhs(k) += weights(i) * std::conj(basis(i, k)) * target(i);
        for (int l = 0; l <= degree; ++l)
          g(k, l) += weights(i) * std::conj(basis(i, k)) * basis(i, l);
      }
    }
    CVector coef = g.ldlt().solve(rhs);
    RVector resid(msamp);
    for (int i = 0; i < msamp; ++i)
      resid(i) = std::abs(target(i) - (basis.row(i) * coef).value());
    const double sup = resid.maxCoeff();
    best = std::min(best, sup);
    const double total = weights.dot(resid);
    if (total <= 0.0) break;
    RVector next = weights.cwiseProduct(resid) / total;
    if ((next - weights).cwiseAbs().maxCoeff() < 1e-12) break;
    weights = next;
  }
  return best;
}

}  // namespace jdisc
