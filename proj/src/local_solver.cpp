#include <jdisc/local_solver.hpp>

#include <jdisc/acs.hpp>
#include <jdisc/cauchy_green.hpp>
#include <jdisc/errors.hpp>
#include <jdisc/projection.hpp>

#include <cmath>
#include <random>

namespace jdisc {

namespace {

// Apply a real-linear map L v = C v + B conj(v) to a disc function,
// componentwise linear combination; the basis is closed under conjugation.
DiscFunction apply_real_linear(const CMatrix& c, const CMatrix& b,
                               const DiscFunction& f) {
  const int m = f.components();
  DiscFunction conj_f = f.conjugated();
  DiscFunction out(m, f.degree());
  for (int r = 0; r < m; ++r) {
    CMatrix acc = CMatrix::Zero(f.degree() + 1, f.degree() + 1);
    for (int j = 0; j < m; ++j) acc += c(r, j) * f.table(j) + b(r, j) * conj_f.table(j);
    out.table(r) = acc;
  }
  return out;
}

}  // namespace

DiscFunction AffineChart::invert(const DiscFunction& f) const {
  CMatrix c, b;
  split_linear_antilinear(s_inverse, c, b);
  DiscFunction out = apply_real_linear(c, b, f);
  out *= dilation;
  for (int j = 0; j < out.components(); ++j)
    out.set_coef(j, 0, 0, out.coef(j, 0, 0) + origin(j));
  return out;
}

CMatrix transform_matrix(const CMatrix& c, const CMatrix& b, const CMatrix& a) {
  const CMatrix num = c * a + b;
  const CMatrix den = c.conjugate() + b.conjugate() * a;
  return num * den.inverse();
}

ChartResult normalize_chart(const MatrixField& a, const CVector& p, double lambda0) {
  const int n = a.n();
  const CMatrix ap = a(p);
  if (!in_admissible_set(ap))
    throw ConversionDomainError("normalize_chart: A(p) outside the admissible set");
  const RMatrix id = RMatrix::Identity(2 * n, 2 * n);
  const RMatrix q = antilinear_real(ap);
  AffineChart chart;
  chart.origin = p;
  chart.s = (id + q).partialPivLu().inverse();
  chart.s_inverse = id + q;
  CMatrix cs, bs;
  split_linear_antilinear(chart.s, cs, bs);

  // Rescaled field in chart coordinates Z' = S (Z - p) / lambda:
  // A'(Z') = (C_S A + B_S)(conj(C_S) + conj(B_S) A)^{-1} at A = A(Z).
  std::mt19937_64 rng(20240501u);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto sampled_sup = [&](double lambda) {
    double worst = 0.0;
    std::mt19937_64 local(rng());
    for (int s = 0; s < 160; ++s) {
      CVector zp(n);
      double norm2 = 2.0;
      while (norm2 > 1.0) {
        for (int j = 0; j < n; ++j) zp(j) = Complex(u(local), u(local));
        norm2 = to_real(zp).squaredNorm();
      }
      AffineChart scaled = chart;
      scaled.dilation = lambda;
      CMatrix az = a(scaled.invert(zp));
      worst = std::max(worst, op_norm(transform_matrix(cs, bs, az)));
    }
    return worst;
  };

  double lambda = 1.0;
  double achieved = sampled_sup(lambda);
  int budget = 48;
  while (achieved > lambda0 && budget-- > 0) {
    lambda *= 0.5;
    achieved = sampled_sup(lambda);
  }
  if (achieved > lambda0)
    throw ScaleError("normalize_chart: lambda0 unreachable within dilation budget");
  chart.dilation = lambda;

  AffineChart cc = chart;
  MatrixField::Evaluator eval = [cc, cs, bs, a](const CVector& zp) {
    return transform_matrix(cs, bs, a(cc.invert(zp)));
  };
  MatrixField::Derivative deriv = [cc, cs, bs, a](const CVector& zp,
                                                  const CVector& dir) {
    const CVector z = cc.invert(zp);
    // direction pulled back through the affine chart
    const CVector dz =
        to_complex(RVector(cc.s_inverse * to_real(dir))) * cc.dilation;
    const CMatrix az = a(z);
    const CMatrix da = a.derivative(z, dz);
    const CMatrix den = (cs.conjugate() + bs.conjugate() * az).inverse();
    return CMatrix((cs * da) * den -
                   ((cs * az + bs) * den) * (bs.conjugate() * da) * den);
  };
  // The transform and the affine map are Lipschitz; keep a conservative bound.
  const double chart_gain = chart.s.cwiseAbs().sum();
  MatrixField rescaled(n, eval, deriv,
                       std::min(0.999, std::max(achieved * 1.5, 1e-12)), 0.0,
                       a.lipschitz() * lambda * chart_gain * 4.0,
                       a.description() + " (chart)");
  return ChartResult{chart, rescaled, achieved};
}

double cr_residual(const DiscFunction& z, const MatrixField& a, int grid_degree) {
  if (grid_degree <= 0) grid_degree = std::max(2 * z.degree(), 8);
  const PolarGrid& grid = PolarGrid::shared(grid_degree);
  const DiscFunction dzb = z.dbar();
  const DiscFunction dz = z.dz();
  double worst = 0.0;
  for (const Complex& zeta : grid.nodes_with_boundary()) {
    const CVector val = z.eval(zeta);
    const CVector rhs = a.is_zero()
                            ? CVector(CVector::Zero(z.components()))
                            : CVector(a(val) * dz.eval(zeta).conjugate());
    worst = std::max(worst, (dzb.eval(zeta) - rhs).norm());
  }
  return worst;
}

DiscFunction picard_map(const DiscFunction& z, const MatrixField& a) {
  const int n = z.degree();
  const int m = z.components();
  if (a.is_zero()) return DiscFunction(m, n);
  const PolarGrid& grid = PolarGrid::shared(n);
  const DiscFunction dz = z.dz();
  std::vector<CMatrix> zv(m), dzv(m);
  for (int j = 0; j < m; ++j) {
    zv[j] = grid.values(z, j);
    dzv[j] = grid.values(dz, j);
  }
  std::vector<CMatrix> prod(m, CMatrix(grid.radial_count(), grid.angle_count()));
  CVector point(m), tangent(m);
  for (int i = 0; i < grid.radial_count(); ++i)
    for (int jj = 0; jj < grid.angle_count(); ++jj) {
      for (int j = 0; j < m; ++j) {
        point(j) = zv[j](i, jj);
        tangent(j) = std::conj(dzv[j](i, jj));
      }
      const CVector out = a(point) * tangent;
      for (int j = 0; j < m; ++j) prod[j](i, jj) = out(j);
    }
  return cauchy_green(grid.analyze(prod, n - 1));
}

namespace {

void reanchor(DiscFunction& z, const DiscFunction& w) {
  // Restore Z(0) and Z_zeta(0) to the values carried by W.
  const DiscFunction dz = z.dz();
  const DiscFunction dw = w.dz();
  for (int j = 0; j < z.components(); ++j) {
    z.set_coef(j, 0, 0, z.coef(j, 0, 0) + (w.eval(j, 0.0) - z.eval(j, 0.0)));
    z.set_coef(j, 1, 0, z.coef(j, 1, 0) + (dw.eval(j, 0.0) - dz.eval(j, 0.0)));
  }
}

// One Newton update for F(Z) = Z - W - T(A(Z) conj(Z_zeta)): the correction
// solves (I - L) delta = -F(Z) with L the linearization of the integral term,
// applied by inner Picard iteration on the linear map.
DiscFunction newton_update(const DiscFunction& z, const DiscFunction& w,
                           const MatrixField& a) {
  const int n = z.degree();
  const int m = z.components();
  const PolarGrid& grid = PolarGrid::shared(n);
  const DiscFunction dz = z.dz();
  std::vector<CMatrix> zv(m), dzv(m);
  for (int j = 0; j < m; ++j) {
    zv[j] = grid.values(z, j);
    dzv[j] = grid.values(dz, j);
  }
  auto linear_term = [&](const DiscFunction& delta) {
    const DiscFunction ddz = delta.dz();
    std::vector<CMatrix> dv(m), ddv(m);
    for (int j = 0; j < m; ++j) {
      dv[j] = grid.values(delta, j);
      ddv[j] = grid.values(ddz, j);
    }
    std::vector<CMatrix> prod(m, CMatrix(grid.radial_count(), grid.angle_count()));
    CVector point(m), tangent(m), dpoint(m), dtangent(m);
    for (int i = 0; i < grid.radial_count(); ++i)
      for (int jj = 0; jj < grid.angle_count(); ++jj) {
        for (int j = 0; j < m; ++j) {
          point(j) = zv[j](i, jj);
          tangent(j) = std::conj(dzv[j](i, jj));
          dpoint(j) = dv[j](i, jj);
          dtangent(j) = std::conj(ddv[j](i, jj));
        }
        const CVector out = a(point) * dtangent + a.derivative(point, dpoint) * tangent;
        for (int j = 0; j < m; ++j) prod[j](i, jj) = out(j);
      }
    return cauchy_green(grid.analyze(prod, n - 1));
  };
  DiscFunction residual = z - w - picard_map(z, a);  // -F would flip signs below
  DiscFunction delta = residual;
  delta *= -1.0;
  // delta = -residual + L(delta), iterated to the linear fixed point.
  for (int it = 0; it < 40; ++it) {
    DiscFunction next = linear_term(delta) - residual;
    const double change = (next - delta).sup_norm();
    delta = next;
    if (change < 1e-14 * (1.0 + delta.sup_norm())) break;
  }
  return delta;
}

}  // namespace

LocalSolveReport solve_local(const LocalProblem& problem, const LocalOptions& opts) {
  const DiscFunction& w = problem.w;
  if (w.dbar().sup_norm() > 1e-12)
    throw ConstructionError("solve_local: W must be holomorphic (dbar W = 0)");
  LocalSolveReport rep;
  rep.z = w;
  if (problem.field.is_zero()) {
    rep.converged = true;
    rep.residual = 0.0;
    rep.residual_history.push_back(0.0);
    return rep;
  }
  double prev_diff = -1.0;
  DiscFunction z = w;
  for (int it = 1; it <= opts.max_iterations; ++it) {
    DiscFunction next = rep.newton_used ? z + newton_update(z, w, problem.field)
                                        : w + picard_map(z, problem.field);
    if (opts.anchor) reanchor(next, w);
    const double diff = (next - z).sup_norm();
    if (prev_diff > 0.0 && diff > 1e-13) {
      const double ratio = diff / prev_diff;
      rep.contraction_ratio = std::max(rep.contraction_ratio, ratio);
      if (ratio > 1.05 && it > 3 && !rep.newton_used)
        throw DivergenceError("solve_local: contraction bound violated", ratio);
      if (ratio > opts.newton_threshold && it > 2 && !rep.newton_used) {
        // Picard is too slow; switch to Newton-accelerated updates.
        rep.newton_used = true;
        next = z + newton_update(z, w, problem.field);
        if (opts.anchor) reanchor(next, w);
      }
    }
    prev_diff = diff;
    z = next;
    rep.iterations = it;
    const double res = cr_residual(z, problem.field);
    rep.residual_history.push_back(res);
    rep.residual = res;
    if (res <= opts.tolerance) {
      rep.converged = true;
      break;
    }
  }
  rep.z = z;
  return rep;
}

PointDiscResult solve_through_point(const MatrixField& a, const CVector& p,
                                    const CVector& v, int degree,
                                    const LocalOptions& opts) {
  ChartResult cr = normalize_chart(a, p, 0.25);
  const CVector v_chart = to_complex(RVector(cr.chart.s * to_real(v)));
  PointDiscResult out;
  out.chart = cr.chart;
  double lambda = 1.0;
  LocalOptions local = opts;
  local.anchor = true;
  for (int attempt = 0; attempt < 24; ++attempt) {
    DiscFunction w(a.n(), degree);
    for (int j = 0; j < a.n(); ++j) w.set_coef(j, 1, 0, lambda * v_chart(j));
    try {
      LocalSolveReport rep = solve_local({cr.rescaled, w}, local);
      if (rep.converged && rep.contraction_ratio < 0.9) {
        rep.z = cr.chart.invert(rep.z);
        rep.residual = cr_residual(rep.z, a);
        out.report = std::move(rep);
        out.direction_scale = lambda * cr.chart.dilation;
        return out;
      }
    } catch (const DivergenceError&) {
      // fall through to a smaller dyadic scale
    }
    lambda *= 0.5;
  }
  throw NonConvergenceError("solve_through_point: no dyadic direction scale converged");
}

FamilyResult local_family(const MatrixField& a, const CVector& p, const CVector& v,
                          double perturbation, int grid_points, int degree,
                          const LocalOptions& opts) {
  FamilyResult out;
  PointDiscResult base = solve_through_point(a, p, v, degree, opts);
  out.entries.push_back({p, v, base.report});
  std::mt19937_64 rng(1234u);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int n = a.n();
  for (int g = 1; g < grid_points; ++g) {
    CVector dp(n), dv(n);
    for (int j = 0; j < n; ++j) {
      dp(j) = perturbation * Complex(u(rng), u(rng));
      dv(j) = perturbation * Complex(u(rng), u(rng));
    }
    const CVector p2 = p + dp;
    const CVector v2 = v + dv;
    PointDiscResult r = solve_through_point(a, p2, v2, degree, opts);
    const double dev = (r.report.z - base.report.z).sup_norm();
    const double data = std::sqrt(to_real(dp).squaredNorm() + to_real(dv).squaredNorm());
    out.max_deviation = std::max(out.max_deviation, dev);
    if (data > 0.0)
      out.continuity_constant = std::max(out.continuity_constant, dev / data);
    out.entries.push_back({p2, v2, std::move(r.report)});
  }
  return out;
}

}  // namespace jdisc
