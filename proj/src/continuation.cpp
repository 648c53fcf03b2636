#include <jdisc/continuation.hpp>

#include <jdisc/acs.hpp>
#include <jdisc/cauchy_green.hpp>
#include <jdisc/errors.hpp>
#include <jdisc/local_solver.hpp>
#include <jdisc/projection.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace jdisc {

namespace {

// Projection of A(Z) conj(Z_zeta) to degree out_degree from precomputed
// grid values of Z and of dZ/dzeta.
DiscFunction project_nonlinearity(const PolarGrid& grid, const MatrixField& a,
                                  const std::vector<CMatrix>& zvals,
                                  const std::vector<CMatrix>& dzvals,
                                  int out_degree) {
  const int m = static_cast<int>(zvals.size());
  std::vector<CMatrix> prod(m, CMatrix(grid.radial_count(), grid.angle_count()));
  CVector point(m), tangent(m);
  for (int i = 0; i < grid.radial_count(); ++i)
    for (int jj = 0; jj < grid.angle_count(); ++jj) {
      for (int j = 0; j < m; ++j) {
        point(j) = zvals[j](i, jj);
        tangent(j) = std::conj(dzvals[j](i, jj));
      }
      const CVector out = a(point) * tangent;
      for (int j = 0; j < m; ++j) prod[j](i, jj) = out(j);
    }
  return grid.analyze(prod, out_degree);
}

// Interior defect of the discrete equation, dbar Z - proj(A(Z) conj(Z_zeta)).
DiscFunction discrete_interior_residual(const DiscFunction& z,
                                        const MatrixField& a) {
  DiscFunction res = z.dbar().resized(z.degree() - 1);
  if (a.is_zero()) return res;
  const PolarGrid& grid = PolarGrid::shared(z.degree());
  const int m = z.components();
  const DiscFunction dz = z.dz();
  std::vector<CMatrix> zvals(m), dzvals(m);
  for (int j = 0; j < m; ++j) {
    zvals[j] = grid.values(z, j);
    dzvals[j] = grid.values(dz, j);
  }
  res -= project_nonlinearity(grid, a, zvals, dzvals, z.degree() - 1);
  return res;
}

// Boundary samples of rho(Z) = (|z|^2 - zr^2, |w_j|^2 - wr_j^2).
RMatrix rho_samples(const DiscFunction& z, const TorusSpec& torus, int msamp) {
  const int n = z.components();
  RMatrix rho(n, msamp);
  for (int i = 0; i < msamp; ++i) {
    const double th = 2.0 * kPi * i / msamp;
    const Complex zeta(std::cos(th), std::sin(th));
    const CVector v = z.eval(zeta);
    rho(0, i) = std::norm(v(0)) - torus.z_radius() * torus.z_radius();
    for (int j = 1; j < n; ++j) {
      const double wr = torus.w_radius(j - 1);
      rho(j, i) = std::norm(v(j)) - wr * wr;
    }
  }
  return rho;
}

double constraint_defect(const DiscFunction& z,
                         const std::vector<PointConstraint>& normalization) {
  double worst = 0.0;
  for (const auto& c : normalization) {
    const Complex v = c.weight * z.eval(c.component, c.point) - c.value;
    worst = std::max(worst, c.full ? std::abs(v) : std::abs(v.imag()));
  }
  return worst;
}

std::vector<int> all_w_components(int n) {
  std::vector<int> out;
  for (int j = 1; j < n; ++j) out.push_back(j);
  return out;
}

}  // namespace

DiscCertificate certify(const DiscFunction& z, const MatrixField& a,
                        const TorusSpec& torus,
                        const std::vector<PointConstraint>& normalization) {
  DiscCertificate cert;
  cert.cr_residual = cr_residual(z, a);
  cert.boundary_residual = boundary_residual(z, torus);
  cert.normalization_residual = constraint_defect(z, normalization);
  cert.area = symplectic_area(z);
  cert.energy = energy(z, a);
  const BoundaryLoop loop = BoundaryLoop::of(z);
  cert.windings.clear();
  for (int j = 0; j < z.components(); ++j)
    cert.windings.push_back(winding_number(loop, j));
  double mw = std::numeric_limits<double>::max();
  for (int j = 1; j < z.components(); ++j)
    mw = std::min(mw, loop.min_modulus(j));
  cert.min_w = z.components() > 1 ? mw : 0.0;
  cert.maslov = maslov_index(z, torus,
                             std::max(1e-6, 10.0 * cert.boundary_residual));
  return cert;
}

std::vector<PointConstraint> normalization_section3(const TorusSpec& torus,
                                                    const CVector& p) {
  std::vector<PointConstraint> out;
  out.push_back({0, 0.0, 1.0, true, 0.0});  // z(0) = 0
  const Complex pz = p(0);
  out.push_back({0, 1.0, std::conj(pz) / std::abs(pz), false, std::abs(pz)});
  for (int j = 1; j < p.size(); ++j) {
    const Complex pw = p(j);
    out.push_back({j, 1.0, std::conj(pw) / std::abs(pw), false, std::abs(pw)});
  }
  (void)torus;
  return out;
}

std::vector<PointConstraint> normalization_section5(const TorusSpec& torus,
                                                    const CVector& anchor) {
  std::vector<PointConstraint> out;
  for (int j = 0; j < anchor.size(); ++j)
    out.push_back({j, 0.0, 1.0, true, anchor(j)});
  out.push_back({0, 1.0, 1.0, false, torus.z_radius()});
  return out;
}

NewtonResult newton_correct(const DiscFunction& z0, const MatrixField& a,
                            const TorusSpec& torus,
                            const std::vector<PointConstraint>& normalization,
                            const NewtonOptions& opts, bool free_radii) {
  const int n = z0.components();
  const int nd = z0.degree();
  NewtonResult out;
  out.torus = torus;
  DiscFunction z = z0;
  const int msamp = 4 * nd + 8;

  auto residual_of = [&](const DiscFunction& zz, const TorusSpec& tor) {
    const double rint = discrete_interior_residual(zz, a).coef_norm();
    const double rbd = rho_samples(zz, tor, msamp).cwiseAbs().maxCoeff();
    const double rc = constraint_defect(zz, normalization);
    return rint + rbd + rc;
  };

  double res = residual_of(z, out.torus);
  out.residual_history.push_back(res);
  const double res0 = res;
  for (int it = 1; it <= opts.max_iterations; ++it) {
    if (res <= opts.tolerance) break;
    // Linearized boundary matrix and right sides at the current disc.
    BoundaryMatrix p = BoundaryMatrix::diagonal_conjugate_trace(z);
    if (p.min_abs_det() < 1e-9)
      throw BasinError("newton_correct: boundary trace degenerates (Lopatinski)");
    std::vector<int> offsets =
        free_radii ? all_w_components(n) : std::vector<int>{};
    RHOperator op(p, normalization, offsets, nd);
    const int kfreq = nd + p.degree();
    RMatrix rho = rho_samples(z, out.torus, msamp);
    std::vector<CVector> g(n);
    for (int r = 0; r < n; ++r)
      g[r] = real_fourier_half(RVector(-0.5 * rho.row(r).transpose()), kfreq);
    std::vector<Complex> values;
    for (const auto& c : normalization)
      values.push_back(c.value - c.weight * z.eval(c.component, c.point));

    DiscFunction base = discrete_interior_residual(z, a);
    base *= -1.0;

    const PolarGrid& grid = PolarGrid::shared(nd);
    const int m = n;
    std::vector<CMatrix> zvals(m), dzconj(m);
    DiscFunction dz = z.dz();
    for (int j = 0; j < m; ++j) {
      zvals[j] = grid.values(z, j);
      dzconj[j] = grid.values(dz, j).conjugate();
    }

    RHSolution step = op.solve(base, g, values);
    if (!a.is_zero()) {
      // Inner correction: fold the A-dependent part of the linearization into
      // the interior right side and re-solve against the same factorization.
      for (int inner = 0; inner < opts.inner_cap; ++inner) {
        const DiscFunction fd = step.f;
        const DiscFunction fdz = fd.dz();
        std::vector<CMatrix> fv(m), fdzv(m);
        for (int j = 0; j < m; ++j) {
          fv[j] = grid.values(fd, j);
          fdzv[j] = grid.values(fdz, j);
        }
        std::vector<CMatrix> prod(m,
                                  CMatrix(grid.radial_count(), grid.angle_count()));
        CVector point(m), tangent(m), dpoint(m), dtangent(m);
        for (int i = 0; i < grid.radial_count(); ++i)
          for (int jj = 0; jj < grid.angle_count(); ++jj) {
            for (int j = 0; j < m; ++j) {
              point(j) = zvals[j](i, jj);
              tangent(j) = dzconj[j](i, jj);
              dpoint(j) = fv[j](i, jj);
              dtangent(j) = std::conj(fdzv[j](i, jj));
            }
            const CVector v =
                a(point) * dtangent + a.derivative(point, dpoint) * tangent;
            for (int j = 0; j < m; ++j) prod[j](i, jj) = v(j);
          }
        DiscFunction interior = base + grid.analyze(prod, nd - 1).resized(nd);
        RHSolution next = op.solve(interior.resized(nd), g, values);
        const double change = (next.f - step.f).coef_norm();
        step = std::move(next);
        if (change <= 1e-13 * (1.0 + step.f.coef_norm())) break;
      }
    }
    if (step.obstruction.size() > 0) out.obstruction = step.obstruction;
    z += step.f;
    if (free_radii) {
      for (int j = 1; j < n; ++j) {
        double wr2 = out.torus.w_radius(j - 1) * out.torus.w_radius(j - 1);
        wr2 += step.offsets(j - 1);
        if (wr2 <= 0.0)
          throw BasinError("newton_correct: torus radius lost positivity");
        out.torus.t(j - 1) =
            out.torus.squared_convention ? wr2 : std::sqrt(wr2);
      }
    }
    res = residual_of(z, out.torus);
    out.residual_history.push_back(res);
    out.iterations = it;
    if (res > opts.divergence_factor * std::max(res0, 1e-8))
      throw BasinError("newton_correct: residual diverged");
  }
  out.converged = res <= opts.tolerance;
  out.solution.z = z;
  out.solution.cert = certify(z, a, out.torus, normalization);
  return out;
}

namespace {

struct EngineConfig {
  MatrixField base;
  TorusSpec torus0;
  DiscFunction start;
  std::vector<PointConstraint> normalization;
  bool free_radii = false;
  TraceControls controls;
  double eta = 0.0;
  std::vector<int> expected_windings;
};

HomotopyTrace run_trace(const EngineConfig& cfg) {
  HomotopyTrace trace;
  trace.eta = cfg.eta;
  const TraceControls& ctl = cfg.controls;
  const double area_target =
      kPi * cfg.torus0.z_radius() * cfg.torus0.z_radius();

  auto certificate_ok = [&](const DiscCertificate& c, std::string& why) {
    if (c.cr_residual > ctl.certificate_tol) {
      why = "cr residual";
      return false;
    }
    if (c.boundary_residual > ctl.certificate_tol) {
      why = "boundary residual";
      return false;
    }
    if (c.normalization_residual > ctl.certificate_tol) {
      why = "normalization";
      return false;
    }
    if (std::abs(c.area - area_target) > ctl.area_tol) {
      why = "area";
      return false;
    }
    if (c.windings != cfg.expected_windings) {
      why = "winding";
      return false;
    }
    if (cfg.start.components() > 1 && c.min_w < cfg.eta) {
      why = "separation";
      return false;
    }
    return true;
  };

  // t = 0: the exact standard disc.
  {
    TracePoint p0;
    p0.t = 0.0;
    p0.torus = cfg.torus0;
    p0.sol.z = cfg.start;
    p0.sol.cert =
        certify(cfg.start, cfg.base.scaled(0.0), cfg.torus0, cfg.normalization);
    std::string why;
    if (!certificate_ok(p0.sol.cert, why)) {
      trace.failure = "start disc fails certificate: " + why;
      return trace;
    }
    trace.points.push_back(std::move(p0));
  }

  double t = 0.0;
  double step = ctl.initial_step;
  std::string last_reason = "newton failure";
  while (t < 1.0 - 1e-14) {
    if (static_cast<int>(trace.points.size()) > ctl.max_steps) {
      trace.failure = "step budget exceeded";
      return trace;
    }
    const double t_try = std::min(1.0, t + step);
    // Predictor: previous solution, secant extrapolation when available.
    const TracePoint& last = trace.points.back();
    DiscFunction z_pred = last.sol.z;
    TorusSpec torus_pred = last.torus;
    if (trace.points.size() >= 2) {
      const TracePoint& prev = trace.points[trace.points.size() - 2];
      const double dt_old = last.t - prev.t;
      if (dt_old > 1e-12) {
        const double s = (t_try - last.t) / dt_old;
        DiscFunction diff = last.sol.z - prev.sol.z;
        diff *= s;
        z_pred += diff;
        if (cfg.free_radii)
          torus_pred.t += s * (last.torus.t - prev.torus.t);
      }
    }
    bool accepted = false;
    try {
      NewtonResult nr =
          newton_correct(z_pred, cfg.base.scaled(t_try), torus_pred,
                         cfg.normalization, ctl.newton, cfg.free_radii);
      if (nr.converged && nr.iterations <= 8) {
        std::string why;
        if (certificate_ok(nr.solution.cert, why)) {
          if (cfg.free_radii) {
            for (int j = 0; j < nr.torus.t.size(); ++j) {
              const double wr = nr.torus.w_radius(j);
              if (wr < 1e-4 || wr > 1e4) {
                trace.failure = "boundedness alarm: torus radius drifted";
                return trace;
              }
            }
          }
          TracePoint pt;
          pt.t = t_try;
          pt.sol = std::move(nr.solution);
          pt.torus = nr.torus;
          pt.step = step;
          pt.newton_iterations = nr.iterations;
          trace.points.push_back(std::move(pt));
          t = t_try;
          accepted = true;
          if (nr.iterations <= 3) step = std::min(step * 1.6, 1.0 - t + 1e-16);
        } else {
          last_reason = why + " certificate";
        }
      } else {
        last_reason = "newton did not converge";
      }
    } catch (const BasinError& e) {
      last_reason = e.what();
    } catch (const LopatinskiError& e) {
      last_reason = e.what();
    }
    if (!accepted) {
      step *= 0.5;
      if (step < ctl.min_step) {
        if (last_reason.find("separation") != std::string::npos)
          trace.failure = "separation alarm: min |w| fell below eta";
        else
          trace.failure = "continuation breakdown: " + last_reason;
        std::vector<DiscFunction> recent;
        const size_t take = std::min<size_t>(trace.points.size(), 4);
        for (size_t i = trace.points.size() - take; i < trace.points.size(); ++i)
          recent.push_back(trace.points[i].sol.z);
        if (recent.size() >= 2) trace.diagnostic = bubbling_diagnostic(recent);
        return trace;
      }
    }
  }
  trace.completed = true;
  return trace;
}

double default_eta(const MatrixField& a, const TorusSpec& torus) {
  if (a.support_radius() > 0.0) return a.support_radius();
  double mw = std::numeric_limits<double>::max();
  for (int j = 0; j < torus.t.size(); ++j) mw = std::min(mw, torus.w_radius(j));
  return torus.t.size() > 0 ? 0.1 * mw : 0.0;
}

}  // namespace

HomotopyTrace trace_family(const MatrixField& a, const CVector& p,
                           const TorusSpec& torus, const TraceControls& controls) {
  torus.validate();
  const int n = torus.n();
  if (a.n() != n || p.size() != n)
    throw ConstructionError("trace_family: dimension mismatch");
  if (std::abs(std::abs(p(0)) - torus.z_radius()) > 1e-10)
    throw ConstructionError("trace_family: normalization point off the torus");
  for (int j = 1; j < n; ++j)
    if (std::abs(std::abs(p(j)) - torus.w_radius(j - 1)) > 1e-10)
      throw ConstructionError("trace_family: normalization point off the torus");
  // Assumption (ii): the axis z -> (z, 0) stays J-complex, i.e. the first
  // column of A vanishes on the axis.
  for (double x : {-0.9, -0.3, 0.2, 0.7})
    for (double y : {-0.8, 0.1, 0.6}) {
      CVector axis = CVector::Zero(n);
      axis(0) = Complex(x, y);
      if (a(axis).col(0).cwiseAbs().maxCoeff() > 1e-12)
        throw ConstructionError(
            "trace_family: axis map z -> (z, 0) is not J-complex for this field");
    }

  EngineConfig cfg;
  cfg.base = a;
  cfg.torus0 = torus;
  cfg.controls = controls;
  cfg.free_radii = false;
  cfg.normalization = normalization_section3(torus, p);
  cfg.eta = controls.eta > 0.0 ? controls.eta : default_eta(a, torus);
  cfg.expected_windings.assign(n, 0);
  cfg.expected_windings[0] = 1;
  DiscFunction start(n, controls.degree);
  start.set_coef(0, 1, 0, p(0));  // z = p_z * zeta has z(1) = p_z, |z| = zr
  for (int j = 1; j < n; ++j) start.set_coef(j, 0, 0, p(j));
  cfg.start = std::move(start);
  return run_trace(cfg);
}

FoliationResult sweep_foliation(const MatrixField& a, const TorusSpec& torus,
                                int q_samples, const TraceControls& controls,
                                int grid_degree) {
  if (torus.n() != 2)
    throw ConstructionError("sweep_foliation: the foliation sweep is for n = 2");
  FoliationResult out;
  out.grid_degree = grid_degree > 0 ? grid_degree : controls.degree;
  const double wr = torus.w_radius(0);
  const double zr = torus.z_radius();
  for (int l = 0; l < q_samples; ++l) {
    const double phi = 2.0 * kPi * l / q_samples;
    CVector p(2);
    p(0) = zr;
    p(1) = wr * Complex(std::cos(phi), std::sin(phi));
    out.traces.push_back(trace_family(a, p, torus, controls));
    if (!out.traces.back().completed) return out;
  }
  // Pairwise image distance over evaluation grids.
  const PolarGrid& grid = PolarGrid::shared(out.grid_degree);
  const auto& nodes = grid.nodes_with_boundary();
  const int gcount = static_cast<int>(nodes.size());
  std::vector<RMatrix> pts(q_samples);
  std::vector<RVector> sq(q_samples);
  for (int l = 0; l < q_samples; ++l) {
    const DiscFunction& z = out.traces[l].points.back().sol.z;
    RMatrix m(gcount, 4);
    for (int i = 0; i < gcount; ++i) {
      const CVector v = z.eval(nodes[i]);
      m(i, 0) = v(0).real();
      m(i, 1) = v(0).imag();
      m(i, 2) = v(1).real();
      m(i, 3) = v(1).imag();
    }
    pts[l] = std::move(m);
    sq[l] = pts[l].rowwise().squaredNorm();
  }
  double best = std::numeric_limits<double>::max();
  for (int a1 = 0; a1 < q_samples; ++a1)
    for (int b1 = a1 + 1; b1 < q_samples; ++b1) {
      RMatrix cross = pts[a1] * pts[b1].transpose();
      for (int i = 0; i < gcount; ++i)
        for (int j = 0; j < gcount; ++j) {
          const double d2 = sq[a1](i) + sq[b1](j) - 2.0 * cross(i, j);
          if (d2 < best) {
            best = d2;
            out.offending_a = a1;
            out.offending_b = b1;
          }
        }
    }
  out.min_pairwise_distance = std::sqrt(std::max(best, 0.0));
  out.disjoint = out.min_pairwise_distance > 1e-9;
  if (!out.disjoint)
    throw FoliationAlarm("sweep_foliation: discs " + std::to_string(out.offending_a) +
                         " and " + std::to_string(out.offending_b) +
                         " intersect on the evaluation grid");
  return out;
}

HigherDimResult solve_higher_dim(const MatrixField& a, const CVector& anchor,
                                 double big_r, const TraceControls& controls) {
  const int n = static_cast<int>(anchor.size());
  if (a.n() != n) throw ConstructionError("solve_higher_dim: dimension mismatch");
  if (!a.is_zero() && a.support_radius() <= 0.0)
    throw ConstructionError(
        "solve_higher_dim: the field must carry a support separation radius");
  TorusSpec torus;
  torus.R = big_r;
  torus.t.resize(n - 1);
  for (int j = 1; j < n; ++j) {
    if (std::abs(anchor(j)) == 0.0)
      throw ConstructionError("solve_higher_dim: anchor needs b_j != 0");
    torus.t(j - 1) = std::norm(anchor(j));
  }
  torus.validate();
  const double zr = torus.z_radius();
  if (std::abs(anchor(0)) >= zr)
    throw ConstructionError("solve_higher_dim: anchor z must lie inside the disc");

  // Conformal z-component: z0 = zr * phi_beta(rot * zeta) with z0(0) = a and
  // z0(1) = zr; w is constant b; t0_j = |b_j|^2.
  const Complex beta = anchor(0) / zr;
  const Complex rot = (1.0 - beta) / (1.0 - std::conj(beta));
  DiscFunction start(n, controls.degree);
  start.set_coef(0, 0, 0, anchor(0));
  Complex rp = rot;
  const double betan = std::abs(beta);
  for (int k = 1; k <= controls.degree; ++k) {
    const Complex c = zr * (1.0 - betan * betan) *
                      std::pow(-std::conj(beta), k - 1) * rp;
    start.set_coef(0, k, 0, c);
    rp *= rot;
  }
  for (int j = 1; j < n; ++j) start.set_coef(j, 0, 0, anchor(j));

  EngineConfig cfg;
  cfg.base = a;
  cfg.torus0 = torus;
  cfg.controls = controls;
  cfg.free_radii = true;
  cfg.normalization = normalization_section5(torus, anchor);
  cfg.eta = controls.eta > 0.0
                ? controls.eta
                : (a.support_radius() > 0.0 ? a.support_radius()
                                            : default_eta(a, torus));
  cfg.expected_windings.assign(n, 0);
  cfg.expected_windings[0] = 1;
  cfg.start = std::move(start);
  HigherDimResult out;
  out.trace = run_trace(cfg);
  if (!out.trace.points.empty()) {
    out.solution = out.trace.points.back().sol;
    out.torus = out.trace.points.back().torus;
  }
  return out;
}

BubblingReport bubbling_diagnostic(const std::vector<DiscFunction>& sequence) {
  BubblingReport rep;
  if (sequence.size() < 2) {
    rep.summary = "need at least two solutions";
    return rep;
  }
  auto density = [](const DiscFunction& z, const PolarGrid& grid,
                    std::vector<RMatrix>& e) {
    const int m = z.components();
    const DiscFunction dz = z.dz();
    const DiscFunction dq = z.dbar();
    e.assign(1, RMatrix::Zero(grid.radial_count(), grid.angle_count()));
    for (int j = 0; j < m; ++j) {
      CMatrix a = grid.values(dz, j);
      CMatrix b = grid.values(dq, j);
      e[0] += (a.cwiseAbs2() + b.cwiseAbs2()).real();
    }
  };
  const int gd = std::max(2 * sequence.front().degree(), 16);
  const PolarGrid& grid = PolarGrid::shared(gd);
  double sup_first = 0.0, sup_last = 0.0;
  Complex loc;
  double total_last = 0.0;
  RMatrix e_last;
  for (size_t s = 0; s < sequence.size(); ++s) {
    std::vector<RMatrix> e;
    density(sequence[s], grid, e);
    double sup = 0.0;
    Complex where = 0.0;
    double total = 0.0;
    for (int i = 0; i < grid.radial_count(); ++i)
      for (int jj = 0; jj < grid.angle_count(); ++jj) {
        const double g = std::sqrt(2.0 * e[0](i, jj));
        if (g > sup) {
          sup = g;
          where = grid.node(i, jj);
        }
        total += e[0](i, jj) * grid.weight(i);
      }
    if (s == 0) sup_first = sup;
    if (s + 1 == sequence.size()) {
      sup_last = sup;
      loc = where;
      total_last = total;
      e_last = e[0];
    }
  }
  rep.sup_gradient_first = sup_first;
  rep.sup_gradient_last = sup_last;
  rep.location = loc;
  rep.total_energy = total_last;
  const double thresh = 0.08 * total_last;
  bool concentrated = true;
  for (double eps : {0.4, 0.2, 0.1, 0.05}) {
    double mass = 0.0;
    for (int i = 0; i < grid.radial_count(); ++i)
      for (int jj = 0; jj < grid.angle_count(); ++jj)
        if (std::abs(grid.node(i, jj) - loc) < eps)
          mass += e_last(i, jj) * grid.weight(i);
    rep.mass.push_back(mass);
    if (mass < thresh) concentrated = false;
  }
  rep.concentrated_mass = rep.mass.back();
  rep.principal_energy = rep.total_energy - rep.concentrated_mass;
  const bool grows = sup_last >= 1.8 * sup_first;
  rep.flagged = grows && concentrated;
  if (rep.flagged) {
    rep.kind = std::abs(loc) > 0.85 ? BubbleKind::boundary_disc
                                    : BubbleKind::interior_pathology;
    rep.summary = rep.kind == BubbleKind::boundary_disc
                      ? "boundary concentration (disc-bubble candidate)"
                      : "interior concentration: numerical pathology (exact "
                        "symplectic form admits no spheres)";
  } else {
    rep.summary = "no concentration detected";
  }
  return rep;
}

NonsqueezeReport nonsqueezing_demo(const AffineSymplectic& phi, double r,
                                   double big_r, const TraceControls& controls,
                                   double tol) {
  const int n2 = static_cast<int>(phi.linear.rows());
  const int n = n2 / 2;
  if (n < 2) throw DemoSetupError("nonsqueezing_demo: need n >= 2");
  if (r <= 0.0 || big_r <= 0.0)
    throw DemoSetupError("nonsqueezing_demo: radii must be positive");
  // Symplectic check: L^T Omega L = Omega with Omega = -J_st.
  const RMatrix omega = -standard_j(n);
  if ((phi.linear.transpose() * omega * phi.linear - omega)
          .cwiseAbs()
          .maxCoeff() > 1e-10)
    throw DemoSetupError("nonsqueezing_demo: linear part is not symplectic");
  // Containment of the embedded ball in the cylinder R D x C^{n-1}.
  const double sigma_z =
      RMatrix(phi.linear.topRows(2)).jacobiSvd().singularValues()(0);
  const double tau_z = std::abs(phi.translation(0));
  if (sigma_z * r + tau_z > big_r - 1e-9)
    throw DemoSetupError(
        "nonsqueezing_demo: no affine symplectic embedding with the image of "
        "the r-ball inside the R-cylinder for the given data");
  const double r_out =
      std::min(1.06 * r, (big_r - tau_z - 5e-3) / std::max(sigma_z, 1e-12));
  if (r_out <= r)
    throw DemoSetupError("nonsqueezing_demo: no room for the cut-off collar");

  // Translate in w so the support stays away from the hyperplanes {w_j = 0}.
  CVector shift = CVector::Zero(n);
  shift(0) = phi.translation(0);
  for (int j = 1; j < n; ++j) {
    const double extent =
        RMatrix(phi.linear.middleRows(2 * j, 2)).jacobiSvd().singularValues()(0) *
        r_out;
    shift(j) = extent + 0.5;
  }
  const double r0 = 0.25;

  const CMatrix a_phi = j_to_a(RealLinearOp{
      phi.linear * standard_j(n) * phi.linear.inverse()});
  const double a0 = op_norm(a_phi);
  if (a0 >= 0.95)
    throw DemoSetupError("nonsqueezing_demo: pushforward structure too close "
                         "to the taming bound");

  const RMatrix linv = phi.linear.inverse();
  const RVector tau_real = to_real(shift);
  const double ri2 = r * r, ro2 = r_out * r_out;
  auto chi = [linv, tau_real](const CVector& z) {
    return (linv * (to_real(z) - tau_real)).squaredNorm();
  };
  MatrixField::Evaluator eval = [=](const CVector& z) {
    const double gate = cutoff01((ro2 - chi(z)) / (ro2 - ri2));
    return CMatrix(gate * a_phi);
  };
  MatrixField::Derivative deriv = [=](const CVector& z, const CVector& dir) {
    const RVector y = linv * (to_real(z) - tau_real);
    const double dchi = 2.0 * y.dot(RVector(linv * to_real(dir)));
    const double dgate =
        cutoff01_deriv((ro2 - chi(z)) / (ro2 - ri2)) * (-dchi / (ro2 - ri2));
    return CMatrix(dgate * a_phi);
  };
  const double lip =
      a0 * 4.0 * r_out * linv.cwiseAbs().maxCoeff() * linv.cwiseAbs().maxCoeff() *
      2.0 * n2 / (ro2 - ri2);
  MatrixField field(n, eval, deriv, std::min(a0 * 1.0000001, 0.95), r0, lip,
                    "pushforward cutoff");

  NonsqueezeReport rep;
  rep.lower_bound = kPi * r * r;
  rep.upper_bound = kPi * big_r * big_r;
  HigherDimResult hd =
      solve_higher_dim(field, shift, big_r * big_r, controls);
  if (!hd.trace.completed) {
    rep.note = "trace failed: " + hd.trace.failure;
    return rep;
  }
  rep.torus = hd.torus;
  rep.certificate = hd.solution.cert;
  rep.total_area = hd.solution.cert.area;

  // Pulled-back area: integrate Z^* omega over the first-exit region of the
  // embedded r-ball along rays from zeta = 0.
  const DiscFunction& z = hd.solution.z;
  const DiscFunction dz = z.dz();
  const DiscFunction dq = z.dbar();
  auto ball_g = [&](const Complex& zeta) { return chi(z.eval(zeta)); };
  auto dens = [&](const Complex& zeta) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j)
      acc += std::norm(dz.eval(j, zeta)) - std::norm(dq.eval(j, zeta));
    return acc;
  };
  const int mang = 256;
  RVector gl_x, gl_w;
  gauss_legendre_01(48, gl_x, gl_w);
  double area = 0.0;
  for (int ia = 0; ia < mang; ++ia) {
    const double th = 2.0 * kPi * ia / mang;
    const Complex dir(std::cos(th), std::sin(th));
    // first exit radius along the ray
    double lo = 0.0, hi = 1.0;
    bool exits = false;
    const int march = 256;
    for (int i = 1; i <= march; ++i) {
      const double rho = double(i) / march;
      if (ball_g(rho * dir) >= ri2) {
        exits = true;
        lo = double(i - 1) / march;
        hi = rho;
        break;
      }
    }
    double rstar = 1.0;
    if (exits) {
      for (int it = 0; it < 50; ++it) {
        const double mid = 0.5 * (lo + hi);
        (ball_g(mid * dir) >= ri2 ? hi : lo) = mid;
      }
      rstar = 0.5 * (lo + hi);
    }
    double ray = 0.0;
    for (int i = 0; i < gl_x.size(); ++i) {
      const double rho = rstar * gl_x(i);
      ray += gl_w(i) * rstar * dens(rho * dir) * rho;
    }
    area += ray;
  }
  area *= 2.0 * kPi / mang;
  rep.pulled_area = area;
  rep.pass = (area >= rep.lower_bound - tol) && (area <= rep.upper_bound + tol) &&
             (area <= rep.total_area + tol);
  rep.note = "w-translation normalized internally; torus radii discovered";
  return rep;
}

}  // namespace jdisc
