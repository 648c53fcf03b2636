#include <jdisc/calculus.hpp>

#include <jdisc/boundary_loop.hpp>
#include <jdisc/errors.hpp>
#include <jdisc/projection.hpp>

#include <cmath>

namespace jdisc {

double symplectic_area(const DiscFunction& z) {
  const int m = z.components();
  const int samples = 4 * std::max(z.degree(), 1);
  const DiscFunction dz = z.dz();
  const DiscFunction dq = z.dbar();
  double total = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double th = 2.0 * kPi * i / samples;
    const Complex zeta(std::cos(th), std::sin(th));
    // d/dtheta along the boundary: i zeta d/dzeta - i conj(zeta) d/dconj.
    for (int j = 0; j < m; ++j) {
      const Complex v = z.eval(j, zeta);
      const Complex vp = Complex(0, 1) * (zeta * dz.eval(j, zeta) -
                                          std::conj(zeta) * dq.eval(j, zeta));
      total += 0.5 * (std::conj(v) * vp).imag();
    }
  }
  return total * (2.0 * kPi / samples);
}

Complex disc_l2_product(const DiscFunction& f, const DiscFunction& g, int j_f,
                        int j_g) {
  // int zeta^a conj^b conj(zeta^c conj^d) dA = pi/(a+d+1) when a+d = b+c.
  Complex acc = 0.0;
  const CMatrix& cf = f.table(j_f);
  const CMatrix& cg = g.table(j_g);
  const int nf = f.degree(), ng = g.degree();
  for (int a = 0; a <= nf; ++a)
    for (int b = 0; a + b <= nf; ++b) {
      if (cf(a, b) == 0.0) continue;
      for (int c = 0; c <= ng; ++c)
        for (int d = 0; c + d <= ng; ++d) {
          if (cg(c, d) == 0.0) continue;
          if (a + d != b + c) continue;
          acc += cf(a, b) * std::conj(cg(c, d)) * (kPi / double(a + d + 1));
        }
    }
  return acc;
}

double symplectic_area_interior(const DiscFunction& z) {
  const DiscFunction dz = z.dz();
  const DiscFunction dq = z.dbar();
  double total = 0.0;
  for (int j = 0; j < z.components(); ++j)
    total += disc_l2_product(dz, dz, j, j).real() -
             disc_l2_product(dq, dq, j, j).real();
  return total;
}

namespace {

double energy_impl(const DiscFunction& z, const MatrixField* field,
                   const RealLinearOp* fixed_j, int grid_degree) {
  if (grid_degree <= 0) grid_degree = std::max(2 * z.degree(), 8);
  const PolarGrid& grid = PolarGrid::shared(grid_degree);
  const int m = z.components();
  std::vector<CMatrix> vals(m), vdz(m), vdq(m);
  const DiscFunction dz = z.dz();
  const DiscFunction dq = z.dbar();
  for (int j = 0; j < m; ++j) {
    vals[j] = grid.values(z, j);
    vdz[j] = grid.values(dz, j);
    vdq[j] = grid.values(dq, j);
  }
  const bool standard = fixed_j == nullptr && (field == nullptr || field->is_zero());
  double total = 0.0;
  CVector zu(m), zv(m), point(m);
  for (int i = 0; i < grid.radial_count(); ++i) {
    for (int jj = 0; jj < grid.angle_count(); ++jj) {
      for (int j = 0; j < m; ++j) {
        const Complex a = vdz[j](i, jj), b = vdq[j](i, jj);
        zu(j) = a + b;                    // d/dxi
        zv(j) = Complex(0, 1) * (a - b);  // d/deta
        point(j) = vals[j](i, jj);
      }
      double dens;
      if (standard) {
        dens = 0.5 * (zu.squaredNorm() + zv.squaredNorm());
      } else if (fixed_j != nullptr) {
        dens = 0.5 * (canonical_metric_unchecked(*fixed_j, zu, zu) +
                      canonical_metric_unchecked(*fixed_j, zv, zv));
      } else {
        RealLinearOp j_here = a_to_j((*field)(point));
        dens = 0.5 * (canonical_metric_unchecked(j_here, zu, zu) +
                      canonical_metric_unchecked(j_here, zv, zv));
      }
      total += dens * grid.weight(i);
    }
  }
  return total;
}

}  // namespace

double energy(const DiscFunction& z, const MatrixField& a, int grid_degree) {
  return energy_impl(z, &a, nullptr, grid_degree);
}

double energy(const DiscFunction& z, const RealLinearOp& j, int grid_degree) {
  return energy_impl(z, nullptr, &j, grid_degree);
}

double boundary_residual(const DiscFunction& z, const TorusSpec& torus) {
  const BoundaryLoop loop = BoundaryLoop::of(z);
  double worst = 0.0;
  const double zr2 = torus.z_radius() * torus.z_radius();
  for (int i = 0; i < loop.sample_count(); ++i) {
    worst = std::max(worst, std::abs(std::norm(loop.samples(0)(i)) - zr2));
    for (int j = 1; j < z.components(); ++j) {
      const double wr2 = torus.w_radius(j - 1) * torus.w_radius(j - 1);
      worst = std::max(worst, std::abs(std::norm(loop.samples(j)(i)) - wr2));
    }
  }
  return worst;
}

int maslov_index(const DiscFunction& z, const TorusSpec& torus,
                 double boundary_tol) {
  if (boundary_residual(z, torus) > boundary_tol)
    throw BoundaryMismatchError("maslov_index: boundary is not on the torus");
  const BoundaryLoop loop = BoundaryLoop::of(z);
  int total = winding_number(loop, 0) - 1;
  for (int j = 1; j < z.components(); ++j) total += winding_number(loop, j);
  return 2 * total;
}

SampledSurface sample_disc_surface(const DiscFunction& z, int grid_degree) {
  if (grid_degree <= 0) grid_degree = std::max(2 * z.degree(), 8);
  const PolarGrid& grid = PolarGrid::shared(grid_degree);
  const int m = z.components();
  const DiscFunction dz = z.dz();
  const DiscFunction dq = z.dbar();
  SampledSurface s;
  const int count = grid.radial_count() * grid.angle_count();
  s.position.reserve(count);
  s.d_u.reserve(count);
  s.d_v.reserve(count);
  s.weights.resize(count);
  int idx = 0;
  for (int i = 0; i < grid.radial_count(); ++i)
    for (int jj = 0; jj < grid.angle_count(); ++jj) {
      const Complex zeta = grid.node(i, jj);
      CVector pos(m), du(m), dv(m);
      for (int j = 0; j < m; ++j) {
        pos(j) = z.eval(j, zeta);
        const Complex a = dz.eval(j, zeta), b = dq.eval(j, zeta);
        du(j) = a + b;
        dv(j) = Complex(0, 1) * (a - b);
      }
      s.position.push_back(pos);
      s.d_u.push_back(du);
      s.d_v.push_back(dv);
      s.weights(idx++) = grid.weight(i);
    }
  return s;
}

double wirtinger_gap(const SampledSurface& surface, const RealLinearOp& j) {
  if (!is_tamed(j_to_a(j)))
    throw TamingError("wirtinger_gap: structure not tamed by omega_st");
  double vol = 0.0, sym = 0.0;
  for (size_t i = 0; i < surface.position.size(); ++i) {
    const CVector& u = surface.d_u[i];
    const CVector& v = surface.d_v[i];
    const double guu = canonical_metric_unchecked(j, u, u);
    const double gvv = canonical_metric_unchecked(j, v, v);
    const double guv = canonical_metric_unchecked(j, u, v);
    const double det = guu * gvv - guv * guv;
    const double scale = guu + gvv;
    if (scale <= 0.0 || det <= 1e-14 * scale * scale)
      throw ImmersionError("wirtinger_gap: degenerate parametrization sample");
    vol += std::sqrt(det) * surface.weights(i);
    sym += omega_st(u, v) * surface.weights(i);
  }
  return vol - sym;
}

}  // namespace jdisc
