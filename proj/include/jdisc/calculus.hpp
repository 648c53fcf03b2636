#pragma once

// Symplectic area (boundary Stokes formula and interior quadrature), energy
// with respect to the canonical metric, the Maslov index of a torus boundary
// condition, and the Wirtinger volume gap of a sampled surface.

#include <jdisc/acs.hpp>
#include <jdisc/disc_function.hpp>
#include <jdisc/matrix_field.hpp>
#include <jdisc/torus.hpp>

#include <vector>

namespace jdisc {

/// Boundary integral of Z^* lambda, lambda = sum (x_j dy_j - y_j dx_j)/2,
/// by spectral quadrature of (1/2) sum_j Im(conj(z_j) z_j') over 4N samples.
double symplectic_area(const DiscFunction& z);

/// Interior integral of Z^* omega = sum_j (|dz_j/dzeta|^2 - |dz_j/dconj|^2),
/// evaluated exactly on the monomial basis.
double symplectic_area_interior(const DiscFunction& z);

/// L^2(D) pairing, integral of f conj(g) over the disc, exact in coefficients.
Complex disc_l2_product(const DiscFunction& f, const DiscFunction& g, int j_f = 0,
                        int j_g = 0);

/// Energy (1/2) int (|Z_xi|_g^2 + |Z_eta|_g^2) with g the canonical metric of
/// the structure A evaluated along Z.  grid_degree 0 picks 2 * deg(Z).
double energy(const DiscFunction& z, const MatrixField& a, int grid_degree = 0);

/// Energy under a constant structure.
double energy(const DiscFunction& z, const RealLinearOp& j, int grid_degree = 0);

/// Sup over boundary samples of the torus defect |rho(Z)| (max component).
double boundary_residual(const DiscFunction& z, const TorusSpec& torus);

/// Maslov index normalized so the reference disc zeta -> (zeta, c) on the
/// product torus has index 0: 2 (wind(z) - 1) + 2 sum_j wind(w_j).
/// Throws BoundaryMismatchError when the boundary misses the torus by more
/// than boundary_tol.
int maslov_index(const DiscFunction& z, const TorusSpec& torus,
                 double boundary_tol = 1e-6);

/// A parametrized surface patch sampled at quadrature nodes.
struct SampledSurface {
  std::vector<CVector> position;
  std::vector<CVector> d_u;
  std::vector<CVector> d_v;
  RVector weights;
};

/// Surface swept by a disc function over the polar quadrature grid.
SampledSurface sample_disc_surface(const DiscFunction& z, int grid_degree = 0);

/// vol_2(surface, g) - int omega over the surface; nonnegative for tamed J,
/// zero exactly on J-invariant tangent planes.  Throws ImmersionError on a
/// degenerate sample, TamingError when J is not tamed.
double wirtinger_gap(const SampledSurface& surface, const RealLinearOp& j);

}  // namespace jdisc
