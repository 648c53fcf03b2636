#pragma once

// Tensor evaluation grid on the disc (Gauss-Legendre in rho^2, equispaced
// angles) and the pseudospectral projection of sampled functions back onto
// the truncated monomial basis.  The grid has (N+1) x 4N points for degree N;
// analysis is an FFT in the angle followed by a radial Legendre fit per
// angular frequency, exact on the represented polynomial space.

#include <jdisc/disc_function.hpp>
#include <jdisc/types.hpp>

#include <vector>

namespace jdisc {

class PolarGrid {
 public:
  explicit PolarGrid(int degree);

  /// Shared immutable instance per degree (built once, reused).
  static const PolarGrid& shared(int degree);

  int degree() const { return degree_; }
  int radial_count() const { return mr_; }
  int angle_count() const { return mth_; }

  double s(int i) const { return s_(i); }            // rho^2 nodes in (0,1)
  double rho(int i) const { return rho_(i); }
  double theta(int j) const { return theta_(j); }
  Complex node(int i, int j) const { return rho_(i) * unit_(j); }
  Complex unit(int j) const { return unit_(j); }

  /// Quadrature weight for integration over the disc with area measure:
  /// integral of u dA ~ sum_ij u(node(i,j)) * weight(i).
  double weight(int i) const { return kPi * w_(i) / mth_; }

  const std::vector<Complex>& nodes() const { return nodes_; }
  const std::vector<Complex>& nodes_with_boundary() const { return nodes_bd_; }

  /// Values of component j on the grid, (M_r x M_theta), via per-ring
  /// frequency sums.
  CMatrix values(const DiscFunction& f, int j) const;

  /// Values of component j on the boundary ring at the grid angles.
  CVector boundary_values(const DiscFunction& f, int j) const;

  /// Project sampled values (one matrix per component) onto the monomial
  /// basis of total degree at most out_degree (out_degree <= grid degree).
  DiscFunction analyze(const std::vector<CMatrix>& values, int out_degree) const;

 private:
  int degree_, mr_, mth_;
  RVector s_, rho_, w_, theta_;
  std::vector<Complex> unit_row_;    // e^{i theta_j}
  CMatrix harmonics_;                // (2N+1) x M_theta, e^{i k theta_j}, k = -N..N
  RMatrix legendre_at_s_;            // P~_q(s_i), q <= N/2
  RMatrix legendre_to_monomial_;     // P~_q(s) = sum_l M(q,l) s^l
  std::vector<Complex> nodes_, nodes_bd_;

  const Complex& unit_(int j) const { return unit_row_[j]; }
};

/// Gauss-Legendre nodes and weights on [0, 1] (Golub-Welsch).
void gauss_legendre_01(int count, RVector& nodes, RVector& weights);

}  // namespace jdisc
