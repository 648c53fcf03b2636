#pragma once

// Boundary traces of disc functions as trigonometric data: Fourier
// coefficients per component plus a sample grid of equispaced angles,
// and the winding number through the argument principle on samples.

#include <jdisc/disc_function.hpp>
#include <jdisc/types.hpp>

#include <vector>

namespace jdisc {

class BoundaryLoop {
 public:
  BoundaryLoop() = default;

  /// Build from Fourier data; fourier[j] has size 2*kmax + 1 indexed k + kmax.
  BoundaryLoop(std::vector<CVector> fourier, int samples);

  /// Boundary trace of a disc function sampled at M equispaced angles
  /// (default M = 4N).
  static BoundaryLoop of(const DiscFunction& f, int samples = 0);

  int components() const { return static_cast<int>(fourier_.size()); }
  int max_frequency() const { return kmax_; }
  int sample_count() const { return m_; }

  const CVector& fourier(int j) const { return fourier_[j]; }
  const CVector& samples(int j) const { return samples_[j]; }
  double angle(int i) const { return 2.0 * kPi * i / m_; }

  double min_modulus(int j) const;

 private:
  std::vector<CVector> fourier_;
  std::vector<CVector> samples_;
  int kmax_ = 0;
  int m_ = 0;
};

/// Total argument increment over the sampled loop divided by 2 pi, rounded to
/// the nearest integer.  Throws DegeneracyError when the loop passes within
/// `threshold` of the origin or when the increment is far from an integer.
int winding_number(const BoundaryLoop& g, int component, double threshold = 1e-8);

}  // namespace jdisc
