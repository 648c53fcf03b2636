#include <jdisc/boundary_loop.hpp>

#include <jdisc/errors.hpp>

#include <cmath>

namespace jdisc {

BoundaryLoop::BoundaryLoop(std::vector<CVector> fourier, int samples)
    : fourier_(std::move(fourier)), m_(samples) {
  kmax_ = (static_cast<int>(fourier_[0].size()) - 1) / 2;
  samples_.resize(fourier_.size());
  for (size_t j = 0; j < fourier_.size(); ++j) {
    samples_[j].resize(m_);
    for (int i = 0; i < m_; ++i) {
      const double th = 2.0 * kPi * i / m_;
      Complex acc = 0.0;
      for (int k = -kmax_; k <= kmax_; ++k)
        acc += fourier_[j](k + kmax_) * Complex(std::cos(k * th), std::sin(k * th));
      samples_[j](i) = acc;
    }
  }
}

BoundaryLoop BoundaryLoop::of(const DiscFunction& f, int samples) {
  if (samples <= 0) samples = 4 * std::max(f.degree(), 1);
  std::vector<CVector> fourier(f.components());
  for (int j = 0; j < f.components(); ++j) fourier[j] = f.boundary_fourier(j);
  return BoundaryLoop(std::move(fourier), samples);
}

double BoundaryLoop::min_modulus(int j) const {
  return samples_[j].cwiseAbs().minCoeff();
}

int winding_number(const BoundaryLoop& g, int component, double threshold) {
  if (g.min_modulus(component) <= threshold)
    throw DegeneracyError("winding_number: loop passes too close to the origin");
  const CVector& v = g.samples(component);
  const int m = g.sample_count();
  double total = 0.0;
  for (int i = 0; i < m; ++i) {
    Complex ratio = v((i + 1) % m) / v(i);
    total += std::arg(ratio);
  }
  const double turns = total / (2.0 * kPi);
  const double rounded = std::round(turns);
  if (std::abs(turns - rounded) > 0.25)
    throw DegeneracyError("winding_number: argument increment far from integer");
  return static_cast<int>(rounded);
}

}  // namespace jdisc
