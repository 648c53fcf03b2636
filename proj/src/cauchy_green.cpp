#include <jdisc/cauchy_green.hpp>

#include <jdisc/errors.hpp>

namespace jdisc {

DiscFunction cauchy_green(const DiscFunction& f) {
  const int n = f.degree();
  if (f.effective_degree() > n - 1)
    throw TruncationError("cauchy_green: input degree must be at most N - 1");
  DiscFunction out(f.components(), n);
  for (int j = 0; j < f.components(); ++j) {
    const CMatrix& c = f.table(j);
    for (int p = 0; p <= n; ++p)
      for (int q = 0; p + q <= n - 1; ++q) {
        if (c(p, q) == 0.0) continue;
        const Complex w = c(p, q) / double(q + 1);
        out.table(j)(p, q + 1) += w;
        if (p >= q + 1) out.table(j)(p - q - 1, 0) -= w;
      }
  }
  return out;
}

DiscFunction cauchy_boundary(const BoundaryLoop& g, int degree) {
  DiscFunction out(g.components(), degree);
  for (int j = 0; j < g.components(); ++j) {
    const CVector& hat = g.fourier(j);
    const int kmax = g.max_frequency();
    for (int k = 0; k <= std::min(kmax, degree); ++k)
      out.set_coef(j, k, 0, hat(k + kmax));
  }
  return out;
}

}  // namespace jdisc
