#pragma once

// The Cauchy-Green transform T f(zeta) = (1/2 pi i) int_D f(tau)/(tau - zeta)
// dtau ^ dconj(tau), acting monomial-by-monomial through a closed-form table,
// and the Cauchy integral over the boundary circle (holomorphic extension).

#include <jdisc/boundary_loop.hpp>
#include <jdisc/disc_function.hpp>

namespace jdisc {

/// T on the monomial basis:
///   p <= q:     zeta^p conj^q -> zeta^p conj^{q+1} / (q+1)
///   p >= q+1:   zeta^p conj^q -> (zeta^p conj^{q+1} - zeta^{p-q-1}) / (q+1)
/// so that dbar(T f) = f exactly.  Requires deg f <= N - 1; the result has
/// degree at most deg f + 1.
DiscFunction cauchy_green(const DiscFunction& f);

/// Holomorphic extension sum_{k >= 0} g_hat(k) zeta^k of boundary Fourier data.
DiscFunction cauchy_boundary(const BoundaryLoop& g, int degree);

}  // namespace jdisc
