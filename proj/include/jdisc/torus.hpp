#pragma once

#include <jdisc/errors.hpp>
#include <jdisc/types.hpp>

#include <cmath>

namespace jdisc {

/// Target torus for the boundary condition |z|^2 = R, |w_j|^2 = t_j.
/// Under the squared convention (the default) R and t_j are squared radii,
/// so the circles have radii sqrt(R) and sqrt(t_j); with the flag cleared
/// they are read as the radii themselves.
struct TorusSpec {
  double R = 1.0;
  RVector t;  // t_2 ... t_n, size n - 1
  bool squared_convention = true;

  int n() const { return static_cast<int>(t.size()) + 1; }
  double z_radius() const { return squared_convention ? std::sqrt(R) : R; }
  double w_radius(int j) const {
    return squared_convention ? std::sqrt(t(j)) : t(j);
  }

  void validate() const {
    if (R <= 0.0) throw ConstructionError("torus: R must be positive");
    for (int j = 0; j < t.size(); ++j)
      if (t(j) <= 0.0) throw ConstructionError("torus: all t_j must be positive");
  }

  static TorusSpec unit(int n) {
    TorusSpec s;
    s.R = 1.0;
    s.t = RVector::Ones(n - 1);
    return s;
  }
};

}  // namespace jdisc
