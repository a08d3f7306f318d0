#pragma once

// Random fixtures shared by the unit tests.

#include <cmath>

#include "jacobi/group.hpp"
#include "jacobi/numerics/random.hpp"

namespace testing_support {

inline jacobi::Sl2Element random_sl2(jacobi::numerics::Sampler& s) {
  const double a = s.uniform(0.3, 2.0) * s.sign();
  const double b = s.uniform(-2.0, 2.0);
  const double c = s.uniform(-2.0, 2.0);
  return jacobi::Sl2Element(a, b, c, (1.0 + b * c) / a);
}

inline jacobi::GroupElement random_element(jacobi::numerics::Sampler& s) {
  jacobi::GroupElement g;
  g.M = random_sl2(s);
  g.lambda = s.uniform(-2.0, 2.0);
  g.mu = s.uniform(-2.0, 2.0);
  g.kappa = s.uniform(-2.0, 2.0);
  return g;
}

} // namespace testing_support
