#pragma once

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace jacobi::numerics {

/// exp(A) by scaling and squaring with a diagonal Pade(6,6) approximant.
template <class Derived>
auto expm(const Eigen::MatrixBase<Derived>& A) {
  using Mat = typename Derived::PlainObject;
  // Pade(6,6) numerator coefficients; the denominator uses alternating signs.
  constexpr double c[] = {1.0,           1.0 / 2.0,      5.0 / 44.0,      1.0 / 66.0,
                          1.0 / 792.0,   1.0 / 15840.0,  1.0 / 665280.0};
  const double norm = A.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm / 0.5))));
  const Mat X = A.derived() / std::ldexp(1.0, squarings);

  const Mat I = Mat::Identity(A.rows(), A.cols());
  Mat power = I;
  Mat num = c[0] * I;
  Mat den = c[0] * I;
  for (int k = 1; k <= 6; ++k) {
    power = power * X;
    num += c[k] * power;
    den += ((k % 2) ? -c[k] : c[k]) * power;
  }
  Mat E = den.partialPivLu().solve(num);
  for (int k = 0; k < squarings; ++k) E = E * E;
  return E;
}

} // namespace jacobi::numerics
