#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "jacobi/errors.hpp"

namespace jacobi::numerics {

template <std::size_t N>
using State = std::array<double, N>;

/// One classical Runge-Kutta step of y' = f(t, y).
template <std::size_t N, class F>
State<N> rk4_step(F&& f, double t, const State<N>& y, double dt) {
  auto axpy = [](const State<N>& a, double s, const State<N>& b) {
    State<N> r;
    for (std::size_t i = 0; i < N; ++i) r[i] = a[i] + s * b[i];
    return r;
  };
  const State<N> k1 = f(t, y);
  const State<N> k2 = f(t + 0.5 * dt, axpy(y, 0.5 * dt, k1));
  const State<N> k3 = f(t + 0.5 * dt, axpy(y, 0.5 * dt, k2));
  const State<N> k4 = f(t + dt, axpy(y, dt, k3));
  State<N> out;
  for (std::size_t i = 0; i < N; ++i)
    out[i] = y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

struct AlwaysInDomain {
  template <class S>
  bool operator()(const S&) const {
    return true;
  }
};

/// Fixed-step integration over [t0, t1]; returns steps + 1 states including y0.
/// Throws NonFinite when a state stops being finite or leaves `in_domain`.
template <std::size_t N, class F, class Domain = AlwaysInDomain>
std::vector<State<N>> rk4_integrate(F&& f, const State<N>& y0, double t0, double t1,
                                    std::size_t steps, Domain in_domain = {}) {
  if (steps == 0) throw DomainViolation("rk4_integrate needs at least one step");
  const double dt = (t1 - t0) / static_cast<double>(steps);
  std::vector<State<N>> traj;
  traj.reserve(steps + 1);
  traj.push_back(y0);
  State<N> y = y0;
  for (std::size_t k = 0; k < steps; ++k) {
    y = rk4_step<N>(f, t0 + static_cast<double>(k) * dt, y, dt);
    for (double v : y)
      if (!std::isfinite(v)) throw NonFinite("rk4 state is not finite");
    if (!in_domain(y)) throw NonFinite("rk4 state left the domain");
    traj.push_back(y);
  }
  return traj;
}

} // namespace jacobi::numerics
