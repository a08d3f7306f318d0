#pragma once

#include <cstdint>
#include <random>

namespace jacobi::numerics {

/// Seeded sampler. Uniform variates are built from raw 53-bit draws instead of
/// std::uniform_real_distribution so sequences match across standard libraries.
class Sampler {
public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int sign() { return (engine_() >> 63) != 0 ? 1 : -1; }

private:
  std::mt19937_64 engine_;
};

} // namespace jacobi::numerics
