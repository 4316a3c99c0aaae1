#pragma once

#include <cstdint>
#include <random>

namespace logicmine {

// Every stochastic routine draws from this engine so that a seed fully
// determines its output on every platform. Distributions from <random> are
// implementation-defined, so values are derived from the raw 64-bit stream.
using Engine = std::mt19937_64;

/// Uniform double in [0, 1) from the top 53 bits of one draw.
inline double uniform01(Engine& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

/// Uniform double in [lo, hi).
inline double uniform(Engine& engine, double lo, double hi) {
  return lo + (hi - lo) * uniform01(engine);
}

}  // namespace logicmine
