#pragma once

#include <cstdint>

#include "appease/types.hpp"

namespace appease {

// One-minute run-queue load, exponentially averaged, fixed point with
// 2048 == load 1.0. Integer-only update so traces replay bit-identically.
class LoadEstimator {
 public:
  LoadEstimator() = default;
  explicit LoadEstimator(std::int64_t initial_fixed) { reset(initial_fixed); }

  // First-order step toward runnable_count * 2048 with a 60 s time constant:
  // the per-step gain is dt / (60s + dt), the standard rational discretization
  // of an exponential moving average.
  void update(int runnable_count, SimTime dt);

  // Current value in 2048-units.
  std::int64_t value() const { return (acc_ + kHalf) >> kFracBits; }

  void reset(std::int64_t fixed_value) { acc_ = fixed_value << kFracBits; }

 private:
  static constexpr int kFracBits = 20;  // sub-unit precision of the accumulator
  static constexpr std::int64_t kHalf = std::int64_t{1} << (kFracBits - 1);
  static constexpr std::int64_t kTimeConstantUs = 60 * kUsPerSec;
  std::int64_t acc_ = 0;
};

}  // namespace appease
