#include "appease/load_avg.hpp"

#include <stdexcept>

namespace appease {

void LoadEstimator::update(int runnable_count, SimTime dt) {
  if (dt <= 0) throw std::invalid_argument("load update: dt must be positive");
  const std::int64_t target =
      (static_cast<std::int64_t>(runnable_count) * 2048) << kFracBits;
  const __int128 delta = static_cast<__int128>(target - acc_) * dt;
  const std::int64_t denom = kTimeConstantUs + dt;
  // Round-to-nearest so steady inputs converge onto the exact fixed point.
  const __int128 half = denom / 2;
  const std::int64_t inc = static_cast<std::int64_t>(
      delta >= 0 ? (delta + half) / denom : (delta - half) / denom);
  acc_ += inc;
  if (acc_ < 0) acc_ = 0;
}

}  // namespace appease
