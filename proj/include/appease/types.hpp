#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace appease {

// All simulation time is integer microseconds since scenario start.
using SimTime = std::int64_t;

using Pid = int;
using CustomerId = int;
using RequestId = int;

inline constexpr SimTime kUsPerMs = 1000;
inline constexpr SimTime kUsPerSec = 1000 * 1000;

// Thrown when an operation is applied to model state that does not admit it
// (double settle, merge without split, accrual on a frozen entry, ...).
class StateError : public std::runtime_error {
 public:
  explicit StateError(const std::string& what) : std::runtime_error(what) {}
};

enum class ProcessState { Sleeping, Ready, Running, Blocked };

inline const char* to_string(ProcessState s) {
  switch (s) {
    case ProcessState::Sleeping: return "sleeping";
    case ProcessState::Ready: return "ready";
    case ProcessState::Running: return "running";
    case ProcessState::Blocked: return "blocked";
  }
  return "?";
}

}  // namespace appease
