#pragma once

#include <map>
#include <optional>
#include <vector>

#include "appease/types.hpp"

namespace appease {

// Accrual semantics for a pending entry.
//
//   NetWait:      u grows while the holder is not running; running time and
//                 elapsed time cancel, so u is the accumulated waiting time.
//   WaitMinusRun: u grows while waiting and shrinks while running, i.e.
//                 running time is charged against accumulated waiting time.
enum class Accounting { NetWait, WaitMinusRun };

struct ModelConfig {
  double alpha = 0.0;  // share of a blocked requester's value it keeps; [0, 0.5)
  Accounting accounting = Accounting::WaitMinusRun;
};

struct Customer {
  CustomerId id = 0;
  double weight = 1.0;  // > 0
};

// One hop of an in-flight service chain: `requester` asked `servicer` for
// work and is blocked until the response comes back.
struct ServiceCall {
  Pid requester = 0;
  Pid servicer = 0;
  SimTime opened = 0;
  std::optional<SimTime> closed;
};

struct Process {
  Pid id = 0;
  ProcessState state = ProcessState::Sleeping;
  int nice = 0;                  // [-20, 19]
  SimTime cpu_received = 0;      // never decreases
  std::int64_t vruntime = 0;     // weighted execution time, fair-share order key
  int mlfq_level = 0;
  std::optional<int> mlfq_pin;  // workload hogs fixed to one feedback level
  std::optional<RequestId> serving;
  std::optional<Pid> blocked_on;
};

}  // namespace appease
