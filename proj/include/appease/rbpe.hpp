#pragma once

#include <map>
#include <optional>
#include <vector>

#include "appease/load_avg.hpp"
#include "appease/types.hpp"

namespace appease {

enum class SocketKind { UnixSocket, NetworkSocket };

// One row of the request-boost policy: applies when the 1-minute load is at
// most `load_le` (2048 == 1.0). Local (unix-socket) receivers get the
// stronger boost.
struct RbpeRow {
  std::int64_t load_le = 0;
  int nice_unix = 0;  // <= nice_net <= 0
  int nice_net = 0;
  SimTime delay = 0;  // time a boost level is held before decaying one step
};

// Built-in boost schedule; the last row covers any load above 16000.
const std::vector<RbpeRow>& default_rbpe_table();

// Picks the first row whose threshold is >= load (last row for anything
// beyond) and returns the nice value for the socket kind plus its delay.
std::pair<int, SimTime> rbpe_lookup(const std::vector<RbpeRow>& table,
                                    std::int64_t load, SocketKind kind);

struct EpplEntry {
  int nice = 0;  // < 0 while present
  SimTime stamped = 0;
  SimTime delay = 0;
};

// Elevated-priority bookkeeping: which processes are currently boosted,
// how strongly, and when each boost step relaxes.
class EpplState {
 public:
  // A request was delivered to `pid`. Applies the table row for the current
  // load; a lookup of nice 0 is a no-op, an existing stronger boost is kept
  // (timestamp refreshed). Returns the process's new nice value, or nullopt
  // when nothing changed.
  std::optional<int> on_request(Pid pid, SocketKind kind, std::int64_t load,
                                SimTime now, const std::vector<RbpeRow>& table);

  // Periodic relaxation: every entry past its delay steps one nice level
  // toward zero and is restamped; entries reaching zero are dropped.
  // Returns (pid, new nice) for every change.
  std::vector<std::pair<Pid, int>> decay(SimTime now);

  bool boosted(Pid pid) const { return entries_.count(pid) > 0; }
  const std::map<Pid, EpplEntry>& entries() const { return entries_; }

 private:
  std::map<Pid, EpplEntry> entries_;
};

}  // namespace appease
