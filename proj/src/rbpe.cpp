#include "appease/rbpe.hpp"

#include <limits>

namespace appease {

const std::vector<RbpeRow>& default_rbpe_table() {
  static const std::vector<RbpeRow> table = {
      {1600, 0, 0, 0},
      {3000, -1, 0, 200 * kUsPerMs},
      {5000, -2, -1, 300 * kUsPerMs},
      {8000, -4, -2, 400 * kUsPerMs},
      {12000, -6, -3, 500 * kUsPerMs},
      {16000, -7, -4, 600 * kUsPerMs},
      {std::numeric_limits<std::int64_t>::max(), -15, -5, 600 * kUsPerMs},
  };
  return table;
}

std::pair<int, SimTime> rbpe_lookup(const std::vector<RbpeRow>& table,
                                    std::int64_t load, SocketKind kind) {
  const RbpeRow* row = &table.back();
  for (const auto& r : table) {
    if (load <= r.load_le) {
      row = &r;
      break;
    }
  }
  const int nice = kind == SocketKind::UnixSocket ? row->nice_unix : row->nice_net;
  return {nice, row->delay};
}

std::optional<int> EpplState::on_request(Pid pid, SocketKind kind,
                                         std::int64_t load, SimTime now,
                                         const std::vector<RbpeRow>& table) {
  const auto [nice, delay] = rbpe_lookup(table, load, kind);
  if (nice == 0) return std::nullopt;  // low load: stay out of the way
  auto it = entries_.find(pid);
  if (it == entries_.end()) {
    entries_[pid] = EpplEntry{nice, now, delay};
    return nice;
  }
  // Repeat boosts refresh the clock; only a stronger row replaces the level.
  it->second.stamped = now;
  if (nice < it->second.nice) {
    it->second.nice = nice;
    it->second.delay = delay;
    return nice;
  }
  return std::nullopt;
}

std::vector<std::pair<Pid, int>> EpplState::decay(SimTime now) {
  std::vector<std::pair<Pid, int>> changes;
  for (auto it = entries_.begin(); it != entries_.end();) {
    EpplEntry& e = it->second;
    if (now - e.stamped >= e.delay) {
      e.nice += 1;
      e.stamped = now;
      changes.emplace_back(it->first, e.nice);
      if (e.nice >= 0) {
        it = entries_.erase(it);
        continue;
      }
    }
    ++it;
  }
  return changes;
}

}  // namespace appease
