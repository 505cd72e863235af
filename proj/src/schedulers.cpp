#include "appease/schedulers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace appease {

int nice_to_weight(int nice) {
  if (nice < -20 || nice > 19)
    throw std::invalid_argument("nice out of range [-20, 19]");
  return static_cast<int>(std::llround(1024.0 * std::pow(1.25, -nice)));
}

ShareResult cpu_share(int weight, const std::vector<int>& weights,
                      SimTime period) {
  if (weights.empty())
    throw std::invalid_argument("cpu_share: empty run queue");
  std::int64_t total = 0;
  for (int w : weights) total += w;
  ShareResult r;
  r.fraction = static_cast<double>(weight) / static_cast<double>(total);
  r.slice = static_cast<SimTime>(weight) * period / total;
  return r;
}

// --------------------------------------------------------------------------
// Round-Robin

RoundRobinScheduler::RoundRobinScheduler(SimTime quantum) : quantum_(quantum) {
  if (quantum <= 0) throw std::invalid_argument("rr: quantum must be positive");
}

void RoundRobinScheduler::on_wake(ProcessTable&, Pid pid, SimTime, SimTime) {
  queue_.push_back(pid);
}

void RoundRobinScheduler::on_slice_expired(ProcessTable&, Pid pid) {
  queue_.push_back(pid);
}

void RoundRobinScheduler::on_preempted(ProcessTable&, Pid pid,
                                       SimTime remaining) {
  queue_.push_front(pid);
  if (remaining > 0) resume_[pid] = remaining;
}

std::optional<PickResult> RoundRobinScheduler::pick_next(ProcessTable&,
                                                         SimTime) {
  if (queue_.empty()) return std::nullopt;
  const Pid pid = queue_.front();
  queue_.pop_front();
  SimTime slice = quantum_;
  if (auto it = resume_.find(pid); it != resume_.end()) {
    slice = it->second;
    resume_.erase(it);
  }
  return PickResult{pid, slice};
}

// --------------------------------------------------------------------------
// Multilevel feedback queue

MlfqScheduler::MlfqScheduler(int levels, SimTime base_quantum)
    : base_quantum_(base_quantum), levels_(static_cast<size_t>(levels)) {
  if (levels < 1 || levels > 30)
    throw std::invalid_argument("mlfq: queue count out of range");
  if (base_quantum <= 0)
    throw std::invalid_argument("mlfq: quantum must be positive");
}

SimTime MlfqScheduler::grant_for_level(int level) const {
  return (SimTime{1} << level) * base_quantum_;
}

void MlfqScheduler::enqueue(ProcessTable& t, Pid pid, int level) {
  proc(t, pid).mlfq_level = level;
  levels_[static_cast<size_t>(level)].push_back(pid);
}

void MlfqScheduler::on_wake(ProcessTable& t, Pid pid, SimTime, SimTime) {
  // Wake-ups restart at the top queue; pinned entries keep their home level.
  const Process& p = proc(t, pid);
  enqueue(t, pid, p.mlfq_pin.value_or(0));
}

void MlfqScheduler::on_slice_expired(ProcessTable& t, Pid pid) {
  Process& p = proc(t, pid);
  const int next = p.mlfq_pin
                       ? *p.mlfq_pin
                       : std::min(p.mlfq_level + 1,
                                  static_cast<int>(levels_.size()) - 1);
  enqueue(t, pid, next);
}

void MlfqScheduler::on_preempted(ProcessTable& t, Pid pid, SimTime remaining) {
  Process& p = proc(t, pid);
  levels_[static_cast<size_t>(p.mlfq_level)].push_front(pid);
  if (remaining > 0) resume_[pid] = remaining;
}

std::optional<PickResult> MlfqScheduler::pick_next(ProcessTable&, SimTime) {
  for (size_t lvl = 0; lvl < levels_.size(); ++lvl) {
    auto& q = levels_[lvl];
    if (q.empty()) continue;
    const Pid pid = q.front();
    q.pop_front();
    SimTime slice = grant_for_level(static_cast<int>(lvl));
    if (auto it = resume_.find(pid); it != resume_.end()) {
      slice = it->second;
      resume_.erase(it);
    }
    return PickResult{pid, slice};
  }
  return std::nullopt;
}

bool MlfqScheduler::should_preempt(ProcessTable& t, Pid running, SimTime,
                                   bool) {
  // Absolute priority: anything waiting in a higher queue interrupts a
  // lower-queue run.
  const int run_level = proc(t, running).mlfq_level;
  for (int lvl = 0; lvl < run_level; ++lvl)
    if (!levels_[static_cast<size_t>(lvl)].empty()) return true;
  return false;
}

bool MlfqScheduler::has_ready() const {
  for (const auto& q : levels_)
    if (!q.empty()) return true;
  return false;
}

int MlfqScheduler::ready_count() const {
  int n = 0;
  for (const auto& q : levels_) n += static_cast<int>(q.size());
  return n;
}

}  // namespace appease
