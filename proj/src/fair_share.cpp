#include <algorithm>
#include <stdexcept>
#include <string>

#include "appease/schedulers.hpp"

namespace appease {

FairShareScheduler::FairShareScheduler(FairShareParams p) : params_(p) {
  if (p.sch_lat <= 0) throw std::invalid_argument("fairshare: sch_lat must be positive");
}

SimTime FairShareScheduler::period(int n) const {
  // Crowded queues stretch the period so nobody's slice collapses below
  // the granularity floor.
  const SimTime stretched = static_cast<SimTime>(n) * params_.min_granularity;
  return std::max(params_.sch_lat, stretched);
}

SimTime FairShareScheduler::default_slice(int n) const {
  if (n <= 0) n = 1;
  return period(n) / n;
}

std::int64_t FairShareScheduler::total_ready_weight(const ProcessTable& t) const {
  std::int64_t total = 0;
  for (const auto& [v, pid] : queue_) total += nice_to_weight(t.at(pid).nice);
  return total;
}

SimTime FairShareScheduler::slice_for(ProcessTable& t, Pid pid,
                                      int runnable) const {
  const std::int64_t w = nice_to_weight(proc(t, pid).nice);
  const std::int64_t total = total_ready_weight(t);
  if (total == 0) return default_slice(runnable);
  return static_cast<SimTime>(w * period(runnable) / total);
}

void FairShareScheduler::on_wake(ProcessTable& t, Pid pid, SimTime,
                                 SimTime slept) {
  Process& p = proc(t, pid);
  if (slept < params_.sleeper_threshold) {
    // Short sleeper: place it at the front of the order.
    p.vruntime = min_vruntime_;
  } else {
    // Long sleeper: cap the credit it accumulated while away.
    p.vruntime = std::max(p.vruntime, min_vruntime_);
  }
  queue_.insert({p.vruntime, pid});
}

void FairShareScheduler::on_slice_expired(ProcessTable& t, Pid pid) {
  // vruntime was advanced during accounting; just reinsert in order.
  queue_.insert({proc(t, pid).vruntime, pid});
}

void FairShareScheduler::on_preempted(ProcessTable& t, Pid pid, SimTime) {
  queue_.insert({proc(t, pid).vruntime, pid});
}

std::optional<PickResult> FairShareScheduler::pick_next(ProcessTable& t,
                                                        SimTime) {
  if (queue_.empty()) return std::nullopt;
  const int n = static_cast<int>(queue_.size());
  const auto [v, pid] = *queue_.begin();
  const SimTime slice = slice_for(t, pid, n);
  queue_.erase(queue_.begin());
  min_vruntime_ = std::max(min_vruntime_, v);
  return PickResult{pid, std::max<SimTime>(slice, 1)};
}

bool FairShareScheduler::should_preempt(ProcessTable& t, Pid running,
                                        SimTime, bool woke) {
  if (!woke || queue_.empty()) return false;
  const Process& r = proc(t, running);
  return *queue_.begin() < std::make_pair(r.vruntime, running);
}

void FairShareScheduler::remove_ready(Pid pid, const ProcessTable& t) {
  queue_.erase({t.at(pid).vruntime, pid});
}

// --------------------------------------------------------------------------
// Fair-share + request-based priority elevation

FairShareRbpeScheduler::FairShareRbpeScheduler(RbpeParams p)
    : FairShareScheduler(p.fair), params_(std::move(p)) {
  if (params_.table.empty()) params_.table = default_rbpe_table();
  for (size_t i = 0; i + 1 < params_.table.size(); ++i)
    if (params_.table[i].load_le >= params_.table[i + 1].load_le)
      throw std::invalid_argument("rbpe: table thresholds must increase");
  if (params_.load_override) estimator_.reset(*params_.load_override);
}

std::int64_t FairShareRbpeScheduler::load() const {
  return params_.load_override ? *params_.load_override : estimator_.value();
}

void FairShareRbpeScheduler::on_tick(ProcessTable& t, SimTime now,
                                     int runnable, TraceSink* sink) {
  if (!params_.load_override)
    estimator_.update(runnable, params_.decay_sample_period);
  for (const auto& [pid, nice] : eppl_.decay(now)) {
    proc(t, pid).nice = nice;
    if (sink)
      sink->record(now, "decay", pid, -1, "nice=" + std::to_string(nice));
  }
}

void FairShareRbpeScheduler::on_request_delivered(ProcessTable& t, Pid pid,
                                                  SocketKind kind, SimTime now,
                                                  TraceSink* sink) {
  const auto changed = eppl_.on_request(pid, kind, load(), now, params_.table);
  if (!changed) return;
  proc(t, pid).nice = *changed;
  if (sink) {
    const auto& e = eppl_.entries().at(pid);
    sink->record(now, "boost", pid, -1,
                 "nice=" + std::to_string(*changed) +
                     " delay=" + std::to_string(e.delay) +
                     " kind=" + (kind == SocketKind::UnixSocket ? "unix" : "network"));
  }
}

}  // namespace appease
