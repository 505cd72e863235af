#include <algorithm>

#include "appease/schedulers.hpp"

namespace appease {

AppeasementScheduler::AppeasementScheduler(AppeasementParams p,
                                           const AppeasementContext* ctx)
    : params_(std::move(p)), ctx_(ctx), fallback_(params_.fallback) {}

bool AppeasementScheduler::is_unhappy(Pid pid) const {
  if (ctx_ && ctx_->held_unhappiness(pid) > 0) return true;
  auto it = bootstrap_.find(pid);
  return it != bootstrap_.end() && it->second > 0;
}

std::int64_t AppeasementScheduler::bootstrap_left(Pid pid) const {
  auto it = bootstrap_.find(pid);
  return it == bootstrap_.end() ? 0 : it->second;
}

void AppeasementScheduler::on_wake(ProcessTable& t, Pid pid, SimTime now,
                                   SimTime slept) {
  ready_.insert(pid);
  fallback_.on_wake(t, pid, now, slept);
}

void AppeasementScheduler::on_spawn(ProcessTable& t, Pid pid, SimTime now) {
  // A starter grant puts the newcomer into the priority class until it has
  // run that much CPU.
  const int n = fallback_.ready_count() + 1;
  bootstrap_[pid] =
      params_.bootstrap_u.value_or(fallback_.default_slice(std::max(n, 1)));
  on_wake(t, pid, now, now + 1);
}

void AppeasementScheduler::on_slice_expired(ProcessTable& t, Pid pid) {
  ready_.insert(pid);
  fallback_.on_slice_expired(t, pid);
}

void AppeasementScheduler::on_preempted(ProcessTable& t, Pid pid, SimTime r) {
  ready_.insert(pid);
  fallback_.on_preempted(t, pid, r);
}

void AppeasementScheduler::on_cpu_used(Pid pid, SimTime dt) {
  // The starter grant only burns down; waiting does not refill it.
  auto it = bootstrap_.find(pid);
  if (it == bootstrap_.end()) return;
  it->second -= dt;
  if (it->second <= 0) bootstrap_.erase(it);
}

std::optional<Pid> AppeasementScheduler::best_bootstrap_ready(
    const ProcessTable&) const {
  std::optional<Pid> best;
  std::int64_t best_u = 0;
  for (Pid pid : ready_) {
    auto it = bootstrap_.find(pid);
    if (it == bootstrap_.end() || it->second <= 0) continue;
    if (!best || it->second > best_u) {
      best = pid;
      best_u = it->second;
    }
  }
  return best;
}

std::optional<PickResult> AppeasementScheduler::pick_next(ProcessTable& t,
                                                          SimTime now) {
  if (!fallback_.has_ready()) return std::nullopt;
  const int n = fallback_.ready_count();
  const SimTime slice = fallback_.default_slice(n);
  // Request-serving picks outrank starter grants, which outrank the
  // fair-share class.
  if (ctx_) {
    if (auto pid = ctx_->best_request_pick()) {
      fallback_.remove_ready(*pid, t);
      ready_.erase(*pid);
      return PickResult{*pid, slice};
    }
  }
  if (auto pid = best_bootstrap_ready(t)) {
    fallback_.remove_ready(*pid, t);
    ready_.erase(*pid);
    return PickResult{*pid, slice};
  }
  auto pick = fallback_.pick_next(t, now);
  if (pick) ready_.erase(pick->pid);
  return pick;
}

bool AppeasementScheduler::should_preempt(ProcessTable& t, Pid running,
                                          SimTime now, bool woke) {
  // The priority class is absolute: a zero-unhappiness process never keeps
  // the CPU while an unhappy one is ready.
  if (!is_unhappy(running) && ctx_ && ctx_->any_positive_ready(running))
    return true;
  if (!is_unhappy(running) && best_bootstrap_ready(t)) return true;
  if (is_unhappy(running)) return false;
  return fallback_.should_preempt(t, running, now, woke);
}

}  // namespace appease
