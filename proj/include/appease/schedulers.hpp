#pragma once

#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "appease/model.hpp"
#include "appease/rbpe.hpp"
#include "appease/types.hpp"

namespace appease {

using ProcessTable = std::map<Pid, Process>;

inline Process& proc(ProcessTable& t, Pid pid) { return t.at(pid); }

// weight(0) = 1024, one nice step is a factor of 1.25.
int nice_to_weight(int nice);

struct ShareResult {
  double fraction = 0.0;  // long-run CPU share
  SimTime slice = 0;      // per-period grant in microseconds
};

// CPU share and slice of the process with weight `weight` among `weights`
// (which includes it), for one scheduling period.
ShareResult cpu_share(int weight, const std::vector<int>& weights,
                      SimTime period);

struct PickResult {
  Pid pid = 0;
  SimTime slice = 0;
};

class TraceSink {
 public:
  virtual ~TraceSink() = default;
  virtual void record(SimTime t, const char* event, Pid pid, RequestId req,
                      std::string detail) = 0;
};

// Uniform policy surface driven by the event engine. Schedulers own the
// ready-queue structure; the engine owns process state and time.
class Scheduler {
 public:
  virtual ~Scheduler() = default;
  virtual const char* name() const = 0;

  // `slept` is how long the process was off the runnable set.
  virtual void on_wake(ProcessTable& t, Pid pid, SimTime now, SimTime slept) = 0;
  // A brand-new process enters the system already runnable.
  virtual void on_spawn(ProcessTable& t, Pid pid, SimTime now) {
    on_wake(t, pid, now, /*slept=*/now + 1);
  }
  virtual void on_slice_expired(ProcessTable& t, Pid pid) = 0;
  virtual void on_preempted(ProcessTable& t, Pid pid, SimTime remaining) = 0;
  // Voluntary yield while still runnable (e.g. picks up its next queued
  // request after settling one).
  virtual void on_requeue(ProcessTable& t, Pid pid) { on_slice_expired(t, pid); }
  virtual std::optional<PickResult> pick_next(ProcessTable& t, SimTime now) = 0;
  // Whether the running process should give way right now; `woke` tells the
  // policy the check is due to a wake-up (fair-share only preempts on wakes).
  virtual bool should_preempt(ProcessTable& t, Pid running, SimTime now,
                              bool woke) = 0;
  virtual bool has_ready() const = 0;
  virtual int ready_count() const = 0;

  // Hooks used by the boost-aware policy; no-ops elsewhere.
  virtual std::optional<SimTime> tick_period() const { return std::nullopt; }
  virtual void on_tick(ProcessTable&, SimTime, int /*runnable*/, TraceSink*) {}
  virtual void on_request_delivered(ProcessTable&, Pid, SocketKind, SimTime,
                                    TraceSink*) {}
  // CPU consumption callback for the running process.
  virtual void on_cpu_used(Pid, SimTime) {}
};

// ---------------------------------------------------------------------------
// Round-Robin: single FIFO, fixed quantum, tail reinsertion.

class RoundRobinScheduler : public Scheduler {
 public:
  explicit RoundRobinScheduler(SimTime quantum);
  const char* name() const override { return "rr"; }
  void on_wake(ProcessTable&, Pid, SimTime, SimTime) override;
  void on_slice_expired(ProcessTable&, Pid) override;
  void on_preempted(ProcessTable&, Pid, SimTime remaining) override;
  std::optional<PickResult> pick_next(ProcessTable&, SimTime) override;
  bool should_preempt(ProcessTable&, Pid, SimTime, bool) override { return false; }
  bool has_ready() const override { return !queue_.empty(); }
  int ready_count() const override { return static_cast<int>(queue_.size()); }

 private:
  SimTime quantum_;
  std::deque<Pid> queue_;
  std::map<Pid, SimTime> resume_;
};

// ---------------------------------------------------------------------------
// Multilevel feedback queue: m levels, level i grants 2^i * q, wake-ups
// re-enter level 0, expiry demotes, lower levels have absolute priority.

class MlfqScheduler : public Scheduler {
 public:
  MlfqScheduler(int levels, SimTime base_quantum);
  const char* name() const override { return "mlfq"; }
  void on_wake(ProcessTable&, Pid, SimTime, SimTime) override;
  void on_slice_expired(ProcessTable&, Pid) override;
  void on_preempted(ProcessTable&, Pid, SimTime remaining) override;
  std::optional<PickResult> pick_next(ProcessTable&, SimTime) override;
  bool should_preempt(ProcessTable&, Pid running, SimTime, bool) override;
  bool has_ready() const override;
  int ready_count() const override;
  SimTime grant_for_level(int level) const;

 private:
  void enqueue(ProcessTable&, Pid, int level);
  SimTime base_quantum_;
  std::vector<std::deque<Pid>> levels_;
  std::map<Pid, SimTime> resume_;
};

// ---------------------------------------------------------------------------
// Fair-share scheduling: runnable set ordered by (vruntime, pid); the period
// (sch_lat, stretched to N * min_granularity when crowded) is divided by
// task weight. Short sleepers wake at the front of the order.

struct FairShareParams {
  SimTime sch_lat = 20 * kUsPerMs;
  SimTime sleeper_threshold = 20 * kUsPerMs;
  SimTime min_granularity = 2500;  // sch_lat / 8 unless configured
};

class FairShareScheduler : public Scheduler {
 public:
  explicit FairShareScheduler(FairShareParams p);
  const char* name() const override { return "fairshare"; }
  void on_wake(ProcessTable&, Pid, SimTime, SimTime slept) override;
  void on_slice_expired(ProcessTable&, Pid) override;
  void on_preempted(ProcessTable&, Pid, SimTime) override;
  std::optional<PickResult> pick_next(ProcessTable&, SimTime) override;
  bool should_preempt(ProcessTable&, Pid running, SimTime, bool woke) override;
  bool has_ready() const override { return !queue_.empty(); }
  int ready_count() const override { return static_cast<int>(queue_.size()); }

  // Scheduling period for n runnable tasks.
  SimTime period(int n) const;
  // Slice of `pid` when the given set of pids is runnable.
  SimTime slice_for(ProcessTable&, Pid pid, int runnable) const;
  // Nice-0 slice at n runnable tasks.
  SimTime default_slice(int n) const;

  void remove_ready(Pid pid, const ProcessTable&);
  std::int64_t min_vruntime() const { return min_vruntime_; }
  const FairShareParams& params() const { return params_; }

 private:
  std::int64_t total_ready_weight(const ProcessTable&) const;
  FairShareParams params_;
  std::set<std::pair<std::int64_t, Pid>> queue_;
  std::int64_t min_vruntime_ = 0;
};

// ---------------------------------------------------------------------------
// Fair-share plus request-based priority elevation: a socket delivery boosts
// the receiver's nice level according to the load table; boosts relax one
// step per delay period, sampled on a fixed tick.

struct RbpeParams {
  FairShareParams fair;
  SimTime decay_sample_period = 10 * kUsPerMs;
  std::vector<RbpeRow> table;  // empty = built-in table
  std::optional<std::int64_t> load_override;
};

class FairShareRbpeScheduler : public FairShareScheduler {
 public:
  explicit FairShareRbpeScheduler(RbpeParams p);
  const char* name() const override { return "fairshare_rbpe"; }
  std::optional<SimTime> tick_period() const override {
    return params_.decay_sample_period;
  }
  void on_tick(ProcessTable&, SimTime now, int runnable, TraceSink*) override;
  void on_request_delivered(ProcessTable&, Pid, SocketKind, SimTime,
                            TraceSink*) override;
  std::int64_t load() const;
  void seed_load(std::int64_t fixed) { estimator_.reset(fixed); }
  const EpplState& eppl() const { return eppl_; }

 private:
  RbpeParams params_;
  LoadEstimator estimator_;
  EpplState eppl_;
};

// ---------------------------------------------------------------------------
// Unhappiness-greedy two-queue policy: processes holding positive
// unhappiness form an absolute-priority class; the pick follows the request
// with the largest weighted total, then the hottest ready process serving
// it. Everything else runs under a fair-share fallback. New processes get a
// starter unhappiness grant that burns down as they run.

class AppeasementContext {
 public:
  virtual ~AppeasementContext() = default;
  // Active (non-frozen) unhappiness currently held by pid, clamped at zero.
  virtual std::int64_t held_unhappiness(Pid) const = 0;
  // Greedy pick among pending requests; only ready processes holding a
  // positive entry are eligible.
  virtual std::optional<Pid> best_request_pick() const = 0;
  // Same rule evaluated over ready processes other than `except`.
  virtual bool any_positive_ready(Pid except) const = 0;
};

struct AppeasementParams {
  FairShareParams fallback;
  std::optional<std::int64_t> bootstrap_u;  // default: one fallback slice
};

class AppeasementScheduler : public Scheduler {
 public:
  AppeasementScheduler(AppeasementParams p, const AppeasementContext* ctx);
  const char* name() const override { return "appeasement"; }
  void on_wake(ProcessTable&, Pid, SimTime, SimTime) override;
  void on_spawn(ProcessTable&, Pid, SimTime) override;
  void on_slice_expired(ProcessTable&, Pid) override;
  void on_preempted(ProcessTable&, Pid, SimTime) override;
  std::optional<PickResult> pick_next(ProcessTable&, SimTime) override;
  bool should_preempt(ProcessTable&, Pid running, SimTime, bool woke) override;
  bool has_ready() const override { return fallback_.has_ready(); }
  int ready_count() const override { return fallback_.ready_count(); }
  void on_cpu_used(Pid, SimTime) override;

  bool is_unhappy(Pid pid) const;
  std::int64_t bootstrap_left(Pid pid) const;

 private:
  std::optional<Pid> best_bootstrap_ready(const ProcessTable&) const;
  AppeasementParams params_;
  const AppeasementContext* ctx_;
  FairShareScheduler fallback_;
  std::map<Pid, std::int64_t> bootstrap_;
  std::set<Pid> ready_;
};

}  // namespace appease
