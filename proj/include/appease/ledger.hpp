#pragma once

#include <cstdint>
#include <map>
#include <utility>

#include "appease/model.hpp"
#include "appease/types.hpp"

namespace appease {

// Per-(request, process) delay-experience accounting.
//
// Each pending request holds one entry per process that has been involved in
// serving it. The entry value u is kept in integer microseconds so that the
// split/merge pair composes to an exact identity and simulation results can
// be compared against closed forms with zero tolerance.
//
// Lifecycle of an entry set, for a request served by P via servicer S:
//   arrive   -> entry (R,P) created at 0, active
//   accrue   -> active entries grow while their holder waits; in
//               WaitMinusRun mode they shrink while the holder runs
//   block    -> split: (R,P) keeps round(alpha*u) and freezes,
//               (R,S) gets the remainder, active
//   unblock  -> merge: (R,P) absorbs (R,S) and thaws, (R,S) reset to 0
//   settle   -> realized value W(c)*w*sum(u) is returned, all entries zeroed
class UnhappinessLedger {
 public:
  struct Entry {
    std::int64_t u = 0;  // microseconds-equivalent, may go negative in WaitMinusRun
    bool frozen = false;
  };

  using Key = std::pair<RequestId, Pid>;

  void create_entry(RequestId req, Pid pid);
  bool has_entry(RequestId req, Pid pid) const;
  const Entry& entry(RequestId req, Pid pid) const;

  // Advances one entry by dt. `was_running` means the holding process spent
  // the interval on the CPU serving this request.
  void accrue(RequestId req, Pid pid, SimTime dt, bool was_running,
              Accounting mode);

  // Advances every active entry of every request by dt in one pass.
  // The entry held by `running` for `serving` gets running-time treatment;
  // everything else accrues as waiting. When `completing` is set the running
  // entry is left untouched: the interval ends with the holder voluntarily
  // finishing its current stretch, and that final stretch is not charged
  // against the waiting it is about to resolve.
  void accrue_all(SimTime dt, Pid running, std::optional<RequestId> serving,
                  bool completing, Accounting mode);

  // Requester blocks on servicer: requester keeps round(alpha*u) frozen,
  // servicer entry receives the rest and becomes the active one.
  void split_on_block(RequestId req, Pid requester, Pid servicer, double alpha);

  // Servicer responded: requester entry = frozen value + servicer value,
  // unfrozen; servicer entry reset to zero.
  void merge_on_unblock(RequestId req, Pid requester, Pid servicer);

  // Zeroes all entries of the request and returns weight * w * sum(u) as it
  // stood at the moment of the response.
  double settle_response(RequestId req, double customer_weight,
                         double request_weight);

  // weight * w * sum over all entries (frozen included).
  double request_unhappiness(RequestId req, double customer_weight,
                             double request_weight) const;

  std::int64_t raw_sum(RequestId req) const;

  // Sum of active (non-frozen) entry values held by one process.
  std::int64_t active_held_by(Pid pid) const;

  const std::map<Key, Entry>& entries() const { return entries_; }

  void drop_request(RequestId req);

 private:
  Entry& require(RequestId req, Pid pid);
  std::map<Key, Entry> entries_;
};

}  // namespace appease
