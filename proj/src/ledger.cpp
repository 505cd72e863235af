#include "appease/ledger.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace appease {

namespace {
std::string key_str(RequestId req, Pid pid) {
  return "request " + std::to_string(req) + ", process " + std::to_string(pid);
}
}  // namespace

void UnhappinessLedger::create_entry(RequestId req, Pid pid) {
  entries_[{req, pid}];  // value-initialized: u = 0, active
}

bool UnhappinessLedger::has_entry(RequestId req, Pid pid) const {
  return entries_.count({req, pid}) > 0;
}

const UnhappinessLedger::Entry& UnhappinessLedger::entry(RequestId req,
                                                         Pid pid) const {
  auto it = entries_.find({req, pid});
  if (it == entries_.end())
    throw StateError("no ledger entry for " + key_str(req, pid));
  return it->second;
}

UnhappinessLedger::Entry& UnhappinessLedger::require(RequestId req, Pid pid) {
  auto it = entries_.find({req, pid});
  if (it == entries_.end())
    throw StateError("no ledger entry for " + key_str(req, pid));
  return it->second;
}

void UnhappinessLedger::accrue(RequestId req, Pid pid, SimTime dt,
                               bool was_running, Accounting mode) {
  if (dt <= 0) throw std::invalid_argument("accrue: dt must be positive");
  Entry& e = require(req, pid);
  if (e.frozen) throw StateError("accrue on frozen entry, " + key_str(req, pid));
  if (!was_running) {
    e.u += dt;
  } else if (mode == Accounting::WaitMinusRun) {
    e.u -= dt;
  }
  // NetWait while running: elapsed time and CPU time cancel.
}

void UnhappinessLedger::accrue_all(SimTime dt, Pid running,
                                   std::optional<RequestId> serving,
                                   bool completing, Accounting mode) {
  if (dt <= 0) return;
  for (auto& [key, e] : entries_) {
    if (e.frozen) continue;
    const bool is_running_entry =
        serving && key.first == *serving && key.second == running;
    if (!is_running_entry) {
      e.u += dt;
    } else if (!completing && mode == Accounting::WaitMinusRun) {
      e.u -= dt;
    }
  }
}

void UnhappinessLedger::split_on_block(RequestId req, Pid requester,
                                       Pid servicer, double alpha) {
  Entry& r = require(req, requester);
  if (r.frozen)
    throw StateError("split: no active entry on requester, " +
                     key_str(req, requester));
  auto it = entries_.find({req, servicer});
  if (it != entries_.end() && !it->second.frozen && it->second.u != 0)
    throw StateError("split: servicer already holds an active entry, " +
                     key_str(req, servicer));
  // Integer split: the servicer gets the exact remainder so that
  // split followed by merge restores u bit-for-bit.
  const std::int64_t kept = static_cast<std::int64_t>(
      std::llround(alpha * static_cast<double>(r.u)));
  Entry& s = entries_[{req, servicer}];
  s.u = r.u - kept;
  s.frozen = false;
  r.u = kept;
  r.frozen = true;
}

void UnhappinessLedger::merge_on_unblock(RequestId req, Pid requester,
                                         Pid servicer) {
  Entry& r = require(req, requester);
  if (!r.frozen)
    throw StateError("merge: requester entry not frozen, " +
                     key_str(req, requester));
  Entry& s = require(req, servicer);
  if (s.frozen)
    throw StateError("merge: servicer entry not active, " +
                     key_str(req, servicer));
  r.u += s.u;
  r.frozen = false;
  s.u = 0;
}

double UnhappinessLedger::settle_response(RequestId req, double customer_weight,
                                          double request_weight) {
  bool any = false;
  std::int64_t sum = 0;
  for (auto& [key, e] : entries_) {
    if (key.first != req) continue;
    any = true;
    sum += e.u;
    e.u = 0;
    e.frozen = false;
  }
  if (!any) throw StateError("settle: request " + std::to_string(req) +
                             " has no entries (double settle?)");
  return customer_weight * request_weight * static_cast<double>(sum);
}

double UnhappinessLedger::request_unhappiness(RequestId req,
                                              double customer_weight,
                                              double request_weight) const {
  return customer_weight * request_weight * static_cast<double>(raw_sum(req));
}

std::int64_t UnhappinessLedger::raw_sum(RequestId req) const {
  std::int64_t sum = 0;
  for (const auto& [key, e] : entries_)
    if (key.first == req) sum += e.u;
  return sum;
}

std::int64_t UnhappinessLedger::active_held_by(Pid pid) const {
  std::int64_t sum = 0;
  for (const auto& [key, e] : entries_)
    if (key.second == pid && !e.frozen) sum += e.u;
  return sum;
}

void UnhappinessLedger::drop_request(RequestId req) {
  for (auto it = entries_.begin(); it != entries_.end();) {
    if (it->first.first == req)
      it = entries_.erase(it);
    else
      ++it;
  }
}

}  // namespace appease
