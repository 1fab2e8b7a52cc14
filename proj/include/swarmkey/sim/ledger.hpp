#pragma once

#include <span>
#include <string>
#include <vector>

#include "swarmkey/group.hpp"
#include "swarmkey/sim/config.hpp"

namespace swarmkey::sim {

// One actor's public post after a ceremony: its x-coordinate, the aggregate
// key it computed, and sigma_i * G.
struct LedgerPost {
  PartyId party = kNobody;
  uint32_t round = 0;
  Scalar x;
  GroupElement A;
  GroupElement share_commitment;
};

// Append-only log.
class Ledger {
 public:
  void append(LedgerPost post) { posts_.push_back(std::move(post)); }
  const std::vector<LedgerPost>& posts() const { return posts_; }
  std::vector<LedgerPost> round(uint32_t r) const;

 private:
  std::vector<LedgerPost> posts_;
};

enum class LedgerVerdict { kAccept, kRejectDisagreement, kRejectInterpolation, kInconclusive };
std::string_view to_string(LedgerVerdict v);

struct LedgerCheck {
  LedgerVerdict verdict = LedgerVerdict::kInconclusive;
  std::size_t cohorts_checked = 0;
  std::size_t cohorts_failed = 0;
  std::string detail;
};

// Checks one cohort (indices into `posts`): every posted A agrees and
// sum_{i in C} l_i(C) (sigma_i G) equals it. Fewer than n posts is inconclusive.
LedgerCheck ledger_check(const Group& group, std::span<const LedgerPost> posts, std::size_t n,
                         std::span<const std::size_t> cohort);
// The same over every size-t cohort.
LedgerCheck ledger_check_all(const Group& group, std::span<const LedgerPost> posts, std::size_t n, std::size_t t);

}  // namespace swarmkey::sim
