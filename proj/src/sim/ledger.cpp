#include "swarmkey/sim/ledger.hpp"

#include <functional>

#include "swarmkey/shamir.hpp"

namespace swarmkey::sim {
namespace {

// Common preconditions; returns a verdict if the check cannot proceed.
std::optional<LedgerCheck> precheck(std::span<const LedgerPost> posts, std::size_t n) {
  if (posts.size() < n) {
    return LedgerCheck{LedgerVerdict::kInconclusive, 0, 0,
                       std::to_string(posts.size()) + " of " + std::to_string(n) + " posts present"};
  }
  for (const LedgerPost& p : posts) {
    if (!(p.A == posts.front().A)) {
      return LedgerCheck{LedgerVerdict::kRejectDisagreement, 0, 0, "posted aggregate keys differ"};
    }
  }
  return std::nullopt;
}

bool cohort_holds(const Group& g, std::span<const LedgerPost> posts, std::span<const std::size_t> cohort) {
  std::vector<Scalar> xs;
  for (std::size_t i : cohort) xs.push_back(posts[i].x);
  GroupElement sum = g.identity();
  for (std::size_t i : cohort) {
    const Scalar l = lagrange_coefficient(g.scalars(), posts[i].x, xs);
    sum = g.point_add(sum, g.point_mul(l, posts[i].share_commitment));
  }
  return sum == posts.front().A;
}

}  // namespace

std::vector<LedgerPost> Ledger::round(uint32_t r) const {
  std::vector<LedgerPost> out;
  for (const LedgerPost& p : posts_) {
    if (p.round == r) out.push_back(p);
  }
  return out;
}

std::string_view to_string(LedgerVerdict v) {
  switch (v) {
    case LedgerVerdict::kAccept:
      return "accept";
    case LedgerVerdict::kRejectDisagreement:
      return "reject-disagreement";
    case LedgerVerdict::kRejectInterpolation:
      return "reject-interpolation";
    case LedgerVerdict::kInconclusive:
      return "inconclusive";
  }
  return "?";
}

LedgerCheck ledger_check(const Group& g, std::span<const LedgerPost> posts, std::size_t n,
                         std::span<const std::size_t> cohort) {
  if (auto early = precheck(posts, n)) return *early;
  for (std::size_t i : cohort) {
    if (i >= posts.size()) throw ParameterError("cohort index out of range");
  }
  const bool ok = cohort_holds(g, posts, cohort);
  return LedgerCheck{ok ? LedgerVerdict::kAccept : LedgerVerdict::kRejectInterpolation, 1, ok ? 0u : 1u,
                     ok ? "" : "interpolated key differs from the posted key"};
}

LedgerCheck ledger_check_all(const Group& g, std::span<const LedgerPost> posts, std::size_t n, std::size_t t) {
  if (auto early = precheck(posts, n)) return *early;
  if (t < 1 || t > posts.size()) throw ParameterError("bad cohort size");
  LedgerCheck out{LedgerVerdict::kAccept, 0, 0, {}};
  std::vector<std::size_t> cohort;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (cohort.size() == t) {
      ++out.cohorts_checked;
      if (!cohort_holds(g, posts, cohort)) ++out.cohorts_failed;
      return;
    }
    for (std::size_t i = start; i < posts.size(); ++i) {
      cohort.push_back(i);
      rec(i + 1);
      cohort.pop_back();
    }
  };
  rec(0);
  if (out.cohorts_failed > 0) {
    out.verdict = LedgerVerdict::kRejectInterpolation;
    out.detail = std::to_string(out.cohorts_failed) + " of " + std::to_string(out.cohorts_checked) +
                 " cohorts interpolate to a different key";
  }
  return out;
}

}  // namespace swarmkey::sim
