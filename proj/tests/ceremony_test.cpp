#include <gtest/gtest.h>

#include "oracles.hpp"
#include "swarmkey/sim/ceremony.hpp"
#include "swarmkey/sim/share_box.hpp"

namespace swarmkey::sim {
namespace {

constexpr uint64_t kLargeQ = (uint64_t{1} << 61) - 1;

SwarmConfig toy(std::size_t n, std::size_t t, uint64_t seed) {
  SwarmConfig c;
  c.n = n;
  c.t = t;
  c.seed = seed;
  return c;
}

Scalar sum_constants(const Group& g, const CeremonyResult& r) {
  Scalar s;
  for (const auto& [id, c] : r.shared_constants) s = g.scalars().add(s, c);
  return s;
}

TEST(RunCeremony, HonestToySwarmAgreesWithOracle) {
  const SwarmConfig cfg = toy(5, 3, 42);
  const CeremonyResult r = run_ceremony(cfg);
  ASSERT_EQ(r.status, CeremonyStatus::kSuccess) << r.cause;
  const GroupPtr g = make_toy_group();
  ASSERT_EQ(r.reported_keys.size(), 5u);
  for (const auto& [id, A] : r.reported_keys) EXPECT_EQ(A, *r.public_key);
  Uint a_sum = 0;
  for (const auto& [id, a] : r.secret_scalars) a_sum += a;
  EXPECT_EQ(testing::toy_dlog_exhaustive(*g, *r.public_key), static_cast<uint64_t>(a_sum % 1019));
  EXPECT_EQ(r.attempts, 1u);
  ASSERT_EQ(r.keys.shares.size(), 5u);
  for (const auto& idx : testing::subsets(5, 3)) {
    std::vector<Share> c;
    for (std::size_t i : idx) c.push_back(r.keys.shares[i].share);
    EXPECT_EQ(interpolate_at_zero(g->scalars(), c).value, a_sum % 1019);
  }
}

}  // namespace
}  // namespace swarmkey::sim
