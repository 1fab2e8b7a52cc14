#pragma once

// Honest in-process ceremony without the simulator, for tests of the layers
// below it.

#include <vector>

#include "swarmkey/keygen.hpp"
#include "swarmkey/threshold.hpp"

namespace swarmkey::testing {

struct HonestKeygen {
  Uint secret_sum;  // sum of the unreduced a_i
  GroupElement public_key;
  std::vector<Share> shares;
};

inline HonestKeygen honest_keygen(const Group& g, std::size_t n, std::size_t t, RandomSource& rng) {
  std::vector<Scalar> xs;
  for (std::size_t i = 1; i <= n; ++i) xs.push_back(Scalar{Uint(i)});
  std::vector<ActorKeygenState> states;
  std::vector<std::vector<ShareBundle>> out;
  HonestKeygen result{0, {}, {}};
  for (std::size_t i = 0; i < n; ++i) {
    BeginOutput b = begin(g, i, xs, t, rng);
    result.secret_sum += b.state.a;
    states.push_back(std::move(b.state));
    out.push_back(std::move(b.bundles));
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<ShareBundle> in;
    for (std::size_t i = 0; i < n; ++i) in.push_back(out[i][j]);
    const KeygenResult r = complete(g, states[j], in);
    result.public_key = r.aggregate_public;
    result.shares.push_back(r.my_share);
  }
  return result;
}

inline std::vector<Share> pick(const std::vector<Share>& all, const std::vector<std::size_t>& idx) {
  std::vector<Share> out;
  for (std::size_t i : idx) out.push_back(all[i]);
  return out;
}

// Both signing rounds run in-process for one cohort; nullopt if the aggregate
// does not verify.
inline std::optional<Signature> threshold_sign(const Group& g, const std::vector<Share>& cohort,
                                               const GroupElement& A, ByteView m, RandomSource& rng) {
  std::vector<GroupElement> Rs;
  std::vector<NonceHandle> handles;
  for (std::size_t i = 0; i < cohort.size(); ++i) {
    Round1Output r1 = sign_round1(g, rng);
    Rs.push_back(r1.R);
    handles.push_back(std::move(r1.handle));
  }
  GroupElement R = g.identity();
  for (const auto& Ri : Rs) R = g.point_add(R, Ri);
  std::vector<Scalar> Ss;
  for (std::size_t i = 0; i < cohort.size(); ++i) {
    const Scalar l = lagrange_coefficient(g.scalars(), i, cohort);
    Ss.push_back(sign_round2(g, handles[i], R, l, cohort[i], A, m));
  }
  try {
    return aggregate_and_verify(g, Rs, Ss, A, m);
  } catch (const AggregateInvalidError&) {
    return std::nullopt;
  }
}

}  // namespace swarmkey::testing
