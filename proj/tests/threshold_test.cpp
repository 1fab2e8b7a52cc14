#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "swarmkey/threshold.hpp"

namespace swarmkey {
namespace {

using testing::honest_keygen;
using testing::pick;
using testing::subsets;
using testing::threshold_sign;

constexpr uint64_t kLargeQ = (uint64_t{1} << 61) - 1;

Scalar S(uint64_t v) { return Scalar{Uint(v)}; }

TEST(SignRound1, NoncesAreFreshSubgroupElements) {
  const GroupPtr g = make_toy_group();
  SeededRandom rng(20);
  int collisions = 0;
  for (int i = 0; i < 200; ++i) {
    Round1Output a = sign_round1(*g, rng);
    Round1Output b = sign_round1(*g, rng);
    if (a.R == b.R) ++collisions;
    EXPECT_FALSE(g->is_low_order(a.R));
    EXPECT_TRUE(g->is_identity(g->point_mul(g->params().ell, a.R)));
  }
  EXPECT_LE(collisions, 3);
}

TEST(NonceHandle, SingleUse) {
  NonceHandle h = NonceHandle::from_value(S(3));
  EXPECT_FALSE(h.consumed());
  EXPECT_EQ(h.consume(), S(3));
  EXPECT_TRUE(h.consumed());
  EXPECT_THROW(h.consume(), NonceReuseError);
  NonceHandle moved = NonceHandle::from_value(S(4));
  NonceHandle target = std::move(moved);
  EXPECT_TRUE(moved.consumed());
  EXPECT_EQ(target.consume(), S(4));
}

TEST(SignRound2, WorkedResponse) {
  const ZMod f(Uint(1019));
  EXPECT_EQ(signer_response(f, S(3), S(2), S(5), S(7)), S(73));
  EXPECT_EQ(signer_response(f, S(3), S(0), S(5), S(7)), S(3));
  EXPECT_NE(signer_response(f, S(4), S(2), S(5), S(7)), S(73));
}

TEST(SignRound2, ConsumesHandle) {
  const GroupPtr g = make_toy_group();
  NonceHandle h = NonceHandle::from_value(S(3));
  const GroupElement R = g->base_mul(S(3));
  const GroupElement A = g->base_mul(S(9));
  const Share share{S(1), S(7)};
  const Scalar k = signing_challenge(*g, R, A, {});
  const Scalar out = sign_round2(*g, h, R, S(2), share, A, {});
  EXPECT_EQ(out, signer_response(g->scalars(), S(3), S(2), k, S(7)));
  EXPECT_THROW(sign_round2(*g, h, R, S(2), share, A, {}), NonceReuseError);
}

TEST(EddsaVerify, RfcVectorOneAndDirectSigner) {
  const GroupPtr g = make_ed25519_group();
  const GroupElement A = g->decode_or_throw(from_hex("d75a980182b10ab7d54bfed3c964073a0ee172f3daa62325af021a68f707511a"));
  const Bytes sig_bytes = from_hex(
      "e5564300c360ac729086e2cc806e828a84877f1eb8e5d974d873e065224901555fb8821590a33bacc61e39701cf9b46bd25bf5f0595bbe"
      "24655141438e7a100b");
  const Signature sig = decode_signature(*g, sig_bytes);
  EXPECT_TRUE(eddsa_verify(*g, A, {}, sig));
  EXPECT_EQ(encode_signature(*g, sig), sig_bytes);
  Signature bad = sig;
  bad.S = g->scalars().add(bad.S, S(1));
  EXPECT_FALSE(eddsa_verify(*g, A, {}, bad));
  EXPECT_FALSE(eddsa_verify(*g, A, as_bytes("x"), sig));
  Signature unreduced = sig;
  unreduced.S = Scalar{sig.S.value + g->params().ell};
  EXPECT_FALSE(eddsa_verify(*g, A, {}, unreduced));
}

TEST(EddsaVerify, IdentitySignatureRejected) {
  for (const GroupPtr& g : {make_toy_group(kLargeQ), make_ed25519_group()}) {
    SeededRandom rng(21);
    const GroupElement A = g->base_mul(rng.scalar(g->scalars()));
    EXPECT_FALSE(eddsa_verify(*g, A, as_bytes("hello"), Signature{g->identity(), S(0)}));
  }
}

TEST(AggregateAndVerify, ToyCohortsAndOracleSigner) {
  const GroupPtr g = make_toy_group();
  SeededRandom rng(22);
  const auto kg = honest_keygen(*g, 5, 3, rng);
  const auto m = as_bytes("swarm");
  std::vector<Signature> sigs;
  for (const auto& idx : subsets(5, 3)) {
    const auto sig = threshold_sign(*g, pick(kg.shares, idx), kg.public_key, m, rng);
    ASSERT_TRUE(sig);
    sigs.push_back(*sig);
  }
  const Signature direct = testing::direct_sign(*g, kg.secret_sum, S(17), m);
  EXPECT_TRUE(eddsa_verify(*g, kg.public_key, m, direct));
  EXPECT_NE(direct.R, sigs[0].R);
}

TEST(AggregateAndVerify, PerturbedResponseFails) {
  const GroupPtr g = make_toy_group();
  SeededRandom rng(23);
  const auto kg = honest_keygen(*g, 3, 2, rng);
  const std::vector<Share> cohort{kg.shares[0], kg.shares[2]};
  std::vector<GroupElement> Rs;
  std::vector<NonceHandle> hs;
  for (int i = 0; i < 2; ++i) {
    Round1Output r1 = sign_round1(*g, rng);
    Rs.push_back(r1.R);
    hs.push_back(std::move(r1.handle));
  }
  const GroupElement R = g->point_add(Rs[0], Rs[1]);
  std::vector<Scalar> Ss;
  for (std::size_t i = 0; i < 2; ++i) {
    Ss.push_back(sign_round2(*g, hs[i], R, lagrange_coefficient(g->scalars(), i, cohort), cohort[i], kg.public_key, {}));
  }
  EXPECT_NO_THROW(aggregate_and_verify(*g, Rs, Ss, kg.public_key, {}));
  Ss[1] = g->scalars().add(Ss[1], S(1));
  EXPECT_THROW(aggregate_and_verify(*g, Rs, Ss, kg.public_key, {}), AggregateInvalidError);
}

TEST(ThresholdProperty, ExhaustiveCohortsSmallSwarms) {
  const GroupPtr g = make_toy_group(kLargeQ);
  SeededRandom rng(24);
  const auto m = as_bytes("cohort");
  for (std::size_t n = 1; n <= 6; ++n) {
    for (std::size_t t = 1; t <= n; ++t) {
      const auto kg = honest_keygen(*g, n, t, rng);
      for (std::size_t k = 1; k <= n; ++k) {
        for (const auto& idx : subsets(n, k)) {
          const bool ok = threshold_sign(*g, pick(kg.shares, idx), kg.public_key, m, rng).has_value();
          ASSERT_EQ(ok, k >= t) << "n=" << n << " t=" << t << " k=" << k;
        }
      }
    }
  }
}

TEST(ThresholdProperty, Ed25519SignaturesPassLibsodium) {
  const GroupPtr g = make_ed25519_group();
  SeededRandom rng(25);
  const auto kg = honest_keygen(*g, 5, 3, rng);
  for (const std::string msg : {"", "a", "threshold signature over the swarm key"}) {
    const auto m = as_bytes(msg);
    const auto sig = threshold_sign(*g, {kg.shares[0], kg.shares[2], kg.shares[4]}, kg.public_key, m, rng);
    ASSERT_TRUE(sig);
    EXPECT_TRUE(testing::sodium_verify(kg.public_key.encoding, m, encode_signature(*g, *sig)));
  }
}

TEST(DhContribution, Basics) {
  const GroupPtr g = make_toy_group();
  const GroupElement P = g->decode_or_throw(uint_to_le(Uint(16), 2));
  EXPECT_EQ(testing::toy_value(dh_contribution(*g, Share{S(1), S(3)}, P)), 48u);
  EXPECT_TRUE(g->is_identity(dh_contribution(*g, Share{S(1), S(0)}, P)));
  EXPECT_EQ(dh_contribution(*g, Share{S(1), S(99)}, g->generator()), g->base_mul(S(99)));
  const GroupElement low = g->decode_or_throw(uint_to_le(Uint(4076), 2));
  EXPECT_THROW(dh_contribution(*g, Share{S(1), S(3)}, low), ParameterError);
  EXPECT_THROW(dh_contribution(*g, Share{S(1), S(3)}, g->identity()), ParameterError);
}

TEST(DhAggregate, MatchesOracleForQualifiedCohortsOnly) {
  const GroupPtr g = make_toy_group(kLargeQ);
  SeededRandom rng(26);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (std::size_t t = 1; t <= n; ++t) {
      const auto kg = honest_keygen(*g, n, t, rng);
      const GroupElement P = g->base_mul(rng.scalar(g->scalars()));
      const GroupElement expected = g->point_mul(kg.secret_sum, P);
      for (std::size_t k = 1; k <= n; ++k) {
        for (const auto& idx : subsets(n, k)) {
          std::vector<DhContribution> cs;
          for (std::size_t i : idx) cs.push_back({kg.shares[i].x, dh_contribution(*g, kg.shares[i], P)});
          ASSERT_EQ(dh_aggregate(*g, cs) == expected, k >= t);
        }
      }
    }
  }
}

TEST(DhAggregate, SingleShareAndDuplicates) {
  const GroupPtr g = make_toy_group();
  const GroupElement K = g->base_mul(S(5));
  const std::vector<DhContribution> one{{S(3), K}};
  EXPECT_EQ(dh_aggregate(*g, one), K);
  const std::vector<DhContribution> dup{{S(3), K}, {S(3), K}};
  EXPECT_THROW(dh_aggregate(*g, dup), InterpolationError);
}

TEST(DhAggregate, SignerSideWeightingAgrees) {
  const GroupPtr g = make_ed25519_group();
  SeededRandom rng(27);
  const auto kg = honest_keygen(*g, 4, 2, rng);
  const GroupElement P = g->base_mul(rng.scalar(g->scalars()));
  const std::vector<Share> cohort{kg.shares[1], kg.shares[3]};
  GroupElement sum = g->identity();
  std::vector<DhContribution> cs;
  for (std::size_t i = 0; i < 2; ++i) {
    sum = g->point_add(sum, dh_weighted_contribution(*g, cohort[i], lagrange_coefficient(g->scalars(), i, cohort), P));
    cs.push_back({cohort[i].x, dh_contribution(*g, cohort[i], P)});
  }
  EXPECT_EQ(sum, dh_aggregate(*g, cs));
  EXPECT_EQ(sum, g->point_mul(kg.secret_sum, P));
}

TEST(DeterministicNonce, WorkedInstanceMod11) {
  const ZMod f(Uint(11));
  const Scalar s1 = f.add(S(3), f.mul(S(2), S(7)));
  const Scalar s2 = f.add(S(3), f.mul(S(5), S(7)));
  EXPECT_EQ(s1, S(6));
  EXPECT_EQ(s2, S(5));
  const auto rec = recover_from_two_responses(f, s1, s2, S(2), S(5));
  ASSERT_TRUE(rec);
  EXPECT_EQ(rec->secret, S(7));
  EXPECT_EQ(rec->nonce, S(3));
  EXPECT_FALSE(recover_from_two_responses(f, s1, s1, S(2), S(2)));
}

TEST(DeterministicNonce, RecoversShareFromSignerResponses) {
  const ZMod f{Uint(kLargeQ)};
  SeededRandom rng(28);
  for (int i = 0; i < 100; ++i) {
    const Scalar r = rng.scalar(f), y = rng.scalar(f), k = rng.scalar(f);
    const Scalar l1 = rng.scalar(f), l2 = rng.scalar(f);
    const auto rec = recover_from_two_responses(f, signer_response(f, r, l1, k, y), signer_response(f, r, l2, k, y),
                                                f.mul(l1, k), f.mul(l2, k));
    ASSERT_TRUE(rec);
    EXPECT_EQ(rec->secret, y);
  }
}

}  // namespace
}  // namespace swarmkey
