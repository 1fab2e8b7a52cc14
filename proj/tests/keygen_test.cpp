#include <gtest/gtest.h>

#include "oracles.hpp"
#include "swarmkey/keygen.hpp"

namespace swarmkey {
namespace {

using testing::toy_dlog_exhaustive;

std::vector<Scalar> seq_x(std::size_t n) {
  std::vector<Scalar> xs;
  for (std::size_t i = 1; i <= n; ++i) xs.push_back(Scalar{Uint(i)});
  return xs;
}

TEST(ClampDigest, LiteralAlgorithmFormulaOnEightBitParameters) {
  // b = 8, c = 3, top bit 2^(b-1): a = 128 + (8 + 16 + 32 + 64), p = 255.
  const Bytes h{0xff, 0xff};
  const SecretScalarPair pair = clamp_digest(h, 8, 7, 3);
  EXPECT_EQ(pair.a, 248);
  EXPECT_EQ(pair.prefix, 255);
  const SecretScalarPair zeros = clamp_digest(Bytes{0x00, 0x00}, 8, 7, 3);
  EXPECT_EQ(zeros.a, 128);
  EXPECT_EQ(zeros.prefix, 0);
  EXPECT_THROW(clamp_digest(Bytes{0xff}, 8, 7, 3), ParameterError);
}

TEST(NewSecretScalar, Ed25519MatchesRfcClampingAndKeySpace) {
  const GroupPtr g = make_ed25519_group();
  SeededRandom rng(4);
  for (int i = 0; i < 200; ++i) {
    const SecretScalarPair pair = new_secret_scalar(*g, rng);
    EXPECT_EQ(pair.a % 8, 0);
    EXPECT_TRUE(in_key_space(*g, pair.a));
    EXPECT_LT(pair.prefix, Uint(1) << 256);
  }
  // RFC 8032 test 1 secret: the clamped scalar's public point is the RFC key.
  const Bytes seed = from_hex("9d61b19deffd5a60ba844af492ec2cc44449c5697b326919703bac031cae7f60");
  const SecretScalarPair pair = secret_scalar_from_seed(*g, seed);
  EXPECT_EQ(g->base_mul(pair.a).hex(), "d75a980182b10ab7d54bfed3c964073a0ee172f3daa62325af021a68f707511a");
}

TEST(NewSecretScalar, ToyOutputsAreClamped) {
  const GroupPtr g = make_toy_group();
  SeededRandom rng(5);
  for (int i = 0; i < 200; ++i) {
    const SecretScalarPair pair = new_secret_scalar(*g, rng);
    EXPECT_EQ(pair.a % 8, 0);
    EXPECT_TRUE(in_key_space(*g, pair.a));
  }
  EXPECT_FALSE(in_key_space(*g, Uint(1) << 16));
  EXPECT_FALSE(in_key_space(*g, (Uint(1) << 14) + 4));
}

TEST(KeySpace, ReductionExampleForTwo) {
  // 2 is a clamped ed25519 secret reduced mod ell, but 8a = 2 has no solution
  // with 1 <= a <= floor(ell/8).
  const GroupPtr g = make_ed25519_group();
  const Uint& ell = g->params().ell;
  std::optional<Uint> witness;
  for (unsigned j = 0; j < 16 && !witness; ++j) {
    const Uint candidate = 2 + Uint(j) * ell;
    if (in_key_space(*g, candidate)) witness = candidate;
  }
  ASSERT_TRUE(witness);
  EXPECT_EQ(*witness % ell, 2);
  const Scalar a = g->scalars().div(Scalar{Uint(2)}, Scalar{Uint(8)});
  EXPECT_GT(a.value, ell / 8);
}

TEST(MakeProof, FrozenToyVector) {
  // a = 5, r = 7: A = 40, R = 56, H(A || R) mod 1019 = 211 by an independent
  // SHA-512, so S = (211 * 5 + 7) mod 1019 = 43.
  const GroupPtr g = make_toy_group();
  const KnowledgeProof proof = make_proof_with_nonce(*g, Uint(5), Scalar{Uint(7)});
  EXPECT_EQ(testing::toy_value(proof.A), 40u);
  EXPECT_EQ(testing::toy_value(proof.R), 56u);
  EXPECT_EQ(proof_challenge(*g, proof.A, proof.R).value, 211);
  EXPECT_EQ(proof.S.value, 43);
}

TEST(MakeProof, VerificationIdentityHolds) {
  for (const GroupPtr& g : {make_toy_group(), make_ed25519_group()}) {
    SeededRandom rng(6);
    for (int i = 0; i < 10; ++i) {
      const SecretScalarPair pair = new_secret_scalar(*g, rng);
      const KnowledgeProof proof = make_proof(*g, pair.a, pair.prefix);
      const Scalar k = proof_challenge(*g, proof.A, proof.R);
      EXPECT_EQ(g->base_mul(proof.S), g->point_add(g->point_mul(k, proof.A), proof.R));
      ShareBundle b{Share{Scalar{Uint(1)}, Scalar{}}, proof.R, proof.A, proof.S};
      EXPECT_EQ(verify_bundle(*g, b), BundleVerdict::kAccept);
      b.S = g->scalars().add(b.S, Scalar{Uint(1)});
      EXPECT_EQ(verify_bundle(*g, b), BundleVerdict::kProofMismatch);
    }
  }
}

TEST(VerifyBundle, EachCheckRejects) {
  const GroupPtr g = make_toy_group();
  SeededRandom rng(7);
  const SecretScalarPair pair = new_secret_scalar(*g, rng);
  const KnowledgeProof proof = make_proof(*g, pair.a, pair.prefix);
  const ShareBundle honest{Share{Scalar{Uint(1)}, Scalar{Uint(2)}}, proof.R, proof.A, proof.S};

  ShareBundle identity_key = honest;
  identity_key.A = g->identity();
  EXPECT_EQ(verify_bundle(*g, identity_key), BundleVerdict::kLowOrderKey);

  ShareBundle big_s = honest;
  big_s.S = Scalar{g->params().ell};
  EXPECT_EQ(verify_bundle(*g, big_s), BundleVerdict::kScalarOutOfRange);
  // S + ell satisfies the group equation; only the range check catches it.
  ShareBundle malleated = honest;
  malleated.S = Scalar{honest.S.value + g->params().ell};
  EXPECT_EQ(verify_bundle(*g, malleated), BundleVerdict::kScalarOutOfRange);
  EXPECT_EQ(verify_bundle(*g, malleated, BundleChecks{true, false, true}), BundleVerdict::kAccept);
}

TEST(VerifyBundle, LowOrderForgeryPassesOnlyTheEquation) {
  // A low-order A with an even challenge makes S = r satisfy the equation.
  const GroupPtr g = make_toy_group();
  const GroupElement order2 = g->decode_or_throw(uint_to_le(Uint(4076), 2));
  for (uint64_t r = 1; r < 200; ++r) {
    const GroupElement R = g->base_mul(Uint(r));
    if (proof_challenge(*g, order2, R).value % 2 != 0) continue;
    const ShareBundle forged{Share{Scalar{Uint(1)}, Scalar{}}, R, order2, Scalar{Uint(r)}};
    EXPECT_EQ(verify_bundle(*g, forged, BundleChecks{false, true, true}), BundleVerdict::kAccept);
    EXPECT_EQ(verify_bundle(*g, forged), BundleVerdict::kLowOrderKey);
    return;
  }
  FAIL() << "no even challenge found";
}

TEST(RogueKey, OnlyTheDlogDerivedResponsePasses) {
  // For a rogue A and any R, exactly one S in [0, q) passes check 3, and it is
  // H(A||R) * dlog(A) + dlog(R): producing it requires the discrete log.
  const GroupPtr g = make_toy_group();
  const ZMod& f = g->scalars();
  const uint64_t q = 1019;
  SeededRandom rng(8);
  const GroupElement target = g->base_mul(rng.scalar(f));
  const GroupElement honest_sum = g->base_mul(rng.scalar(f));
  const GroupElement rogue = g->point_sub(target, honest_sum);
  const uint64_t rogue_log = *toy_dlog_exhaustive(*g, rogue);
  for (int trial = 0; trial < 5; ++trial) {
    const Scalar r = rng.scalar(f);
    const GroupElement R = g->base_mul(r);
    const Scalar k = proof_challenge(*g, rogue, R);
    int passing = 0;
    for (uint64_t s = 0; s < q; ++s) {
      const ShareBundle b{Share{Scalar{Uint(1)}, Scalar{}}, R, rogue, Scalar{Uint(s)}};
      if (verify_bundle(*g, b) == BundleVerdict::kAccept) {
        ++passing;
        EXPECT_EQ(Scalar{Uint(s)}, f.add(f.mul(k, Scalar{Uint(rogue_log)}), r));
      }
    }
    EXPECT_EQ(passing, 1);
  }
}

TEST(Begin, SingleActorDegenerate) {
  const GroupPtr g = make_toy_group();
  SeededRandom rng(9);
  BeginOutput out = begin(*g, 0, seq_x(1), 1, rng);
  ASSERT_EQ(out.bundles.size(), 1u);
  EXPECT_EQ(out.bundles[0].sigma.y, g->scalars().reduce(out.state.a));
  const KeygenResult r = complete(*g, out.state, out.bundles);
  EXPECT_EQ(r.aggregate_public, out.bundles[0].A);
  EXPECT_EQ(r.my_share, (Share{Scalar{Uint(1)}, g->scalars().reduce(out.state.a)}));
}

TEST(Begin, BundlesShareOneProofAndInterpolateToSecret) {
  const GroupPtr g = make_toy_group();
  SeededRandom rng(10);
  const std::size_t n = 5, t = 3;
  const BeginOutput out = begin(*g, 2, seq_x(n), t, rng);
  ASSERT_EQ(out.bundles.size(), n);
  std::vector<std::pair<uint64_t, uint64_t>> pts;
  for (std::size_t j = 0; j < n; ++j) {
    EXPECT_EQ(out.bundles[j].A, out.bundles[0].A);
    EXPECT_EQ(out.bundles[j].R, out.bundles[0].R);
    EXPECT_EQ(out.bundles[j].S, out.bundles[0].S);
    EXPECT_EQ(out.bundles[j].sigma.x.value, j + 1);
    pts.emplace_back(j + 1, static_cast<uint64_t>(out.bundles[j].sigma.y.value));
  }
  pts.resize(t);
  EXPECT_EQ(testing::interpolate_u64(pts, 1019), static_cast<uint64_t>(out.state.a % 1019));
}

TEST(Begin, RejectsBadCoordinates) {
  const GroupPtr g = make_toy_group();
  SeededRandom rng(11);
  const std::vector<Scalar> dup{Scalar{Uint(1)}, Scalar{Uint(2)}, Scalar{Uint(1)}};
  EXPECT_THROW(begin(*g, 0, dup, 2, rng), InterpolationError);
  EXPECT_THROW(begin(*g, 0, seq_x(2), 3, rng), ParameterError);
  EXPECT_THROW(begin(*g, 5, seq_x(2), 1, rng), ParameterError);
}

struct Ceremony {
  std::vector<ActorKeygenState> states;
  std::vector<std::vector<ShareBundle>> outgoing;  // outgoing[i][j] = i -> j
};

Ceremony run_begin(const Group& g, std::size_t n, std::size_t t, SeededRandom& rng) {
  Ceremony c;
  for (std::size_t i = 0; i < n; ++i) {
    BeginOutput out = begin(g, i, seq_x(n), t, rng);
    c.states.push_back(std::move(out.state));
    c.outgoing.push_back(std::move(out.bundles));
  }
  return c;
}

std::vector<ShareBundle> inbox(const Ceremony& c, std::size_t to) {
  std::vector<ShareBundle> in;
  for (const auto& row : c.outgoing) in.push_back(row[to]);
  return in;
}

TEST(Complete, TwoHonestActorsAgreeWithOracle) {
  const GroupPtr g = make_toy_group();
  SeededRandom rng(12);
  Ceremony c = run_begin(*g, 2, 2, rng);
  const Uint a_sum = (c.states[0].a + c.states[1].a) % 1019;
  const KeygenResult r0 = complete(*g, c.states[0], inbox(c, 0));
  const KeygenResult r1 = complete(*g, c.states[1], inbox(c, 1));
  EXPECT_EQ(r0.aggregate_public, r1.aggregate_public);
  EXPECT_EQ(toy_dlog_exhaustive(*g, r0.aggregate_public), static_cast<uint64_t>(a_sum));
  const std::vector<std::pair<uint64_t, uint64_t>> pts{
      {1, static_cast<uint64_t>(r0.my_share.y.value)}, {2, static_cast<uint64_t>(r1.my_share.y.value)}};
  EXPECT_EQ(testing::interpolate_u64(pts, 1019), static_cast<uint64_t>(a_sum));
  EXPECT_FALSE(c.states[0].polynomial);
  EXPECT_THROW(complete(*g, c.states[0], inbox(c, 0)), ProtocolError);
}

TEST(Complete, TamperedBundleAbortsNamingSender) {
  const GroupPtr g = make_toy_group();
  SeededRandom rng(13);
  Ceremony c = run_begin(*g, 4, 3, rng);
  c.outgoing[2][1].S = g->scalars().add(c.outgoing[2][1].S, Scalar{Uint(1)});
  try {
    complete(*g, c.states[1], inbox(c, 1));
    FAIL() << "expected abort";
  } catch (const CeremonyAbort& abort) {
    EXPECT_EQ(abort.sender(), 2u);
    EXPECT_EQ(abort.verdict(), BundleVerdict::kProofMismatch);
  }
}

TEST(Complete, WrongCountOrAddressIsProtocolError) {
  const GroupPtr g = make_toy_group();
  SeededRandom rng(14);
  Ceremony c = run_begin(*g, 3, 2, rng);
  std::vector<ShareBundle> in = inbox(c, 0);
  in.pop_back();
  EXPECT_THROW(complete(*g, c.states[0], in), ProtocolError);
  EXPECT_THROW(complete(*g, c.states[0], inbox(c, 1)), ProtocolError);
}

TEST(Complete, KeyCorrectnessOverRandomSwarms) {
  const GroupPtr g = make_toy_group();
  SeededRandom rng(15);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (std::size_t t = 1; t <= std::min<std::size_t>(n, 4); ++t) {
      Ceremony c = run_begin(*g, n, t, rng);
      Uint a_sum = 0;
      for (const auto& st : c.states) a_sum += st.a;
      a_sum %= 1019;
      std::vector<KeygenResult> results;
      for (std::size_t i = 0; i < n; ++i) results.push_back(complete(*g, c.states[i], inbox(c, i)));
      for (const auto& r : results) {
        ASSERT_EQ(r.aggregate_public, results[0].aggregate_public);
        ASSERT_EQ(r.peer_publics.size(), n);
      }
      ASSERT_EQ(toy_dlog_exhaustive(*g, results[0].aggregate_public), static_cast<uint64_t>(a_sum));
      for (const auto& idx : testing::subsets(n, t)) {
        std::vector<Share> cohort;
        for (std::size_t i : idx) cohort.push_back(results[i].my_share);
        ASSERT_EQ(interpolate_at_zero(g->scalars(), cohort).value, a_sum);
      }
    }
  }
}

TEST(Complete, Ed25519CeremonyProducesMatchingKey) {
  const GroupPtr g = make_ed25519_group();
  SeededRandom rng(16);
  Ceremony c = run_begin(*g, 3, 2, rng);
  Uint a_sum = 0;
  for (const auto& st : c.states) a_sum += st.a;
  std::vector<KeygenResult> results;
  for (std::size_t i = 0; i < 3; ++i) results.push_back(complete(*g, c.states[i], inbox(c, i)));
  EXPECT_EQ(results[0].aggregate_public, g->base_mul(a_sum));
  const std::vector<Share> cohort{results[0].my_share, results[2].my_share};
  EXPECT_EQ(interpolate_at_zero(g->scalars(), cohort), g->scalars().reduce(a_sum));
}

}  // namespace
}  // namespace swarmkey
