#include <gtest/gtest.h>
#include <sodium.h>

#include "ed25519_field.hpp"
#include "oracles.hpp"
#include "swarmkey/group.hpp"
#include "swarmkey/keygen.hpp"
#include "swarmkey/random.hpp"

namespace swarmkey {
namespace {

using testing::toy_value;

GroupElement toy_elem(const Group& g, uint64_t v) { return g.decode_or_throw(uint_to_le(Uint(v), g.element_bytes())); }

TEST(ToyGroup, Parameters) {
  const GroupPtr g = make_toy_group();
  EXPECT_EQ(g->params().ell, 1019);
  EXPECT_EQ(g->params().cofactor_log2, 3u);
  EXPECT_EQ(g->params().b, 16u);
  EXPECT_EQ(toy_value(g->generator()), 8u);
  EXPECT_THROW(make_toy_group(1020), ParameterError);
  EXPECT_THROW(make_group("ed448"), ParameterError);
}

TEST(ToyGroup, PointMulExamples) {
  const GroupPtr g = make_toy_group();
  EXPECT_EQ(toy_value(g->point_mul(Uint(3), g->generator())), 24u);
  EXPECT_EQ(g->point_mul(Uint(0), g->generator()), g->identity());
  EXPECT_EQ(g->point_mul(g->params().ell, g->generator()), g->identity());
  EXPECT_EQ(g->point_mul(Uint(1), toy_elem(*g, 77)), toy_elem(*g, 77));
}

TEST(ToyGroup, PointAddExamples) {
  const GroupPtr g = make_toy_group();
  EXPECT_EQ(toy_value(g->point_add(toy_elem(*g, 24), toy_elem(*g, 40))), 64u);
  EXPECT_EQ(g->point_add(toy_elem(*g, 1234), g->identity()), toy_elem(*g, 1234));
  EXPECT_EQ(g->point_add(g->base_mul(Uint(2)), g->base_mul(Uint(3))), g->base_mul(Uint(5)));
  EXPECT_EQ(toy_value(g->point_add(toy_elem(*g, 8150), toy_elem(*g, 10))), 8u);
}

TEST(ToyGroup, LowOrder) {
  const GroupPtr g = make_toy_group();
  EXPECT_TRUE(g->is_low_order(toy_elem(*g, 4076)));
  EXPECT_FALSE(g->is_low_order(g->generator()));
  EXPECT_TRUE(g->is_low_order(g->identity()));
  for (uint64_t j = 0; j < 8; ++j) EXPECT_TRUE(g->is_low_order(toy_elem(*g, j * 1019)));
  EXPECT_FALSE(g->is_low_order(toy_elem(*g, 1)));
}

TEST(ToyGroup, DecodeRejectsOutOfRange) {
  const GroupPtr g = make_toy_group();
  EXPECT_FALSE(g->decode(uint_to_le(Uint(8152), 2)));
  EXPECT_FALSE(g->decode(Bytes{1, 2, 3}));
  EXPECT_TRUE(g->decode(uint_to_le(Uint(8151), 2)));
}

TEST(ToyGroup, ExhaustiveDlogOracleAgreesWithClosedForm) {
  const GroupPtr g = make_toy_group();
  SeededRandom rng(7);
  for (int i = 0; i < 50; ++i) {
    const Scalar s = rng.scalar(g->scalars());
    const GroupElement p = g->base_mul(s);
    ASSERT_EQ(testing::toy_dlog_exhaustive(*g, p), static_cast<uint64_t>(s.value));
    ASSERT_EQ(testing::toy_dlog(*g, p), static_cast<uint64_t>(s.value));
  }
  EXPECT_FALSE(testing::toy_dlog_exhaustive(*g, toy_elem(*g, 3)));
}

TEST(ToyGroup, LargeModulusSupported) {
  const GroupPtr g = make_toy_group((uint64_t{1} << 61) - 1);
  EXPECT_EQ(g->params().b, 64u);
  const GroupElement p = g->base_mul(g->params().ell - 1);
  EXPECT_EQ(g->point_add(p, g->generator()), g->identity());
}

TEST(HashToScalar, KnownSha512VectorReduced) {
  // SHA-512("abc") reduced mod ell and mod 1019, computed with an independent
  // SHA-512 implementation.
  const GroupPtr ed = make_ed25519_group();
  const Scalar s = ed->hash_to_scalar({as_bytes("abc")});
  EXPECT_EQ(to_hex(ed->encode_scalar(s)), "d15dbef29abf1ff29f9cf91c4b75ee0bb1012cb031d9605d684e841df034de0b");
  const GroupPtr toy = make_toy_group();
  EXPECT_EQ(toy->hash_to_scalar({as_bytes("abc")}).value, 494);
  // Splitting the input does not change the digest.
  EXPECT_EQ(toy->hash_to_scalar({as_bytes("a"), as_bytes("bc")}).value, 494);
}

TEST(HashToScalar, ReducedAndDeterministic) {
  for (const GroupPtr& g : {make_toy_group(), make_ed25519_group()}) {
    SeededRandom rng(3);
    for (int i = 0; i < 200; ++i) {
      const Bytes x = rng.bytes(i % 40);
      const Scalar s = g->hash_to_scalar({x});
      EXPECT_TRUE(g->scalars().contains(s));
      EXPECT_EQ(s, g->hash_to_scalar({x}));
    }
  }
}

TEST(Ed25519Field, MatchesBigIntegerArithmetic) {
  using namespace ed25519;
  SeededRandom rng(11);
  const Uint& p = field_prime();
  for (int i = 0; i < 500; ++i) {
    const Uint a = uint_from_le(rng.bytes(32)) % p;
    const Uint b = uint_from_le(rng.bytes(32)) % p;
    const Fe fa = fe_from_uint(a), fb = fe_from_uint(b);
    ASSERT_EQ(fe_to_uint(fa * fb), (a * b) % p);
    ASSERT_EQ(fe_to_uint(fa + fb), (a + b) % p);
    ASSERT_EQ(fe_to_uint(fa - fb), (a + p - b) % p);
  }
  const Fe x = fe_from_uint(Uint(123456789));
  EXPECT_EQ(fe_to_uint(x * fe_inv(x)), 1);
}

class Ed25519Group : public ::testing::Test {
 protected:
  void SetUp() override { ASSERT_GE(sodium_init(), 0); }
  GroupPtr g = make_ed25519_group();
};

TEST_F(Ed25519Group, BaseMulMatchesLibsodiumKeyDerivation) {
  SeededRandom rng(21);
  for (int i = 0; i < 20; ++i) {
    const Bytes seed = rng.bytes(32);
    uint8_t pk[crypto_sign_PUBLICKEYBYTES];
    uint8_t sk[crypto_sign_SECRETKEYBYTES];
    crypto_sign_seed_keypair(pk, sk, seed.data());
    const SecretScalarPair pair = secret_scalar_from_seed(*g, seed);
    EXPECT_EQ(g->base_mul(pair.a).encoding, Bytes(pk, pk + 32));
  }
}

TEST_F(Ed25519Group, AdditionMatchesLibsodium) {
  SeededRandom rng(22);
  for (int i = 0; i < 20; ++i) {
    const GroupElement p = g->base_mul(rng.scalar(g->scalars()));
    const GroupElement q = g->base_mul(rng.scalar(g->scalars()));
    uint8_t r[32];
    ASSERT_EQ(crypto_core_ed25519_add(r, p.encoding.data(), q.encoding.data()), 0);
    EXPECT_EQ(g->point_add(p, q).encoding, Bytes(r, r + 32));
  }
}

TEST_F(Ed25519Group, GeneratorOrderAndIdentity) {
  EXPECT_EQ(g->point_mul(g->params().ell, g->generator()), g->identity());
  EXPECT_EQ(g->point_mul(Uint(0), g->generator()), g->identity());
  EXPECT_EQ(g->point_mul(Uint(1), g->generator()), g->generator());
  EXPECT_EQ(g->identity().hex(), "0100000000000000000000000000000000000000000000000000000000000000");
  EXPECT_EQ(g->point_add(g->generator(), g->identity()), g->generator());
}

TEST_F(Ed25519Group, LowOrderPoints) {
  // (0, -1) has order 2.
  const GroupElement order2 = g->decode_or_throw(
      from_hex("ecffffffffffffffffffffffffffffffffffffffffffffffffffffffffffff7f"));
  EXPECT_TRUE(g->is_low_order(order2));
  EXPECT_EQ(g->point_add(order2, order2), g->identity());
  EXPECT_TRUE(g->is_low_order(g->identity()));
  EXPECT_FALSE(g->is_low_order(g->generator()));
  // A point with both a torsion and a prime-order component is not low order
  // and not in the prime subgroup.
  const GroupElement mixed = g->point_add(g->generator(), order2);
  EXPECT_FALSE(g->is_low_order(mixed));
  EXPECT_FALSE(g->in_prime_subgroup(mixed));
  EXPECT_TRUE(g->in_prime_subgroup(g->generator()));
}

TEST_F(Ed25519Group, DecodeRejectsNonCanonical) {
  // y = p is not reduced.
  EXPECT_FALSE(g->decode(from_hex("edffffffffffffffffffffffffffffffffffffffffffffffffffffffffffff7f")));
  // x = 0 with the sign bit set.
  EXPECT_FALSE(g->decode(from_hex("0100000000000000000000000000000000000000000000000000000000000080")));
  // y = 2 is not on the curve.
  EXPECT_FALSE(g->decode(from_hex("0200000000000000000000000000000000000000000000000000000000000000")));
  EXPECT_FALSE(g->decode(Bytes(31, 0)));
}

TEST(GroupProperties, EncodeDecodeRoundTrip) {
  SeededRandom rng(5);
  for (const GroupPtr& g : {make_toy_group(), make_ed25519_group()}) {
    for (int i = 0; i < 1000; ++i) {
      const GroupElement p = g->base_mul(rng.scalar(g->scalars()));
      const auto back = g->decode(p.encoding);
      ASSERT_TRUE(back);
      ASSERT_EQ(back->encoding, p.encoding);
    }
  }
}

TEST(GroupProperties, ScalarMultiplicationDistributes) {
  SeededRandom rng(6);
  for (const GroupPtr& g : {make_toy_group(), make_ed25519_group()}) {
    const ZMod& f = g->scalars();
    for (int i = 0; i < 25; ++i) {
      const Scalar s1 = rng.scalar(f), s2 = rng.scalar(f);
      ASSERT_EQ(g->base_mul(f.add(s1, s2)), g->point_add(g->base_mul(s1), g->base_mul(s2)));
      const GroupElement p = g->base_mul(s1);
      ASSERT_EQ(g->point_sub(g->point_add(p, g->generator()), g->generator()), p);
    }
  }
}

}  // namespace
}  // namespace swarmkey
