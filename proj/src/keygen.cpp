#include "swarmkey/keygen.hpp"

#include "swarmkey/hash.hpp"

namespace swarmkey {
namespace {

bool digest_bit(ByteView h, unsigned i) { return ((h[i / 8] >> (i % 8)) & 1U) != 0; }

}  // namespace

SecretScalarPair clamp_digest(ByteView h, unsigned b, unsigned top_bit, unsigned c) {
  if (h.size() * 8 < 2 * static_cast<std::size_t>(b)) throw ParameterError("digest shorter than 2b bits");
  if (top_bit >= b || c >= top_bit) throw ParameterError("clamp parameters need c < top_bit < b");
  SecretScalarPair out;
  out.a = Uint(1) << top_bit;
  for (unsigned i = c; i < top_bit; ++i) {
    if (digest_bit(h, i)) boost::multiprecision::bit_set(out.a, i);
  }
  out.prefix = 0;
  for (unsigned i = 0; i < b; ++i) {
    if (digest_bit(h, b + i)) boost::multiprecision::bit_set(out.prefix, i);
  }
  return out;
}

SecretScalarPair secret_scalar_from_seed(const Group& group, ByteView seed) {
  const GroupParams& p = group.params();
  const Bytes h = sha512({seed});
  const ByteView wide(h.data(), 2 * p.b / 8);
  return clamp_digest(wide, p.b, p.clamp_top_bit, p.cofactor_log2);
}

SecretScalarPair new_secret_scalar(const Group& group, RandomSource& rng) {
  Bytes seed = rng.bytes(group.params().b / 8);
  SecretScalarPair out = secret_scalar_from_seed(group, seed);
  std::fill(seed.begin(), seed.end(), 0);
  return out;
}

bool in_key_space(const Group& group, const Uint& a) {
  const GroupParams& p = group.params();
  const Uint top = Uint(1) << p.clamp_top_bit;
  if (a < top || a >= (top << 1)) return false;
  const Uint low_mask = (Uint(1) << p.cofactor_log2) - 1;
  return (a & low_mask) == 0;
}

Scalar proof_challenge(const Group& group, const GroupElement& A, const GroupElement& R) {
  return group.hash_to_scalar({A.encoding, R.encoding});
}

KnowledgeProof make_proof_with_nonce(const Group& group, const Uint& a, const Scalar& r) {
  const ZMod& f = group.scalars();
  KnowledgeProof proof;
  proof.A = group.base_mul(a);
  proof.R = group.base_mul(r);
  const Scalar k = proof_challenge(group, proof.A, proof.R);
  proof.S = f.add(f.mul(k, f.reduce(a)), r);
  return proof;
}

KnowledgeProof make_proof(const Group& group, const Uint& a, const Uint& prefix) {
  const Bytes prefix_bytes = uint_to_le(prefix, group.scalar_bytes());
  const Scalar r = group.hash_to_scalar({prefix_bytes});
  return make_proof_with_nonce(group, a, r);
}

std::string_view to_string(BundleVerdict v) {
  switch (v) {
    case BundleVerdict::kAccept:
      return "accept";
    case BundleVerdict::kLowOrderKey:
      return "reject:check1-low-order";
    case BundleVerdict::kScalarOutOfRange:
      return "reject:check2-scalar-range";
    case BundleVerdict::kProofMismatch:
      return "reject:check3-proof";
  }
  return "unknown";
}

std::optional<BundleVerdict> verdict_from_string(std::string_view s) {
  for (BundleVerdict v : {BundleVerdict::kAccept, BundleVerdict::kLowOrderKey,
                          BundleVerdict::kScalarOutOfRange, BundleVerdict::kProofMismatch}) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

BundleVerdict verify_bundle(const Group& group, const ShareBundle& bundle, const BundleChecks& checks) {
  if (checks.low_order && group.is_low_order(bundle.A)) return BundleVerdict::kLowOrderKey;
  if (checks.scalar_range && !group.scalars().contains(bundle.S)) return BundleVerdict::kScalarOutOfRange;
  if (checks.proof) {
    const Scalar k = proof_challenge(group, bundle.A, bundle.R);
    const GroupElement lhs = group.base_mul(bundle.S);
    const GroupElement rhs = group.point_add(group.point_mul(k, bundle.A), bundle.R);
    if (lhs != rhs) return BundleVerdict::kProofMismatch;
  }
  return BundleVerdict::kAccept;
}

CeremonyAbort::CeremonyAbort(std::size_t sender, BundleVerdict verdict)
    : ProtocolError("bundle from actor " + std::to_string(sender) + " failed: " +
                    std::string(to_string(verdict))),
      sender_(sender),
      verdict_(verdict) {}

BeginOutput begin_with_secret(const Group& group, std::size_t my_index, std::span<const Scalar> x_coords,
                              std::size_t t, const SecretScalarPair& secret, RandomSource& rng) {
  const ZMod& f = group.scalars();
  if (t == 0 || x_coords.size() < t) throw ParameterError("need n >= t >= 1");
  if (my_index >= x_coords.size()) throw ParameterError("actor index outside swarm");
  require_distinct_nonzero(f, x_coords);

  BeginOutput out;
  ActorKeygenState& st = out.state;
  st.my_index = my_index;
  st.threshold = t;
  st.x_coords.assign(x_coords.begin(), x_coords.end());
  st.a = secret.a;
  st.proof = make_proof(group, secret.a, secret.prefix);
  st.polynomial = sample_polynomial(f, f.reduce(secret.a), t, rng);

  out.bundles.reserve(x_coords.size());
  for (const Scalar& xj : x_coords) {
    out.bundles.push_back(ShareBundle{eval_share(f, *st.polynomial, xj), st.proof.R, st.proof.A, st.proof.S});
  }
  return out;
}

BeginOutput begin(const Group& group, std::size_t my_index, std::span<const Scalar> x_coords, std::size_t t,
                  RandomSource& rng) {
  const SecretScalarPair secret = new_secret_scalar(group, rng);
  return begin_with_secret(group, my_index, x_coords, t, secret, rng);
}

KeygenResult complete(const Group& group, ActorKeygenState& state, std::span<const ShareBundle> bundles_in,
                      const BundleChecks& checks) {
  const ZMod& f = group.scalars();
  if (!state.polynomial) throw ProtocolError("complete() called twice");
  if (bundles_in.size() != state.x_coords.size()) {
    throw ProtocolError("expected " + std::to_string(state.x_coords.size()) + " bundles, got " +
                        std::to_string(bundles_in.size()));
  }
  const Scalar my_x = f.reduce(state.x_coords[state.my_index].value);

  std::vector<Share> incoming;
  incoming.reserve(bundles_in.size());
  KeygenResult result;
  result.aggregate_public = group.identity();
  for (std::size_t j = 0; j < bundles_in.size(); ++j) {
    const ShareBundle& bundle = bundles_in[j];
    if (f.reduce(bundle.sigma.x.value) != my_x) {
      throw ProtocolError("bundle from actor " + std::to_string(j) + " addressed to another x");
    }
    const BundleVerdict verdict = verify_bundle(group, bundle, checks);
    if (verdict != BundleVerdict::kAccept) throw CeremonyAbort(j, verdict);
    incoming.push_back(bundle.sigma);
    result.aggregate_public = group.point_add(result.aggregate_public, bundle.A);
    result.peer_publics.push_back(bundle.A);
  }
  result.my_share = aggregate_share(f, incoming);

  for (Scalar& c : state.polynomial->coefficients) c = Scalar{};
  state.polynomial.reset();
  return result;
}

}  // namespace swarmkey
