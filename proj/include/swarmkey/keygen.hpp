#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "swarmkey/group.hpp"
#include "swarmkey/random.hpp"
#include "swarmkey/shamir.hpp"

namespace swarmkey {

// Clamped secret scalar `a` (kept unreduced) and the secret prefix `p`.
struct SecretScalarPair {
  Uint a;
  Uint prefix;
};

// Bit-level clamping of a digest h (little-endian bit order, at least 2b bits):
//   a = 2^top_bit + sum_{i=c}^{top_bit-1} h_i 2^i,   p = sum_{i=0}^{b-1} h_{b+i} 2^i.
SecretScalarPair clamp_digest(ByteView h, unsigned b, unsigned top_bit, unsigned c);

// Hashes a b-bit seed and clamps with the group's parameters. For ed25519 this
// is exactly RFC 8032 key expansion.
SecretScalarPair secret_scalar_from_seed(const Group& group, ByteView seed);

// Draws a fresh b-bit seed and discards it after expansion.
SecretScalarPair new_secret_scalar(const Group& group, RandomSource& rng);

// a = 2^n + 2^c k with 0 <= k < 2^(n-c), n the clamp top bit.
bool in_key_space(const Group& group, const Uint& a);

// Schnorr-style proof of knowledge of `a` for A = aG: an EdDSA signature of the
// empty message with challenge H(A || R).
struct KnowledgeProof {
  GroupElement A;
  GroupElement R;
  Scalar S;
};

Scalar proof_challenge(const Group& group, const GroupElement& A, const GroupElement& R);
// Nonce r = H(prefix); the prefix must not be reused afterwards.
KnowledgeProof make_proof(const Group& group, const Uint& a, const Uint& prefix);
KnowledgeProof make_proof_with_nonce(const Group& group, const Uint& a, const Scalar& r);

// What one actor sends to another during key generation (before encryption).
struct ShareBundle {
  Share sigma;
  GroupElement R;
  GroupElement A;
  Scalar S;

  friend bool operator==(const ShareBundle&, const ShareBundle&) = default;
};

enum class BundleVerdict {
  kAccept,
  kLowOrderKey,       // check 1: 2^c A = O
  kScalarOutOfRange,  // check 2: S >= ell
  kProofMismatch,     // check 3: S G != H(A || R) A + R
};

std::string_view to_string(BundleVerdict v);
std::optional<BundleVerdict> verdict_from_string(std::string_view s);

// Individual checks can be switched off to run control experiments.
struct BundleChecks {
  bool low_order = true;
  bool scalar_range = true;
  bool proof = true;
};

BundleVerdict verify_bundle(const Group& group, const ShareBundle& bundle, const BundleChecks& checks = {});

// Raised by complete() when a received bundle fails verification.
class CeremonyAbort : public ProtocolError {
 public:
  CeremonyAbort(std::size_t sender, BundleVerdict verdict);
  std::size_t sender() const { return sender_; }
  BundleVerdict verdict() const { return verdict_; }

 private:
  std::size_t sender_;
  BundleVerdict verdict_;
};

// Per-actor state between Begin and Complete.
struct ActorKeygenState {
  std::size_t my_index = 0;
  std::size_t threshold = 0;
  std::vector<Scalar> x_coords;
  Uint a;  // unreduced clamped secret
  std::optional<SharingPolynomial> polynomial;  // dropped by complete()
  KnowledgeProof proof;
};

struct BeginOutput {
  std::vector<ShareBundle> bundles;  // one per recipient, in x_coords order
  ActorKeygenState state;
};

struct KeygenResult {
  GroupElement aggregate_public;
  Share my_share;
  std::vector<GroupElement> peer_publics;
};

BeginOutput begin(const Group& group, std::size_t my_index, std::span<const Scalar> x_coords,
                  std::size_t t, RandomSource& rng);

// Variant of begin() that uses an already generated secret; lets adversarial
// actors and tests fix the contribution.
BeginOutput begin_with_secret(const Group& group, std::size_t my_index, std::span<const Scalar> x_coords,
                              std::size_t t, const SecretScalarPair& secret, RandomSource& rng);

// bundles_in[j] must come from actor j and be addressed to this actor.
KeygenResult complete(const Group& group, ActorKeygenState& state, std::span<const ShareBundle> bundles_in,
                      const BundleChecks& checks = {});

}  // namespace swarmkey
