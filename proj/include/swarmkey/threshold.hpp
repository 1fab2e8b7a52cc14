#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "swarmkey/group.hpp"
#include "swarmkey/random.hpp"
#include "swarmkey/shamir.hpp"

namespace swarmkey {

struct Signature {
  GroupElement R;
  Scalar S;

  friend bool operator==(const Signature&, const Signature&) = default;
};

// R || S, 64 bytes for ed25519 (RFC 8032 layout).
Bytes encode_signature(const Group& group, const Signature& sig);
Signature decode_signature(const Group& group, ByteView bytes);

class NonceReuseError : public ProtocolError {
 public:
  using ProtocolError::ProtocolError;
};

class AggregateInvalidError : public ProtocolError {
 public:
  using ProtocolError::ProtocolError;
};

// Owns one signer's single-use signing nonce. Move-only; consuming it twice is
// an error because a repeated nonce gives away the signer's share.
class NonceHandle {
 public:
  NonceHandle() = default;
  NonceHandle(const NonceHandle&) = delete;
  NonceHandle& operator=(const NonceHandle&) = delete;
  NonceHandle(NonceHandle&& other) noexcept;
  NonceHandle& operator=(NonceHandle&& other) noexcept;
  ~NonceHandle();

  // Pins a chosen nonce; for tests and adversary simulations.
  static NonceHandle from_value(const Scalar& r) { return NonceHandle(r); }

  bool consumed() const { return !nonce_.has_value(); }
  // Returns the nonce and wipes it; throws NonceReuseError if already used.
  Scalar consume();

 private:
  explicit NonceHandle(const Scalar& r) : nonce_(r) {}
  std::optional<Scalar> nonce_;
};

struct Round1Output {
  GroupElement R;
  NonceHandle handle;
};

// r uniform in [0, ell); returns R = rG and the handle holding r.
Round1Output sign_round1(const Group& group, RandomSource& rng);

// k = H(R || A || M).
Scalar signing_challenge(const Group& group, const GroupElement& R, const GroupElement& A, ByteView message);

// r + l * k * y mod ell.
Scalar signer_response(const ZMod& field, const Scalar& r, const Scalar& lagrange, const Scalar& challenge,
                       const Scalar& share_y);

// Consumes the handle and returns S_i = r_i + l_i * k * y_i.
Scalar sign_round2(const Group& group, NonceHandle& handle, const GroupElement& R, const Scalar& lagrange,
                   const Share& share, const GroupElement& A, ByteView message);

// Sums the contributions and returns the signature only if it verifies;
// otherwise throws AggregateInvalidError.
Signature aggregate_and_verify(const Group& group, std::span<const GroupElement> R_list,
                               std::span<const Scalar> S_list, const GroupElement& A, ByteView message);

// Requires S < ell and a decodable A and R. The ed25519 backend checks the
// cofactored equation [8][S]G = [8]R + [8][k]A; the toy backend checks the
// exact equation SG = R + kA.
bool eddsa_verify(const Group& group, const GroupElement& A, ByteView message, const Signature& sig);

// K_c = y_c P; refuses low-order P.
GroupElement dh_contribution(const Group& group, const Share& share, const GroupElement& P);
// l_c(C) K_c for signers that apply their own coefficient.
GroupElement dh_weighted_contribution(const Group& group, const Share& share, const Scalar& lagrange,
                                      const GroupElement& P);

struct DhContribution {
  Scalar x;  // contributor's share x-coordinate
  GroupElement K;
};

// sum_c l_c(C) K_c with C given by the contributors' x-coordinates.
GroupElement dh_aggregate(const Group& group, std::span<const DhContribution> contribs);

// Solves S_1 = r + mu_1 s, S_2 = r + mu_2 s for (r, s). Empty when mu_1 = mu_2.
struct LinearRecovery {
  Scalar nonce;
  Scalar secret;
};
std::optional<LinearRecovery> recover_from_two_responses(const ZMod& field, const Scalar& S1, const Scalar& S2,
                                                         const Scalar& mu1, const Scalar& mu2);

}  // namespace swarmkey
