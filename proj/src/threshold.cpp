#include "swarmkey/threshold.hpp"

namespace swarmkey {

Bytes encode_signature(const Group& group, const Signature& sig) {
  Bytes out = sig.R.encoding;
  append(out, group.encode_scalar(sig.S));
  return out;
}

Signature decode_signature(const Group& group, ByteView bytes) {
  const std::size_t eb = group.element_bytes();
  if (bytes.size() != eb + group.scalar_bytes()) throw EncodingError("signature has wrong length");
  Signature sig;
  sig.R = group.decode_or_throw(bytes.first(eb));
  sig.S = group.decode_scalar(bytes.subspan(eb));
  return sig;
}

NonceHandle::NonceHandle(NonceHandle&& other) noexcept : nonce_(std::move(other.nonce_)) {
  other.nonce_.reset();
}

NonceHandle& NonceHandle::operator=(NonceHandle&& other) noexcept {
  if (this != &other) {
    nonce_ = std::move(other.nonce_);
    other.nonce_.reset();
  }
  return *this;
}

NonceHandle::~NonceHandle() {
  if (nonce_) nonce_->value = 0;
}

Scalar NonceHandle::consume() {
  if (!nonce_) throw NonceReuseError("signing nonce already consumed");
  Scalar r = *nonce_;
  nonce_->value = 0;
  nonce_.reset();
  return r;
}

Round1Output sign_round1(const Group& group, RandomSource& rng) {
  const Scalar r = rng.scalar(group.scalars());
  return Round1Output{group.base_mul(r), NonceHandle::from_value(r)};
}

Scalar signing_challenge(const Group& group, const GroupElement& R, const GroupElement& A, ByteView message) {
  return group.hash_to_scalar({R.encoding, A.encoding, message});
}

Scalar signer_response(const ZMod& field, const Scalar& r, const Scalar& lagrange, const Scalar& challenge,
                       const Scalar& share_y) {
  return field.add(r, field.mul(field.mul(lagrange, challenge), share_y));
}

Scalar sign_round2(const Group& group, NonceHandle& handle, const GroupElement& R, const Scalar& lagrange,
                   const Share& share, const GroupElement& A, ByteView message) {
  const Scalar r = handle.consume();
  const Scalar k = signing_challenge(group, R, A, message);
  return signer_response(group.scalars(), r, lagrange, k, share.y);
}

Signature aggregate_and_verify(const Group& group, std::span<const GroupElement> R_list,
                               std::span<const Scalar> S_list, const GroupElement& A, ByteView message) {
  if (R_list.empty() || R_list.size() != S_list.size()) {
    throw AggregateInvalidError("round-one and round-two contribution counts differ");
  }
  const ZMod& f = group.scalars();
  Signature sig{group.identity(), Scalar{}};
  for (const GroupElement& R : R_list) sig.R = group.point_add(sig.R, R);
  for (const Scalar& S : S_list) sig.S = f.add(sig.S, S);
  if (!eddsa_verify(group, A, message, sig)) throw AggregateInvalidError("aggregate signature does not verify");
  return sig;
}

bool eddsa_verify(const Group& group, const GroupElement& A, ByteView message, const Signature& sig) {
  if (!group.scalars().contains(sig.S)) return false;
  if (!group.decode(A.encoding) || !group.decode(sig.R.encoding)) return false;
  const Scalar k = signing_challenge(group, sig.R, A, message);
  const GroupElement lhs = group.base_mul(sig.S);
  const GroupElement rhs = group.point_add(sig.R, group.point_mul(k, A));
  if (!group.params().cofactored_verify) return lhs == rhs;
  const Uint cofactor = Uint(1) << group.params().cofactor_log2;
  return group.point_mul(cofactor, lhs) == group.point_mul(cofactor, rhs);
}

GroupElement dh_contribution(const Group& group, const Share& share, const GroupElement& P) {
  if (group.is_low_order(P)) throw ParameterError("refusing key exchange with a low-order point");
  return group.point_mul(share.y, P);
}

GroupElement dh_weighted_contribution(const Group& group, const Share& share, const Scalar& lagrange,
                                      const GroupElement& P) {
  if (group.is_low_order(P)) throw ParameterError("refusing key exchange with a low-order point");
  return group.point_mul(group.scalars().mul(lagrange, share.y), P);
}

GroupElement dh_aggregate(const Group& group, std::span<const DhContribution> contribs) {
  if (contribs.empty()) throw ParameterError("no key-exchange contributions");
  std::vector<Scalar> xs;
  xs.reserve(contribs.size());
  for (const DhContribution& c : contribs) xs.push_back(c.x);
  require_distinct_nonzero(group.scalars(), xs);
  GroupElement K = group.identity();
  for (const DhContribution& c : contribs) {
    K = group.point_add(K, group.point_mul(lagrange_coefficient(group.scalars(), c.x, xs), c.K));
  }
  return K;
}

std::optional<LinearRecovery> recover_from_two_responses(const ZMod& field, const Scalar& S1, const Scalar& S2,
                                                         const Scalar& mu1, const Scalar& mu2) {
  const Scalar dmu = field.sub(mu1, mu2);
  if (dmu.value == 0) return std::nullopt;
  const Scalar s = field.div(field.sub(S1, S2), dmu);
  const Scalar r = field.sub(S1, field.mul(mu1, s));
  return LinearRecovery{r, s};
}

}  // namespace swarmkey
