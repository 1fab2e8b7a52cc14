#include "swarmkey/group.hpp"

#include "swarmkey/hash.hpp"

namespace swarmkey {

Group::Group(GroupParams params) : params_(std::move(params)), field_(params_.ell) {}

bool Group::is_low_order(const GroupElement& a) const {
  return is_identity(point_mul(Uint(1) << params_.cofactor_log2, a));
}

bool Group::in_prime_subgroup(const GroupElement& a) const {
  return is_identity(point_mul(params_.ell, a));
}

GroupElement Group::decode_or_throw(ByteView bytes) const {
  auto p = decode(bytes);
  if (!p) throw EncodingError("invalid " + params_.name + " element encoding");
  return *std::move(p);
}

Scalar Group::hash_to_scalar(std::span<const ByteView> parts) const {
  return field_.reduce(uint_from_le(sha512(parts)));
}

Scalar Group::hash_to_scalar(std::initializer_list<ByteView> parts) const {
  return hash_to_scalar(std::span<const ByteView>(parts.begin(), parts.size()));
}

Scalar Group::decode_scalar(ByteView bytes) const {
  if (bytes.size() != scalar_bytes()) throw EncodingError("scalar has wrong width");
  return Scalar{uint_from_le(bytes)};
}

GroupPtr make_group(std::string_view name, uint64_t toy_q) {
  if (name == "toy") return make_toy_group(toy_q);
  if (name == "ed25519") return make_ed25519_group();
  throw ParameterError("unknown group backend: " + std::string(name));
}

}  // namespace swarmkey
