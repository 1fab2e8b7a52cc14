#pragma once

#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "swarmkey/types.hpp"
#include "swarmkey/zmod.hpp"

namespace swarmkey {

// Canonical encoding of a group element. Every value handed out by a Group is
// canonical, so byte equality is element equality.
struct GroupElement {
  Bytes encoding;

  std::string hex() const { return to_hex(encoding); }
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

struct GroupParams {
  std::string name;
  Uint ell;                  // prime order of the subgroup generated by `generator`
  unsigned cofactor_log2 = 0;  // c: full group order is 2^c * ell
  unsigned b = 0;            // encoding width in bits
  unsigned clamp_top_bit = 0;  // n: clamped secrets are 2^n + 2^c * k
  GroupElement generator;
  std::string hash = "SHA-512";
  // Verify signatures with [2^c]-scaled equations (RFC 8032) rather than exactly.
  bool cofactored_verify = false;
};

// A cyclic group of order 2^c * ell with a distinguished generator of order ell.
// Implementations are immutable and safe to share across threads.
class Group {
 public:
  virtual ~Group() = default;

  const GroupParams& params() const { return params_; }
  const ZMod& scalars() const { return field_; }
  const GroupElement& generator() const { return params_.generator; }
  std::size_t scalar_bytes() const { return params_.b / 8; }
  virtual std::size_t element_bytes() const = 0;

  virtual GroupElement identity() const = 0;
  virtual GroupElement point_add(const GroupElement& p, const GroupElement& q) const = 0;
  virtual GroupElement point_neg(const GroupElement& p) const = 0;
  // k * P for an arbitrary non-negative integer k; k is not reduced mod ell,
  // which matters when P has a small-order component.
  virtual GroupElement point_mul(const Uint& k, const GroupElement& p) const = 0;
  virtual std::optional<GroupElement> decode(ByteView bytes) const = 0;

  GroupElement point_mul(const Scalar& s, const GroupElement& p) const { return point_mul(s.value, p); }
  GroupElement base_mul(const Uint& k) const { return point_mul(k, generator()); }
  GroupElement base_mul(const Scalar& s) const { return point_mul(s.value, generator()); }
  GroupElement point_sub(const GroupElement& p, const GroupElement& q) const {
    return point_add(p, point_neg(q));
  }
  bool is_identity(const GroupElement& p) const { return p == identity(); }
  // True iff 2^c * A is the identity.
  bool is_low_order(const GroupElement& a) const;
  // True iff ell * A is the identity.
  bool in_prime_subgroup(const GroupElement& a) const;

  GroupElement decode_or_throw(ByteView bytes) const;

  // SHA-512 of the concatenated parts, read little-endian and reduced mod ell.
  Scalar hash_to_scalar(std::initializer_list<ByteView> parts) const;
  Scalar hash_to_scalar(std::span<const ByteView> parts) const;

  // Fixed-width little-endian (b/8 bytes). Values need not be reduced.
  Bytes encode_scalar(const Scalar& s) const { return uint_to_le(s.value, scalar_bytes()); }
  Scalar decode_scalar(ByteView bytes) const;

 protected:
  explicit Group(GroupParams params);

 private:
  GroupParams params_;
  ZMod field_;
};

using GroupPtr = std::shared_ptr<const Group>;

inline constexpr uint64_t kDefaultToyQ = 1019;

// Additive integers mod 8q with generator 8; discrete logs are trivial, which
// is the point: test oracles can see every secret.
GroupPtr make_toy_group(uint64_t q = kDefaultToyQ);
// Edwards25519 with RFC 8032 parameters.
GroupPtr make_ed25519_group();
// "toy" or "ed25519"; throws ParameterError otherwise.
GroupPtr make_group(std::string_view name, uint64_t toy_q = kDefaultToyQ);

}  // namespace swarmkey
