#pragma once

#include <compare>

#include "swarmkey/types.hpp"

namespace swarmkey {

// Element of Z_m. Produced reduced by ZMod; the raw value is public so that
// encoders and test oracles can read it.
struct Scalar {
  Uint value = 0;

  Scalar() = default;
  explicit Scalar(Uint v) : value(std::move(v)) {}

  friend bool operator==(const Scalar&, const Scalar&) = default;
  friend auto operator<=>(const Scalar& a, const Scalar& b) {
    if (a.value < b.value) return std::strong_ordering::less;
    if (a.value > b.value) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
};

// Arithmetic modulo a prime m (the subgroup order in every caller).
class ZMod {
 public:
  explicit ZMod(Uint modulus);

  const Uint& modulus() const { return m_; }

  Scalar reduce(const Uint& v) const { return Scalar{v % m_}; }
  Scalar from_u64(uint64_t v) const { return reduce(Uint(v)); }
  bool contains(const Scalar& s) const { return s.value < m_; }

  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar neg(const Scalar& a) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  // Extended Euclid; throws InterpolationError for zero (no inverse).
  Scalar inv(const Scalar& a) const;
  Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

  friend bool operator==(const ZMod& a, const ZMod& b) { return a.m_ == b.m_; }

 private:
  Uint m_;
};

}  // namespace swarmkey
