#pragma once

// Arithmetic in GF(2^255 - 19), five 51-bit limbs. Not constant time.

#include <array>
#include <cstdint>

#include "swarmkey/types.hpp"

namespace swarmkey::ed25519 {

struct Fe {
  std::array<uint64_t, 5> v{};
};

inline const Uint& field_prime() {
  static const Uint p = (Uint(1) << 255) - 19;
  return p;
}

inline constexpr uint64_t kMask51 = (uint64_t{1} << 51) - 1;

inline void carry(Fe& r) {
  for (int i = 0; i < 4; ++i) {
    r.v[i + 1] += r.v[i] >> 51;
    r.v[i] &= kMask51;
  }
  r.v[0] += 19 * (r.v[4] >> 51);
  r.v[4] &= kMask51;
}

inline Fe fe_from_uint(const Uint& x) {
  const Uint reduced = x % field_prime();
  Fe r;
  for (int i = 0; i < 5; ++i) {
    r.v[i] = static_cast<uint64_t>((reduced >> (51 * i)) & kMask51);
  }
  return r;
}

inline Uint fe_to_uint(const Fe& a) {
  Uint x = 0;
  for (int i = 4; i >= 0; --i) {
    x <<= 51;
    x += a.v[i];
  }
  return x % field_prime();
}

inline Fe fe_small(uint64_t x) { return fe_from_uint(Uint(x)); }

inline Fe operator+(const Fe& a, const Fe& b) {
  Fe r;
  for (int i = 0; i < 5; ++i) r.v[i] = a.v[i] + b.v[i];
  carry(r);
  return r;
}

inline Fe operator-(const Fe& a, const Fe& b) {
  // a + 4p - b keeps every limb non-negative for carried inputs.
  static constexpr uint64_t k4p0 = 0x1FFFFFFFFFFFB4;
  static constexpr uint64_t k4pi = 0x1FFFFFFFFFFFFC;
  Fe r;
  r.v[0] = a.v[0] + k4p0 - b.v[0];
  for (int i = 1; i < 5; ++i) r.v[i] = a.v[i] + k4pi - b.v[i];
  carry(r);
  return r;
}

inline Fe operator*(const Fe& a, const Fe& b) {
  using u128 = unsigned __int128;
  const uint64_t a0 = a.v[0], a1 = a.v[1], a2 = a.v[2], a3 = a.v[3], a4 = a.v[4];
  const uint64_t b0 = b.v[0], b1 = b.v[1], b2 = b.v[2], b3 = b.v[3], b4 = b.v[4];
  const uint64_t b1_19 = 19 * b1, b2_19 = 19 * b2, b3_19 = 19 * b3, b4_19 = 19 * b4;

  u128 t0 = (u128)a0 * b0 + (u128)a1 * b4_19 + (u128)a2 * b3_19 + (u128)a3 * b2_19 + (u128)a4 * b1_19;
  u128 t1 = (u128)a0 * b1 + (u128)a1 * b0 + (u128)a2 * b4_19 + (u128)a3 * b3_19 + (u128)a4 * b2_19;
  u128 t2 = (u128)a0 * b2 + (u128)a1 * b1 + (u128)a2 * b0 + (u128)a3 * b4_19 + (u128)a4 * b3_19;
  u128 t3 = (u128)a0 * b3 + (u128)a1 * b2 + (u128)a2 * b1 + (u128)a3 * b0 + (u128)a4 * b4_19;
  u128 t4 = (u128)a0 * b4 + (u128)a1 * b3 + (u128)a2 * b2 + (u128)a3 * b1 + (u128)a4 * b0;

  Fe r;
  t1 += t0 >> 51;
  r.v[0] = static_cast<uint64_t>(t0) & kMask51;
  t2 += t1 >> 51;
  r.v[1] = static_cast<uint64_t>(t1) & kMask51;
  t3 += t2 >> 51;
  r.v[2] = static_cast<uint64_t>(t2) & kMask51;
  t4 += t3 >> 51;
  r.v[3] = static_cast<uint64_t>(t3) & kMask51;
  const u128 top = t4 >> 51;
  r.v[4] = static_cast<uint64_t>(t4) & kMask51;
  const u128 low = (u128)r.v[0] + top * 19;
  r.v[0] = static_cast<uint64_t>(low) & kMask51;
  r.v[1] += static_cast<uint64_t>(low >> 51);
  return r;
}

inline Fe fe_pow(const Fe& base, const Uint& exponent) {
  Fe result = fe_small(1);
  const unsigned bits = bit_length(exponent);
  for (unsigned i = bits; i-- > 0;) {
    result = result * result;
    if (boost::multiprecision::bit_test(exponent, i)) result = result * base;
  }
  return result;
}

inline Fe fe_inv(const Fe& a) { return fe_pow(a, field_prime() - 2); }

inline bool fe_is_zero(const Fe& a) { return fe_to_uint(a) == 0; }
inline bool fe_eq(const Fe& a, const Fe& b) { return fe_to_uint(a) == fe_to_uint(b); }
inline bool fe_is_odd(const Fe& a) { return boost::multiprecision::bit_test(fe_to_uint(a), 0); }

}  // namespace swarmkey::ed25519
