#include "swarmkey/zmod.hpp"

namespace swarmkey {

using boost::multiprecision::cpp_int;

ZMod::ZMod(Uint modulus) : m_(std::move(modulus)) {
  if (m_ < 2) throw ParameterError("modulus must be at least 2");
  if (bit_length(m_) > 256) throw ParameterError("modulus wider than 256 bits");
}

Scalar ZMod::add(const Scalar& a, const Scalar& b) const {
  Uint s = a.value + b.value;
  if (s >= m_) s -= m_;
  return Scalar{s % m_};
}

Scalar ZMod::sub(const Scalar& a, const Scalar& b) const {
  const Uint av = a.value % m_;
  const Uint bv = b.value % m_;
  return Scalar{av >= bv ? av - bv : m_ - (bv - av)};
}

Scalar ZMod::neg(const Scalar& a) const {
  const Uint av = a.value % m_;
  return Scalar{av == 0 ? Uint(0) : m_ - av};
}

Scalar ZMod::mul(const Scalar& a, const Scalar& b) const {
  return Scalar{((a.value % m_) * (b.value % m_)) % m_};
}

Scalar ZMod::inv(const Scalar& a) const {
  cpp_int r0 = cpp_int(m_);
  cpp_int r1 = cpp_int(a.value % m_);
  if (r1 == 0) throw InterpolationError("zero has no inverse");
  cpp_int s0 = 0;
  cpp_int s1 = 1;
  while (r1 != 0) {
    const cpp_int q = r0 / r1;
    cpp_int tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = s0 - q * s1;
    s0 = s1;
    s1 = tmp;
  }
  if (r0 != 1) throw InterpolationError("value is not invertible modulo m");
  const cpp_int m(m_);
  cpp_int result = s0 % m;
  if (result < 0) result += m;
  return Scalar{Uint(result)};
}

}  // namespace swarmkey
