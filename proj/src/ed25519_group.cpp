#include "ed25519_field.hpp"
#include "swarmkey/group.hpp"

namespace swarmkey {
namespace {

using ed25519::Fe;
using ed25519::fe_small;

// Extended twisted Edwards coordinates (X:Y:Z:T), x = X/Z, y = Y/Z, xy = T/Z.
struct Point {
  Fe x, y, z, t;
};

struct Constants {
  Fe d;
  Fe d2;
  Fe sqrt_m1;
  Uint p_minus_5_over_8;
};

const Constants& constants() {
  static const Constants c = [] {
    Constants k;
    const Fe zero = fe_small(0);
    k.d = (zero - fe_small(121665)) * ed25519::fe_inv(fe_small(121666));
    k.d2 = k.d + k.d;
    const Uint& p = ed25519::field_prime();
    k.sqrt_m1 = ed25519::fe_pow(fe_small(2), (p - 1) / 4);
    k.p_minus_5_over_8 = (p - 5) / 8;
    return k;
  }();
  return c;
}

const Uint& ell25519() {
  static const Uint ell = (Uint(1) << 252) + Uint("27742317777372353535851937790883648493");
  return ell;
}

Point neutral() { return Point{fe_small(0), fe_small(1), fe_small(1), fe_small(0)}; }

// Complete addition for a = -1 (RFC 8032, section 5.1.4).
Point add(const Point& p, const Point& q) {
  const Constants& k = constants();
  const Fe a = (p.y - p.x) * (q.y - q.x);
  const Fe b = (p.y + p.x) * (q.y + q.x);
  const Fe c = p.t * k.d2 * q.t;
  const Fe d = p.z * (q.z + q.z);
  const Fe e = b - a;
  const Fe f = d - c;
  const Fe g = d + c;
  const Fe h = b + a;
  return Point{e * f, g * h, f * g, e * h};
}

Point mul(const Uint& k, const Point& p) {
  Point acc = neutral();
  for (unsigned i = bit_length(k); i-- > 0;) {
    acc = add(acc, acc);
    if (boost::multiprecision::bit_test(k, i)) acc = add(acc, p);
  }
  return acc;
}

Bytes encode(const Point& p) {
  const Fe zinv = ed25519::fe_inv(p.z);
  const Fe x = p.x * zinv;
  const Fe y = p.y * zinv;
  Bytes out = uint_to_le(ed25519::fe_to_uint(y), 32);
  if (ed25519::fe_is_odd(x)) out[31] |= 0x80;
  return out;
}

// RFC 8032, section 5.1.3. Rejects y >= p and the (x = 0, sign = 1) encoding.
std::optional<Point> decode_point(ByteView bytes) {
  if (bytes.size() != 32) return std::nullopt;
  Bytes y_bytes(bytes.begin(), bytes.end());
  const bool sign = (y_bytes[31] & 0x80) != 0;
  y_bytes[31] &= 0x7f;
  const Uint y_int = uint_from_le(y_bytes);
  if (y_int >= ed25519::field_prime()) return std::nullopt;

  const Constants& k = constants();
  const Fe y = ed25519::fe_from_uint(y_int);
  const Fe one = fe_small(1);
  const Fe yy = y * y;
  const Fe u = yy - one;
  const Fe v = k.d * yy + one;
  const Fe v3 = v * v * v;
  const Fe v7 = v3 * v3 * v;
  Fe x = u * v3 * ed25519::fe_pow(u * v7, k.p_minus_5_over_8);
  const Fe vxx = v * x * x;
  if (!ed25519::fe_eq(vxx, u)) {
    if (!ed25519::fe_eq(vxx, fe_small(0) - u)) return std::nullopt;
    x = x * k.sqrt_m1;
  }
  if (ed25519::fe_is_zero(x) && sign) return std::nullopt;
  if (ed25519::fe_is_odd(x) != sign) x = fe_small(0) - x;
  return Point{x, y, one, x * y};
}

GroupParams ed25519_params() {
  GroupParams p;
  p.name = "ed25519";
  p.ell = ell25519();
  p.cofactor_log2 = 3;
  p.b = 256;
  p.clamp_top_bit = 254;
  p.cofactored_verify = true;
  p.generator.encoding = from_hex("5866666666666666666666666666666666666666666666666666666666666666");
  return p;
}

class Ed25519Group final : public Group {
 public:
  Ed25519Group() : Group(ed25519_params()) {}

  std::size_t element_bytes() const override { return 32; }

  GroupElement identity() const override { return GroupElement{encode(neutral())}; }

  GroupElement point_add(const GroupElement& p, const GroupElement& q) const override {
    return GroupElement{encode(add(load(p), load(q)))};
  }

  GroupElement point_neg(const GroupElement& p) const override {
    const Point a = load(p);
    const Fe zero = fe_small(0);
    return GroupElement{encode(Point{zero - a.x, a.y, a.z, zero - a.t})};
  }

  GroupElement point_mul(const Uint& k, const GroupElement& p) const override {
    return GroupElement{encode(mul(k, load(p)))};
  }

  std::optional<GroupElement> decode(ByteView bytes) const override {
    auto p = decode_point(bytes);
    if (!p) return std::nullopt;
    return GroupElement{Bytes(bytes.begin(), bytes.end())};
  }

 private:
  static Point load(const GroupElement& e) {
    auto p = decode_point(e.encoding);
    if (!p) throw EncodingError("invalid ed25519 point encoding");
    return *p;
  }
};

}  // namespace

GroupPtr make_ed25519_group() {
  static const GroupPtr instance = std::make_shared<Ed25519Group>();
  return instance;
}

}  // namespace swarmkey
