#include <boost/multiprecision/miller_rabin.hpp>
#include <boost/random/mersenne_twister.hpp>

#include "swarmkey/group.hpp"

namespace swarmkey {
namespace {

unsigned toy_width_bits(const Uint& order) { return 8 * ((bit_length(order - 1) + 7) / 8); }

GroupParams toy_params(uint64_t q) {
  const Uint order = Uint(q) * 8;
  GroupParams p;
  p.name = "toy";
  p.ell = q;
  p.cofactor_log2 = 3;
  p.b = toy_width_bits(order);
  p.clamp_top_bit = p.b - 2;
  p.generator.encoding = uint_to_le(Uint(8), p.b / 8);
  return p;
}

class ToyGroup final : public Group {
 public:
  explicit ToyGroup(uint64_t q) : Group(toy_params(q)), order_(Uint(q) * 8) {}

  std::size_t element_bytes() const override { return scalar_bytes(); }

  GroupElement identity() const override { return make(0); }

  GroupElement point_add(const GroupElement& p, const GroupElement& q) const override {
    return make((value(p) + value(q)) % order_);
  }

  GroupElement point_neg(const GroupElement& p) const override {
    const Uint v = value(p);
    return make(v == 0 ? Uint(0) : order_ - v);
  }

  GroupElement point_mul(const Uint& k, const GroupElement& p) const override {
    return make(((k % order_) * value(p)) % order_);
  }

  std::optional<GroupElement> decode(ByteView bytes) const override {
    if (bytes.size() != element_bytes()) return std::nullopt;
    const Uint v = uint_from_le(bytes);
    if (v >= order_) return std::nullopt;
    return make(v);
  }

 private:
  GroupElement make(const Uint& v) const { return GroupElement{uint_to_le(v, element_bytes())}; }
  Uint value(const GroupElement& p) const {
    if (p.encoding.size() != element_bytes()) throw EncodingError("toy element has wrong width");
    return uint_from_le(p.encoding);
  }

  Uint order_;
};

}  // namespace

GroupPtr make_toy_group(uint64_t q) {
  boost::random::mt19937 gen(0x5eed);
  if (q < 3 || !boost::multiprecision::miller_rabin_test(Uint(q), 25, gen)) {
    throw ParameterError("toy group order q must be an odd prime");
  }
  if (q >= (uint64_t{1} << 61)) throw ParameterError("toy group order q must be below 2^61");
  return std::make_shared<ToyGroup>(q);
}

}  // namespace swarmkey
