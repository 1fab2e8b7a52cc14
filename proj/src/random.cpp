#include "swarmkey/random.hpp"

#include <sodium.h>

#include <cstring>

#include "swarmkey/hash.hpp"

namespace swarmkey {

Bytes RandomSource::bytes(std::size_t n) {
  Bytes out(n);
  fill(out);
  return out;
}

uint64_t RandomSource::next_u64() {
  std::array<uint8_t, 8> buf{};
  fill(buf);
  uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | buf[i];
  return v;
}

double RandomSource::uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

uint64_t RandomSource::below(uint64_t bound) {
  if (bound == 0) throw ParameterError("below(0)");
  // Rejection sampling over the largest multiple of bound.
  const uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
  for (;;) {
    const uint64_t v = next_u64();
    if (v < limit) return v % bound;
  }
}

Scalar RandomSource::scalar(const ZMod& field) {
  std::array<uint8_t, 64> wide{};
  fill(wide);
  return field.reduce(uint_from_le(wide));
}

void SystemRandom::fill(std::span<uint8_t> out) {
  if (sodium_init() < 0) throw std::runtime_error("libsodium initialisation failed");
  randombytes_buf(out.data(), out.size());
}

SeededRandom::SeededRandom(uint64_t seed, std::string_view label) {
  Bytes material = uint_to_le(Uint(seed), 8);
  const Bytes digest = sha512({as_bytes(label), material});
  std::memcpy(key_.data(), digest.data(), key_.size());
}

SeededRandom::SeededRandom(ByteView key_material, std::string_view label) {
  const Bytes digest = sha512({as_bytes(label), key_material});
  std::memcpy(key_.data(), digest.data(), key_.size());
}

SeededRandom SeededRandom::derive(std::string_view label) const {
  return SeededRandom(key_, label);
}

void SeededRandom::refill() {
  static constexpr std::array<uint8_t, crypto_stream_chacha20_NONCEBYTES> kNonce{};
  buffer_.fill(0);
  crypto_stream_chacha20_xor_ic(buffer_.data(), buffer_.data(), buffer_.size(), kNonce.data(),
                                block_, key_.data());
  ++block_;
  used_ = 0;
}

void SeededRandom::fill(std::span<uint8_t> out) {
  for (uint8_t& b : out) {
    if (used_ == buffer_.size()) refill();
    b = buffer_[used_++];
  }
}

}  // namespace swarmkey
