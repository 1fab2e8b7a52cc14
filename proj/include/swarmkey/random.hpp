#pragma once

#include <array>
#include <string_view>

#include "swarmkey/types.hpp"
#include "swarmkey/zmod.hpp"

namespace swarmkey {

// Source of random bytes. Derived helpers sample integers and scalars.
class RandomSource {
 public:
  virtual ~RandomSource() = default;
  virtual void fill(std::span<uint8_t> out) = 0;

  Bytes bytes(std::size_t n);
  uint64_t next_u64();
  // Uniform in [0, 1).
  double uniform01();
  // Uniform in [0, bound); bound must be nonzero and below 2^64.
  uint64_t below(uint64_t bound);
  // Uniform in [0, m). Reduces 64 random bytes, so the bias is below 2^-250.
  Scalar scalar(const ZMod& field);
};

// Operating-system randomness.
class SystemRandom final : public RandomSource {
 public:
  void fill(std::span<uint8_t> out) override;
};

// ChaCha20 keystream keyed from (seed, label). Identical inputs give identical
// streams, which is what makes simulations replayable.
class SeededRandom final : public RandomSource {
 public:
  explicit SeededRandom(uint64_t seed, std::string_view label = "swarmkey");
  SeededRandom(ByteView key_material, std::string_view label);

  void fill(std::span<uint8_t> out) override;

  // Independent child stream; does not advance this stream.
  SeededRandom derive(std::string_view label) const;

 private:
  void refill();

  std::array<uint8_t, 32> key_{};
  uint64_t block_ = 0;
  std::array<uint8_t, 64> buffer_{};
  std::size_t used_ = 64;
};

}  // namespace swarmkey
