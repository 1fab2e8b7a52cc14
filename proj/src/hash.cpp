#include "swarmkey/hash.hpp"

#include <sodium.h>

namespace swarmkey {

Bytes sha512(std::span<const ByteView> parts) {
  crypto_hash_sha512_state state;
  crypto_hash_sha512_init(&state);
  for (ByteView part : parts) crypto_hash_sha512_update(&state, part.data(), part.size());
  Bytes out(crypto_hash_sha512_BYTES);
  crypto_hash_sha512_final(&state, out.data());
  return out;
}

Bytes sha512(std::initializer_list<ByteView> parts) {
  return sha512(std::span<const ByteView>(parts.begin(), parts.size()));
}

}  // namespace swarmkey
