#pragma once

#include <array>
#include <string_view>

#include "swarmkey/keygen.hpp"
#include "swarmkey/random.hpp"

namespace swarmkey::sim {

// Plaintext bundles start with this tag, which lets tests scan byte streams
// for leaked share plaintext.
inline constexpr std::string_view kBundleMagic = "SKB1";

struct BoxKeypair {
  std::array<uint8_t, 32> public_key{};
  std::array<uint8_t, 32> secret_key{};
};

BoxKeypair box_keypair_from_seed(ByteView seed32);
BoxKeypair box_keypair(RandomSource& rng);

class DecryptionError : public ProtocolError {
 public:
  using ProtocolError::ProtocolError;
};

// magic || x || y || R || A || S with fixed-width fields.
Bytes encode_bundle(const Group& group, const ShareBundle& bundle);
// Throws EncodingError on a malformed or non-canonical bundle.
ShareBundle decode_bundle(const Group& group, ByteView bytes);

// Authenticated public-key encryption (X25519 + XSalsa20-Poly1305). The output
// is nonce || box.
Bytes encrypt_share(const Group& group, const ShareBundle& bundle, ByteView recipient_public,
                    const BoxKeypair& sender, RandomSource& rng);
// Throws DecryptionError if authentication fails, EncodingError if the
// authenticated plaintext is not a bundle.
ShareBundle decrypt_share(const Group& group, ByteView ciphertext, ByteView sender_public,
                          const BoxKeypair& recipient);

}  // namespace swarmkey::sim
