#include "swarmkey/sim/share_box.hpp"

#include <sodium.h>

#include "sim/wire.hpp"

namespace swarmkey::sim {
namespace {

void ensure_sodium() {
  if (sodium_init() < 0) throw std::runtime_error("libsodium initialisation failed");
}

}  // namespace

BoxKeypair box_keypair_from_seed(ByteView seed32) {
  if (seed32.size() != crypto_box_SEEDBYTES) throw ParameterError("box seed must be 32 bytes");
  ensure_sodium();
  BoxKeypair kp;
  crypto_box_seed_keypair(kp.public_key.data(), kp.secret_key.data(), seed32.data());
  return kp;
}

BoxKeypair box_keypair(RandomSource& rng) {
  Bytes seed = rng.bytes(crypto_box_SEEDBYTES);
  const BoxKeypair kp = box_keypair_from_seed(seed);
  sodium_memzero(seed.data(), seed.size());
  return kp;
}

Bytes encode_bundle(const Group& g, const ShareBundle& b) {
  wire::Writer w;
  w.raw(as_bytes(kBundleMagic));
  w.raw(g.encode_scalar(b.sigma.x)).raw(g.encode_scalar(b.sigma.y));
  w.raw(b.R.encoding).raw(b.A.encoding).raw(g.encode_scalar(b.S));
  return w.take();
}

ShareBundle decode_bundle(const Group& g, ByteView bytes) {
  wire::Reader r(bytes);
  const ByteView magic = r.raw(kBundleMagic.size());
  if (!std::equal(magic.begin(), magic.end(), kBundleMagic.begin())) throw EncodingError("not a share bundle");
  ShareBundle b;
  b.sigma.x = g.decode_scalar(r.raw(g.scalar_bytes()));
  b.sigma.y = g.decode_scalar(r.raw(g.scalar_bytes()));
  b.R = g.decode_or_throw(r.raw(g.element_bytes()));
  b.A = g.decode_or_throw(r.raw(g.element_bytes()));
  b.S = g.decode_scalar(r.raw(g.scalar_bytes()));
  r.expect_done();
  if (!g.scalars().contains(b.sigma.x) || !g.scalars().contains(b.sigma.y)) {
    throw EncodingError("share coordinates out of range");
  }
  return b;
}

Bytes encrypt_share(const Group& g, const ShareBundle& bundle, ByteView recipient_public, const BoxKeypair& sender,
                    RandomSource& rng) {
  if (recipient_public.size() != crypto_box_PUBLICKEYBYTES) throw ParameterError("bad recipient key");
  ensure_sodium();
  Bytes plain = encode_bundle(g, bundle);
  Bytes out = rng.bytes(crypto_box_NONCEBYTES);
  out.resize(crypto_box_NONCEBYTES + crypto_box_MACBYTES + plain.size());
  const int rc = crypto_box_easy(out.data() + crypto_box_NONCEBYTES, plain.data(), plain.size(), out.data(),
                                 recipient_public.data(), sender.secret_key.data());
  sodium_memzero(plain.data(), plain.size());
  if (rc != 0) throw ProtocolError("share encryption failed");
  return out;
}

ShareBundle decrypt_share(const Group& g, ByteView ciphertext, ByteView sender_public, const BoxKeypair& recipient) {
  if (sender_public.size() != crypto_box_PUBLICKEYBYTES) throw DecryptionError("bad sender key");
  if (ciphertext.size() < crypto_box_NONCEBYTES + crypto_box_MACBYTES) throw DecryptionError("ciphertext too short");
  ensure_sodium();
  const std::size_t body = ciphertext.size() - crypto_box_NONCEBYTES;
  Bytes plain(body - crypto_box_MACBYTES);
  if (crypto_box_open_easy(plain.data(), ciphertext.data() + crypto_box_NONCEBYTES, body, ciphertext.data(),
                           sender_public.data(), recipient.secret_key.data()) != 0) {
    throw DecryptionError("authentication failed");
  }
  ShareBundle b;
  try {
    b = decode_bundle(g, plain);
  } catch (...) {
    sodium_memzero(plain.data(), plain.size());
    throw;
  }
  sodium_memzero(plain.data(), plain.size());
  return b;
}

}  // namespace swarmkey::sim
