#include "swarmkey/types.hpp"

namespace swarmkey {

namespace {

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

std::string to_hex(ByteView bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0x0f]);
  }
  return out;
}

Bytes from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw EncodingError("hex string has odd length");
  Bytes out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const int hi = hex_digit(hex[2 * i]);
    const int lo = hex_digit(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw EncodingError("invalid hex digit");
    out[i] = static_cast<uint8_t>((hi << 4) | lo);
  }
  return out;
}

Uint uint_from_le(ByteView bytes) {
  if (bytes.size() > 64) throw EncodingError("integer wider than 512 bits");
  Uint v = 0;
  for (std::size_t i = bytes.size(); i-- > 0;) {
    v <<= 8;
    v |= bytes[i];
  }
  return v;
}

Bytes uint_to_le(const Uint& value, std::size_t width) {
  Bytes out(width);
  Uint v = value;
  for (std::size_t i = 0; i < width; ++i) {
    out[i] = static_cast<uint8_t>(static_cast<unsigned>(v & 0xff));
    v >>= 8;
  }
  if (v != 0) throw EncodingError("integer does not fit in " + std::to_string(width) + " bytes");
  return out;
}

unsigned bit_length(const Uint& value) {
  if (value == 0) return 0;
  return static_cast<unsigned>(boost::multiprecision::msb(value)) + 1;
}

}  // namespace swarmkey
