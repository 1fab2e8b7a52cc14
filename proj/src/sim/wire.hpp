#pragma once

// Little-endian framing for simulator payloads.

#include <string>
#include <string_view>

#include "swarmkey/types.hpp"

namespace swarmkey::sim::wire {

class Writer {
 public:
  Writer& u8(uint8_t v) {
    out_.push_back(v);
    return *this;
  }
  Writer& u32(uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<uint8_t>(v >> (8 * i)));
    return *this;
  }
  Writer& raw(ByteView b) {
    append(out_, b);
    return *this;
  }
  Writer& blob(ByteView b) {
    u32(static_cast<uint32_t>(b.size()));
    return raw(b);
  }
  Writer& str(std::string_view s) { return blob(as_bytes(s)); }
  Bytes take() { return std::move(out_); }

 private:
  Bytes out_;
};

class Reader {
 public:
  explicit Reader(ByteView in) : in_(in) {}

  uint8_t u8() { return raw(1)[0]; }
  uint32_t u32() {
    const ByteView b = raw(4);
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(b[i]) << (8 * i);
    return v;
  }
  ByteView raw(std::size_t n) {
    if (in_.size() - pos_ < n) throw EncodingError("truncated payload");
    const ByteView out = in_.subspan(pos_, n);
    pos_ += n;
    return out;
  }
  Bytes blob() {
    const uint32_t n = u32();
    const ByteView b = raw(n);
    return Bytes(b.begin(), b.end());
  }
  std::string str() {
    const Bytes b = blob();
    return std::string(b.begin(), b.end());
  }
  bool done() const { return pos_ == in_.size(); }
  void expect_done() const {
    if (!done()) throw EncodingError("trailing bytes in payload");
  }

 private:
  ByteView in_;
  std::size_t pos_ = 0;
};

}  // namespace swarmkey::sim::wire
