#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace swarmkey {

using Bytes = std::vector<uint8_t>;
using ByteView = std::span<const uint8_t>;

// Wide enough for products of two 256-bit scalars and for 512-bit digests.
using Uint = boost::multiprecision::uint512_t;

// Error categories. Callers distinguish them by type; messages are for humans.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class EncodingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InterpolationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AggregationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string to_hex(ByteView bytes);
Bytes from_hex(std::string_view hex);

Uint uint_from_le(ByteView bytes);
// Little-endian fixed-width encoding; throws EncodingError if value does not fit.
Bytes uint_to_le(const Uint& value, std::size_t width);

inline ByteView as_bytes(std::string_view s) {
  return {reinterpret_cast<const uint8_t*>(s.data()), s.size()};
}

inline void append(Bytes& out, ByteView more) { out.insert(out.end(), more.begin(), more.end()); }

// Number of significant bits (0 for zero).
unsigned bit_length(const Uint& value);

}  // namespace swarmkey
