#pragma once

#include <initializer_list>

#include "swarmkey/types.hpp"

namespace swarmkey {

// SHA-512 over the concatenation of parts.
Bytes sha512(std::initializer_list<ByteView> parts);
Bytes sha512(std::span<const ByteView> parts);

}  // namespace swarmkey
