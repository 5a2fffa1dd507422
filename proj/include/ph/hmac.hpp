#pragma once

#include "ph/sha256.hpp"

namespace ph {

/// HMAC-SHA-256 (RFC 2104).
Digest32 hmac_sha256(std::span<const std::uint8_t> key,
                     std::span<const std::uint8_t> message);

} // namespace ph
