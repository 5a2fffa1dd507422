#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ph {

using Bytes = std::vector<std::uint8_t>;

std::string to_hex(std::span<const std::uint8_t> data);

// Throws std::invalid_argument on odd length or non-hex characters.
Bytes from_hex(std::string_view hex);

// Constant-time equality; also constant-time in the mismatch position.
// Returns false immediately only on length mismatch (lengths are public).
bool ct_equal(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

inline Bytes to_bytes(std::string_view s) {
    return Bytes(s.begin(), s.end());
}

void append(Bytes& out, std::span<const std::uint8_t> data);
void append_u32be(Bytes& out, std::uint32_t v);
void append_u16be(Bytes& out, std::uint16_t v);

} // namespace ph
