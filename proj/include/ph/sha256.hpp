#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "ph/bytes.hpp"

namespace ph {

using Digest32 = std::array<std::uint8_t, 32>;

/// Incremental SHA-256 (FIPS 180-4).
class Sha256 {
public:
    Sha256();

    Sha256& update(std::span<const std::uint8_t> data);
    Sha256& update(std::string_view s);

    Digest32 finish();

private:
    void compress(const std::uint8_t* block);

    std::array<std::uint32_t, 8> state_;
    std::array<std::uint8_t, 64> buffer_{};
    std::uint64_t total_len_ = 0;
    std::size_t buffer_len_ = 0;
};

Digest32 sha256(std::span<const std::uint8_t> data);
Digest32 sha256(std::string_view s);

} // namespace ph
