#include "ph/hmac.hpp"

#include <cstring>

namespace ph {

Digest32 hmac_sha256(std::span<const std::uint8_t> key,
                     std::span<const std::uint8_t> message) {
    constexpr std::size_t kBlock = 64;

    std::array<std::uint8_t, kBlock> k0{};
    if (key.size() > kBlock) {
        Digest32 kh = sha256(key);
        std::memcpy(k0.data(), kh.data(), kh.size());
    } else if (!key.empty()) {
        std::memcpy(k0.data(), key.data(), key.size());
    }

    std::array<std::uint8_t, kBlock> ipad, opad;
    for (std::size_t i = 0; i < kBlock; ++i) {
        ipad[i] = k0[i] ^ 0x36;
        opad[i] = k0[i] ^ 0x5c;
    }

    Digest32 inner = Sha256().update(ipad).update(message).finish();
    return Sha256().update(opad).update(inner).finish();
}

} // namespace ph
