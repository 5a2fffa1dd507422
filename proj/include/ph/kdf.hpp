#pragma once

#include <array>
#include <cstdint>

#include "ph/group.hpp"
#include "ph/hmac.hpp"

namespace ph {

/// Derived only from a shared group element; never transmitted.
struct SessionKey {
    std::array<std::uint8_t, 32> key{};

    bool operator==(const SessionKey& o) const { return key == o.key; }
};

/// Keyed hash of a group secret. Fixed 32 bytes.
struct Tag {
    std::array<std::uint8_t, 32> bytes{};

    bool operator==(const Tag& o) const { return bytes == o.bytes; }
    bool operator<(const Tag& o) const { return bytes < o.bytes; }
};

/// The protocol's hash family, one underlying hash with domain labels.
enum class HashLabel { Key, ConfirmInitiator, ConfirmResponder, MultiKey };

constexpr const char* label_string(HashLabel label) {
    switch (label) {
        case HashLabel::Key: return "ph-h3";
        case HashLabel::ConfirmInitiator: return "ph-h4";
        case HashLabel::ConfirmResponder: return "ph-h5";
        case HashLabel::MultiKey: return "ph-h";
    }
    return "";
}

/// H(label || fixed-width-encoding(value)). Distinct labels act as
/// independent functions.
Digest32 role_hash(HashLabel label, const GroupElement& value, const GroupParams& params);

SessionKey session_key_from(HashLabel label, const GroupElement& shared,
                            const GroupParams& params);

enum class Direction : std::uint8_t { Initiator = 0x49, Responder = 0x52 };

/// HMAC(k, direction-byte || secret). The direction byte keeps the two
/// sides' tag functions distinct, as the protocol requires.
Tag keyed_tag(const SessionKey& k, Direction dir, std::span<const std::uint8_t> secret);

} // namespace ph
