#pragma once

#include <cstdint>
#include <vector>

#include "ph/bytes.hpp"
#include "ph/errors.hpp"
#include "ph/kdf.hpp"

namespace ph {

constexpr std::uint8_t kWireVersion = 0x01;

enum class MsgType : std::uint8_t {
    DhSingle = 0x01,
    ConfirmInitiator = 0x02,
    ConfirmResponder = 0x03,
    DhMulti = 0x11,
    TagSetInitiator = 0x12,
    TagSetResponder = 0x13,
};

bool is_known_type(std::uint8_t t);

/// Typed, length-prefixed protocol message: the unit an adversary may tamper
/// with. Layout: version(1) type(1) length(4, BE) payload(length).
struct WireMessage {
    MsgType type;
    Bytes payload;

    bool operator==(const WireMessage& o) const {
        return type == o.type && payload == o.payload;
    }
};

WireMessage dh_message(MsgType type, const GroupElement& e, const GroupParams& params);
WireMessage confirm_message(MsgType type, const Digest32& tag);
WireMessage tagset_message(MsgType type, const std::vector<Tag>& tags);

/// Payload helpers; throw FormatError(Length) on malformed payloads.
std::vector<Tag> parse_tagset_payload(const WireMessage& msg);

/// As above, but additionally requires exactly `expected_count` tags (the
/// session's membership cap m). Throws SizeError on disagreement.
std::vector<Tag> parse_tagset_payload(const WireMessage& msg, std::size_t expected_count);

Bytes encode(const WireMessage& msg);

/// Strict decode of a complete buffer: rejects unknown version/type, length
/// mismatches, truncation, and tag-set count arithmetic that disagrees with
/// the payload size. Throws FormatError.
WireMessage decode(std::span<const std::uint8_t> buffer);

/// Encoded size of the fixed header.
constexpr std::size_t kHeaderSize = 6;

/// Sanity cap on declared payload length (transport guard).
constexpr std::uint32_t kMaxPayload = 1u << 20;

} // namespace ph
