#include "ph/wire.hpp"

#include <cstring>

namespace ph {

bool is_known_type(std::uint8_t t) {
    switch (static_cast<MsgType>(t)) {
        case MsgType::DhSingle:
        case MsgType::ConfirmInitiator:
        case MsgType::ConfirmResponder:
        case MsgType::DhMulti:
        case MsgType::TagSetInitiator:
        case MsgType::TagSetResponder:
            return true;
    }
    return false;
}

WireMessage dh_message(MsgType type, const GroupElement& e, const GroupParams& params) {
    return WireMessage{type, encode_element(e, params)};
}

WireMessage confirm_message(MsgType type, const Digest32& tag) {
    return WireMessage{type, Bytes(tag.begin(), tag.end())};
}

WireMessage tagset_message(MsgType type, const std::vector<Tag>& tags) {
    WireMessage msg{type, {}};
    msg.payload.reserve(2 + tags.size() * 32);
    append_u16be(msg.payload, static_cast<std::uint16_t>(tags.size()));
    for (const Tag& t : tags) {
        append(msg.payload, t.bytes);
    }
    return msg;
}

std::vector<Tag> parse_tagset_payload(const WireMessage& msg) {
    if (msg.payload.size() < 2) {
        throw FormatError(FormatErrorKind::Length, "tagset: payload shorter than count field");
    }
    std::size_t count = (static_cast<std::size_t>(msg.payload[0]) << 8) | msg.payload[1];
    if (msg.payload.size() != 2 + count * 32) {
        throw FormatError(FormatErrorKind::Length, "tagset: count disagrees with payload size");
    }
    std::vector<Tag> tags(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::memcpy(tags[i].bytes.data(), msg.payload.data() + 2 + i * 32, 32);
    }
    return tags;
}

std::vector<Tag> parse_tagset_payload(const WireMessage& msg, std::size_t expected_count) {
    std::vector<Tag> tags = parse_tagset_payload(msg);
    if (tags.size() != expected_count) {
        std::string detail = "tagset: " + std::to_string(tags.size()) + " tags, expected " +
                             std::to_string(expected_count);
        throw SizeError(detail);
    }
    return tags;
}

Bytes encode(const WireMessage& msg) {
    Bytes out;
    out.reserve(kHeaderSize + msg.payload.size());
    out.push_back(kWireVersion);
    out.push_back(static_cast<std::uint8_t>(msg.type));
    append_u32be(out, static_cast<std::uint32_t>(msg.payload.size()));
    append(out, msg.payload);
    return out;
}

WireMessage decode(std::span<const std::uint8_t> buffer) {
    if (buffer.size() < kHeaderSize) {
        throw FormatError(FormatErrorKind::Truncation, "message shorter than header");
    }
    if (buffer[0] != kWireVersion) {
        throw FormatError(FormatErrorKind::Version, "unknown version byte");
    }
    if (!is_known_type(buffer[1])) {
        throw FormatError(FormatErrorKind::Type, "unknown message type");
    }
    std::uint32_t length = (std::uint32_t(buffer[2]) << 24) | (std::uint32_t(buffer[3]) << 16) |
                           (std::uint32_t(buffer[4]) << 8) | std::uint32_t(buffer[5]);
    if (buffer.size() - kHeaderSize < length) {
        throw FormatError(FormatErrorKind::Truncation, "payload shorter than declared length");
    }
    if (buffer.size() - kHeaderSize > length) {
        throw FormatError(FormatErrorKind::Length, "trailing bytes after declared length");
    }

    WireMessage msg{static_cast<MsgType>(buffer[1]),
                    Bytes(buffer.begin() + kHeaderSize, buffer.end())};

    switch (msg.type) {
        case MsgType::ConfirmInitiator:
        case MsgType::ConfirmResponder:
            if (msg.payload.size() != 32) {
                throw FormatError(FormatErrorKind::Length, "confirm payload must be 32 bytes");
            }
            break;
        case MsgType::TagSetInitiator:
        case MsgType::TagSetResponder:
            parse_tagset_payload(msg); // throws on bad count arithmetic
            break;
        case MsgType::DhSingle:
        case MsgType::DhMulti:
            if (msg.payload.empty()) {
                throw FormatError(FormatErrorKind::Length, "dh payload must be non-empty");
            }
            break;
    }
    return msg;
}

} // namespace ph
