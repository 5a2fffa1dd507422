#include "ph/transcript.hpp"

namespace ph {

namespace {

struct ExpectedStep {
    Dir dir;
    MsgType type;
};

bool fail(std::string* why, const std::string& msg) {
    if (why) *why = msg;
    return false;
}

} // namespace

bool verify_transcript(const Transcript& t, Protocol protocol, const GroupParams& params,
                       std::optional<std::size_t> expected_m, std::string* why) {
    const std::vector<ExpectedStep> steps =
        protocol == Protocol::Single
            ? std::vector<ExpectedStep>{{Dir::IToR, MsgType::DhSingle},
                                        {Dir::RToI, MsgType::DhSingle},
                                        {Dir::IToR, MsgType::ConfirmInitiator},
                                        {Dir::RToI, MsgType::ConfirmResponder}}
            : std::vector<ExpectedStep>{{Dir::IToR, MsgType::DhMulti},
                                        {Dir::RToI, MsgType::DhMulti},
                                        {Dir::IToR, MsgType::TagSetInitiator},
                                        {Dir::RToI, MsgType::TagSetResponder}};

    if (t.size() != steps.size()) {
        return fail(why, "wrong message count");
    }

    std::optional<std::size_t> tag_count;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (t[i].dir != steps[i].dir) {
            return fail(why, "message " + std::to_string(i) + ": wrong direction");
        }
        WireMessage msg;
        try {
            msg = decode(t[i].bytes);
        } catch (const FormatError& e) {
            return fail(why, "message " + std::to_string(i) + ": " + e.what());
        }
        if (msg.type != steps[i].type) {
            return fail(why, "message " + std::to_string(i) + ": wrong type");
        }
        switch (msg.type) {
            case MsgType::DhSingle:
            case MsgType::DhMulti:
                try {
                    validate_element(msg.payload, params);
                } catch (const Error& e) {
                    return fail(why, "message " + std::to_string(i) + ": " + e.what());
                }
                break;
            case MsgType::TagSetInitiator:
            case MsgType::TagSetResponder: {
                std::vector<Tag> tags;
                try {
                    tags = expected_m ? parse_tagset_payload(msg, *expected_m)
                                      : parse_tagset_payload(msg);
                } catch (const SizeError&) {
                    return fail(why, "message " + std::to_string(i) + ": tag count != m");
                }
                if (tag_count && tags.size() != *tag_count) {
                    return fail(why, "tag counts differ between directions");
                }
                tag_count = tags.size();
                break;
            }
            case MsgType::ConfirmInitiator:
            case MsgType::ConfirmResponder:
                break; // 32-byte length already enforced by decode
        }
    }
    return true;
}

std::size_t count_group_elements(const Transcript& t) {
    std::size_t n = 0;
    for (const TranscriptEntry& e : t) {
        try {
            WireMessage msg = decode(e.bytes);
            if (msg.type == MsgType::DhSingle || msg.type == MsgType::DhMulti) ++n;
        } catch (const FormatError&) {
        }
    }
    return n;
}

std::size_t count_tags(const Transcript& t) {
    std::size_t n = 0;
    for (const TranscriptEntry& e : t) {
        try {
            WireMessage msg = decode(e.bytes);
            if (msg.type == MsgType::TagSetInitiator || msg.type == MsgType::TagSetResponder) {
                n += parse_tagset_payload(msg).size();
            }
        } catch (const FormatError&) {
        }
    }
    return n;
}

} // namespace ph
