#include "ph/handshake_multi.hpp"

namespace ph {

MultiHandshake::MultiHandshake(Role role, const GroupParams& params, PaddedArray array,
                               Exponent x)
    : role_(role), params_(params), array_(std::move(array)), x_(std::move(x)) {
    if (array_.size() == 0) {
        throw ConfigError("multi: membership cap m must be positive");
    }
}

MultiHandshake MultiHandshake::create(Role role, const GroupParams& params,
                                      const std::vector<GroupSecret>& memberships,
                                      const std::set<std::string>& hidden, std::size_t m,
                                      RandomSource& rng) {
    PaddedArray array = build_padded_array(memberships, hidden, m, rng);
    return MultiHandshake(role, params, std::move(array), random_exponent(rng, params));
}

WireMessage MultiHandshake::start() {
    if (role_ != Role::Initiator || phase_ != Phase::Start) {
        throw StateError("multi: start() out of phase");
    }
    phase_ = Phase::SentDh;
    return dh_message(MsgType::DhMulti, mod_exp(GroupElement{params_.g}, x_, params_), params_);
}

void MultiHandshake::abort_session(Abort reason) {
    phase_ = Phase::Done;
    abort_ = reason;
    if (!outcome_) {
        HandshakeOutcome out;
        out.session_key.key = Sha256()
                                  .update("ph-abort")
                                  .update(x_.value.to_bytes_be(params_.element_width))
                                  .finish();
        outcome_ = std::move(out);
    }
}

std::vector<Tag> MultiHandshake::own_tags(Direction dir) const {
    std::vector<Tag> tags;
    tags.reserve(array_.size());
    for (const PaddedSlot& slot : array_.slots) {
        tags.push_back(keyed_tag(*key_, dir, slot.secret));
    }
    return tags;
}

void MultiHandshake::finish(const std::vector<Tag>& received, Direction own_tag_direction) {
    HandshakeOutcome out;
    for (const PaddedSlot& slot : array_.slots) {
        if (!slot.is_real) continue;
        Tag candidate = keyed_tag(*key_, own_tag_direction, slot.secret);
        bool present = false;
        for (const Tag& r : received) {
            present |= ct_equal(candidate.bytes, r.bytes);
        }
        if (present) {
            out.matched.insert(*slot.id);
        }
    }
    out.session_key = *key_;
    outcome_ = std::move(out);
    phase_ = Phase::Done;
}

std::vector<WireMessage> MultiHandshake::on_message(const WireMessage& msg) {
    if (phase_ == Phase::Done) {
        return {};
    }

    try {
        if (role_ == Role::Responder && phase_ == Phase::Start) {
            if (msg.type != MsgType::DhMulti) {
                abort_session(Abort::BadState);
                return {};
            }
            GroupElement peer = validate_element(msg.payload, params_);
            shared_ = mod_exp(peer, x_, params_);
            key_ = session_key_from(HashLabel::MultiKey, *shared_, params_);
            phase_ = Phase::SentDh;
            return {dh_message(MsgType::DhMulti, mod_exp(GroupElement{params_.g}, x_, params_),
                               params_)};
        }

        if (role_ == Role::Initiator && phase_ == Phase::SentDh) {
            if (msg.type != MsgType::DhMulti) {
                abort_session(Abort::BadState);
                return {};
            }
            GroupElement peer = validate_element(msg.payload, params_);
            shared_ = mod_exp(peer, x_, params_);
            key_ = session_key_from(HashLabel::MultiKey, *shared_, params_);
            phase_ = Phase::SentTags;
            return {tagset_message(MsgType::TagSetInitiator, own_tags(Direction::Initiator))};
        }

        if (role_ == Role::Responder && phase_ == Phase::SentDh) {
            if (msg.type != MsgType::TagSetInitiator) {
                abort_session(Abort::BadState);
                return {};
            }
            std::vector<Tag> received = parse_tagset_payload(msg, array_.size());
            WireMessage reply =
                tagset_message(MsgType::TagSetResponder, own_tags(Direction::Responder));
            finish(received, Direction::Initiator);
            return {reply};
        }

        if (role_ == Role::Initiator && phase_ == Phase::SentTags) {
            if (msg.type != MsgType::TagSetResponder) {
                abort_session(Abort::BadState);
                return {};
            }
            std::vector<Tag> received = parse_tagset_payload(msg, array_.size());
            finish(received, Direction::Responder);
            return {};
        }
    } catch (const RangeError&) {
        abort_session(Abort::BadElement);
        return {};
    } catch (const SubgroupError&) {
        abort_session(Abort::BadElement);
        return {};
    } catch (const SizeError&) {
        // Tag-count mismatch signals incompatible configurations.
        abort_session(Abort::TagCountMismatch);
        return {};
    } catch (const FormatError&) {
        abort_session(Abort::BadState);
        return {};
    }

    abort_session(Abort::BadState);
    return {};
}

} // namespace ph
