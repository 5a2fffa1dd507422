#include "ph/handshake_single.hpp"

namespace ph {

SingleHandshake::SingleHandshake(Role role, const GroupParams& params, GroupElement generator,
                                 std::optional<std::string> group_id, Exponent x)
    : role_(role),
      params_(params),
      generator_(std::move(generator)),
      group_id_(std::move(group_id)),
      x_(std::move(x)) {}

SingleHandshake SingleHandshake::for_member(Role role, const GroupParams& params,
                                            const GroupSecret& secret, RandomSource& rng) {
    return SingleHandshake(role, params, derive_generator(secret.secret, params), secret.id,
                           random_exponent(rng, params));
}

SingleHandshake SingleHandshake::outsider(Role role, const GroupParams& params,
                                          RandomSource& rng) {
    std::array<std::uint8_t, 32> fresh;
    rng.fill(fresh);
    return SingleHandshake(role, params, derive_generator(fresh, params), std::nullopt,
                           random_exponent(rng, params));
}

WireMessage SingleHandshake::start() {
    if (role_ != Role::Initiator || phase_ != Phase::Start) {
        throw StateError("single: start() out of phase");
    }
    phase_ = Phase::SentDh;
    return dh_message(MsgType::DhSingle, mod_exp(generator_, x_, params_), params_);
}

void SingleHandshake::abort_session(Abort reason) {
    phase_ = Phase::Done;
    abort_ = reason;
    if (!outcome_) {
        // Garbage key, unilaterally derived; never equals a peer's key.
        HandshakeOutcome out;
        out.session_key.key = Sha256()
                                  .update("ph-abort")
                                  .update(x_.value.to_bytes_be(params_.element_width))
                                  .finish();
        outcome_ = std::move(out);
    }
}

void SingleHandshake::finish(bool matched) {
    HandshakeOutcome out;
    if (matched && group_id_) {
        out.matched.insert(*group_id_);
    }
    out.session_key = session_key_from(HashLabel::Key, *shared_, params_);
    outcome_ = std::move(out);
    phase_ = Phase::Done;
}

std::vector<WireMessage> SingleHandshake::on_message(const WireMessage& msg) {
    if (phase_ == Phase::Done) {
        return {}; // session over; late or duplicate traffic is ignored
    }

    try {
        if (role_ == Role::Responder && phase_ == Phase::Start) {
            if (msg.type != MsgType::DhSingle) {
                abort_session(Abort::BadState);
                return {};
            }
            GroupElement peer = validate_element(msg.payload, params_);
            shared_ = mod_exp(peer, x_, params_);
            phase_ = Phase::SentDh;
            return {dh_message(MsgType::DhSingle, mod_exp(generator_, x_, params_), params_)};
        }

        if (role_ == Role::Initiator && phase_ == Phase::SentDh) {
            if (msg.type != MsgType::DhSingle) {
                abort_session(Abort::BadState);
                return {};
            }
            GroupElement peer = validate_element(msg.payload, params_);
            shared_ = mod_exp(peer, x_, params_);
            phase_ = Phase::SentConfirm;
            return {confirm_message(MsgType::ConfirmInitiator,
                                    role_hash(HashLabel::ConfirmInitiator, *shared_, params_))};
        }

        if (role_ == Role::Responder && phase_ == Phase::SentDh) {
            if (msg.type != MsgType::ConfirmInitiator) {
                abort_session(Abort::BadState);
                return {};
            }
            Digest32 expected = role_hash(HashLabel::ConfirmInitiator, *shared_, params_);
            bool matched = ct_equal(msg.payload, expected);
            // Key validation verdict must not shape behavior: the responder
            // sends its confirmation either way.
            WireMessage reply = confirm_message(
                MsgType::ConfirmResponder, role_hash(HashLabel::ConfirmResponder, *shared_, params_));
            finish(matched);
            return {reply};
        }

        if (role_ == Role::Initiator && phase_ == Phase::SentConfirm) {
            if (msg.type != MsgType::ConfirmResponder) {
                abort_session(Abort::BadState);
                return {};
            }
            Digest32 expected = role_hash(HashLabel::ConfirmResponder, *shared_, params_);
            finish(ct_equal(msg.payload, expected));
            return {};
        }
    } catch (const RangeError&) {
        abort_session(Abort::BadElement);
        return {};
    } catch (const SubgroupError&) {
        abort_session(Abort::BadElement);
        return {};
    }

    abort_session(Abort::BadState); // message arrived in a phase with no legal types
    return {};
}

} // namespace ph
