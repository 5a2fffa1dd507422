#pragma once

#include <optional>
#include <vector>

#include "ph/credentials.hpp"
#include "ph/group.hpp"
#include "ph/outcome.hpp"
#include "ph/wire.hpp"

namespace ph {

/// Sans-I/O state machine for the generalised protocol: public-generator DH,
/// then one keyed-tag set each way and a local intersection.
///
/// Same session contract as SingleHandshake: wire trouble aborts internally,
/// only caller misuse throws.
class MultiHandshake {
public:
    enum class Phase { Start, SentDh, SentTags, Done };
    enum class Abort { None, BadElement, BadState, TagCountMismatch };

    /// The array must already be padded to the session's membership cap m;
    /// its size fixes the tag count both sides must present.
    MultiHandshake(Role role, const GroupParams& params, PaddedArray array, Exponent x);

    static MultiHandshake create(Role role, const GroupParams& params,
                                 const std::vector<GroupSecret>& memberships,
                                 const std::set<std::string>& hidden, std::size_t m,
                                 RandomSource& rng);

    WireMessage start();
    std::vector<WireMessage> on_message(const WireMessage& msg);

    Phase phase() const { return phase_; }
    Role role() const { return role_; }
    bool done() const { return phase_ == Phase::Done; }
    std::size_t membership_cap() const { return array_.size(); }
    Abort abort_reason() const { return abort_; }
    const std::optional<HandshakeOutcome>& outcome() const { return outcome_; }
    const std::optional<SessionKey>& session_key() const { return key_; }

private:
    void abort_session(Abort reason);
    void finish(const std::vector<Tag>& received, Direction own_tag_direction);
    std::vector<Tag> own_tags(Direction dir) const;

    Role role_;
    GroupParams params_;
    PaddedArray array_;
    Exponent x_;
    Phase phase_ = Phase::Start;
    Abort abort_ = Abort::None;
    std::optional<GroupElement> shared_;
    std::optional<SessionKey> key_;
    std::optional<HandshakeOutcome> outcome_;
};

} // namespace ph
