#pragma once

#include <optional>
#include <vector>

#include "ph/credentials.hpp"
#include "ph/group.hpp"
#include "ph/outcome.hpp"
#include "ph/wire.hpp"

namespace ph {

/// Sans-I/O state machine for the single-membership protocol.
///
/// One machine per session. The caller moves bytes; the machine never
/// performs I/O. Wire-level trouble (bad elements, out-of-order messages)
/// aborts the session internally: the machine reaches Done with an empty
/// match set and ignores everything after that. Only caller misuse throws.
class SingleHandshake {
public:
    enum class Phase { Start, SentDh, SentConfirm, Done };
    enum class Abort { None, BadElement, BadState };

    /// Assembled state: generator already mapped into the subgroup, exponent
    /// already drawn. `group_id` empty means running without a membership.
    SingleHandshake(Role role, const GroupParams& params, GroupElement generator,
                    std::optional<std::string> group_id, Exponent x);

    static SingleHandshake for_member(Role role, const GroupParams& params,
                                      const GroupSecret& secret, RandomSource& rng);

    /// "random if none": a fresh random subgroup generator per session keeps
    /// non-members indistinguishable from members of unknown groups.
    static SingleHandshake outsider(Role role, const GroupParams& params, RandomSource& rng);

    /// Initiator only, phase Start. Emits the first DH message.
    /// Throws StateError on misuse.
    WireMessage start();

    /// Feed one received message; returns messages to send (possibly none).
    std::vector<WireMessage> on_message(const WireMessage& msg);

    Phase phase() const { return phase_; }
    Role role() const { return role_; }
    bool done() const { return phase_ == Phase::Done; }
    Abort abort_reason() const { return abort_; }
    const std::optional<HandshakeOutcome>& outcome() const { return outcome_; }

private:
    void abort_session(Abort reason);
    void finish(bool matched);

    Role role_;
    GroupParams params_;
    GroupElement generator_;
    std::optional<std::string> group_id_;
    Exponent x_;
    Phase phase_ = Phase::Start;
    Abort abort_ = Abort::None;
    std::optional<GroupElement> shared_;
    std::optional<HandshakeOutcome> outcome_;
};

} // namespace ph
