#pragma once

#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ph/credentials.hpp"
#include "ph/handshake_multi.hpp"
#include "ph/handshake_single.hpp"
#include "ph/stats.hpp"
#include "ph/transcript.hpp"

namespace ph {

/// Per-node session configuration (credentials plus protocol knobs).
struct NodeConfig {
    std::vector<GroupSecret> creds;
    std::set<std::string> hidden;
    std::size_t m = 8;
    /// Master seed shared by a seeded session; each role forks its own
    /// stream ("I" / "R"). Absent: the harness rng seeds the node.
    std::optional<Bytes> seed;
};

/// Values a node draws before its machine exists. Factored out so the
/// simulator, the TCP peer and the vector writer assemble sessions from the
/// same stream in the same order.
struct SinglePieces {
    GroupElement generator;
    std::optional<std::string> group_id;
    Exponent x;
};
struct MultiPieces {
    PaddedArray array;
    Exponent x;
};

SinglePieces draw_single_pieces(const NodeConfig& node, const GroupParams& params,
                                RandomSource& rng);
MultiPieces draw_multi_pieces(const NodeConfig& node, const GroupParams& params,
                              RandomSource& rng);

SingleHandshake build_single_machine(const NodeConfig& node, Role role,
                                     const GroupParams& params, RandomSource& rng);
MultiHandshake build_multi_machine(const NodeConfig& node, Role role, const GroupParams& params,
                                   RandomSource& rng);

/// Derives the per-role random stream of a seeded session.
Drbg role_stream(std::span<const std::uint8_t> master_seed, Role role);

enum class RuleKind { Deliver, Drop, Modify, Inject, Replay, Reorder };

/// One network action. Rules are consumed in order, one per in-flight
/// message the network processes; an exhausted script delivers faithfully.
struct ScriptRule {
    RuleKind kind = RuleKind::Deliver;
    std::function<Bytes(const Bytes&)> mutate;  // Modify
    Bytes inject_bytes;                         // Inject
    Dir inject_dir = Dir::IToR;                 // Inject
    std::size_t replay_index = 0;               // Replay: audit-log index

    static ScriptRule deliver() { return {}; }
    static ScriptRule drop() { return {RuleKind::Drop, {}, {}, Dir::IToR, 0}; }
    static ScriptRule modify(std::function<Bytes(const Bytes&)> f) {
        return {RuleKind::Modify, std::move(f), {}, Dir::IToR, 0};
    }
    static ScriptRule inject(Bytes bytes, Dir dir) {
        return {RuleKind::Inject, {}, std::move(bytes), dir, 0};
    }
    static ScriptRule replay(std::size_t index) {
        return {RuleKind::Replay, {}, {}, Dir::IToR, index};
    }
    static ScriptRule reorder() { return {RuleKind::Reorder, {}, {}, Dir::IToR, 0}; }
};

using AdversaryScript = std::vector<ScriptRule>;

enum class AuditAction { Delivered, Dropped, Modified, Injected, Replayed, Reordered };

/// Append-only record: every byte that reached a machine is attributable to
/// either an unaltered honest send or a specific script rule.
struct AuditEntry {
    Dir dir;
    AuditAction action;
    Bytes original;                       // honest bytes (empty for injections)
    Bytes delivered;                      // bytes handed over (empty when dropped/held)
    std::optional<std::size_t> rule_index;
};

struct SessionResult {
    HandshakeOutcome outcome_i;
    HandshakeOutcome outcome_r;
    bool completed_i = false; // reached Done without an internal abort
    bool completed_r = false;
    Transcript transcript;    // delivered wire bytes, in delivery order
    std::vector<AuditEntry> audit;
    std::size_t elements_sent = 0; // honest traffic accounting
    std::size_t tags_sent = 0;
};

/// In-memory Dolev-Yao network: drives both machines to Done or starvation
/// under the script. Aborted and starved sides surface empty outcomes.
SessionResult run_session(const GroupParams& params, Protocol protocol, const NodeConfig& a,
                          const NodeConfig& b, const AdversaryScript& script,
                          RandomSource& rng);

/// Empirical distinguishing-game verdict. `control` marks the sensitivity
/// variant whose advantage is expected to clear the threshold.
struct GameResult {
    std::string game;
    Protocol protocol;
    bool control = false;
    std::size_t trials = 0;
    std::size_t successes = 0;
    double advantage = 0.0;
    double threshold = 0.0; // 3-sigma binomial band around 1/2

    bool pass() const { return control ? advantage > threshold : advantage < threshold; }
    /// `game,protocol,trials,successes,advantage,threshold,pass`
    std::string record() const;
};

/// Corrupted responder outside G faces a real member of G or a simulator
/// emitting uniform subgroup elements and random tags. The control variant
/// hands the adversary a credential for G, which makes the test real.
GameResult detection_game(Protocol protocol, std::size_t trials, const GroupParams& params,
                          RandomSource& rng, bool control = false);

/// Passive adversary holding the group secret watches two honest nodes and
/// guesses the initiator's membership. The control variant lets the
/// adversary stage an in-group man-in-the-middle instead of eavesdropping.
GameResult eavesdropper_game(Protocol protocol, std::size_t trials, const GroupParams& params,
                             RandomSource& rng, bool control = false);

/// A participating in-group adversary runs against one of two nodes with
/// identical memberships and guesses which. The control variant gives the
/// nodes distinct memberships.
GameResult linkability_game(Protocol protocol, std::size_t trials, const GroupParams& params,
                            RandomSource& rng, bool control = false);

/// Unilateral construction of a full protocol run by a member: byte-format
/// identical to, and distributed like, an honest two-party run.
Transcript forge_transcript(const std::vector<GroupSecret>& member_credentials,
                            Protocol protocol, const GroupParams& params, RandomSource& rng,
                            std::size_t m = 8);

} // namespace ph
