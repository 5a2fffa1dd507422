#include "ph/sim.hpp"

namespace ph {

namespace {

const GroupSecret* first_usable(const NodeConfig& node) {
    for (const GroupSecret& s : node.creds) {
        if (!node.hidden.count(s.id)) return &s;
    }
    return nullptr;
}

} // namespace

Drbg role_stream(std::span<const std::uint8_t> master_seed, Role role) {
    return Drbg(master_seed).fork(role == Role::Initiator ? "I" : "R");
}

SinglePieces draw_single_pieces(const NodeConfig& node, const GroupParams& params,
                                RandomSource& rng) {
    // The single protocol speaks for one group; with several usable
    // credentials the first one in file order runs.
    SinglePieces pieces{GroupElement{}, std::nullopt, Exponent{}};
    if (const GroupSecret* s = first_usable(node)) {
        pieces.generator = derive_generator(s->secret, params);
        pieces.group_id = s->id;
    } else {
        std::array<std::uint8_t, 32> fresh;
        rng.fill(fresh);
        pieces.generator = derive_generator(fresh, params);
    }
    pieces.x = random_exponent(rng, params);
    return pieces;
}

MultiPieces draw_multi_pieces(const NodeConfig& node, const GroupParams& params,
                              RandomSource& rng) {
    PaddedArray array = build_padded_array(node.creds, node.hidden, node.m, rng);
    Exponent x = random_exponent(rng, params);
    return MultiPieces{std::move(array), std::move(x)};
}

SingleHandshake build_single_machine(const NodeConfig& node, Role role,
                                     const GroupParams& params, RandomSource& rng) {
    SinglePieces p = draw_single_pieces(node, params, rng);
    return SingleHandshake(role, params, std::move(p.generator), std::move(p.group_id),
                           std::move(p.x));
}

MultiHandshake build_multi_machine(const NodeConfig& node, Role role, const GroupParams& params,
                                   RandomSource& rng) {
    MultiPieces p = draw_multi_pieces(node, params, rng);
    return MultiHandshake(role, params, std::move(p.array), std::move(p.x));
}

namespace {

/// Uniform facade over the two machine types so the network loop is written
/// once.
struct Endpoint {
    std::optional<SingleHandshake> single;
    std::optional<MultiHandshake> multi;
    bool format_failed = false;

    bool done() const {
        if (format_failed) return true;
        return single ? single->done() : multi->done();
    }
    bool completed() const {
        if (format_failed) return false;
        if (single) {
            return single->done() && single->abort_reason() == SingleHandshake::Abort::None;
        }
        return multi->done() && multi->abort_reason() == MultiHandshake::Abort::None;
    }
    HandshakeOutcome outcome() const {
        const std::optional<HandshakeOutcome>& o =
            single ? single->outcome() : multi->outcome();
        if (!format_failed && o) return *o;
        return HandshakeOutcome{}; // starved or transport-failed: empty set, zero key
    }
    std::vector<WireMessage> feed(const WireMessage& msg) {
        return single ? single->on_message(msg) : multi->on_message(msg);
    }
};

struct Flight {
    Dir dir;
    Bytes bytes;
};

} // namespace

SessionResult run_session(const GroupParams& params, Protocol protocol, const NodeConfig& a,
                          const NodeConfig& b, const AdversaryScript& script,
                          RandomSource& rng) {
    auto node_stream = [&](const NodeConfig& node, Role role) {
        if (node.seed) return role_stream(*node.seed, role);
        Bytes fresh = rng.bytes(32);
        return Drbg(fresh);
    };
    Drbg rng_a = node_stream(a, Role::Initiator);
    Drbg rng_b = node_stream(b, Role::Responder);

    Endpoint ia, rb;
    if (protocol == Protocol::Single) {
        ia.single = build_single_machine(a, Role::Initiator, params, rng_a);
        rb.single = build_single_machine(b, Role::Responder, params, rng_b);
    } else {
        ia.multi = build_multi_machine(a, Role::Initiator, params, rng_a);
        rb.multi = build_multi_machine(b, Role::Responder, params, rng_b);
    }

    SessionResult result;
    std::deque<Flight> queue;

    auto account = [&result](const Bytes& bytes) {
        try {
            WireMessage msg = decode(bytes);
            if (msg.type == MsgType::DhSingle || msg.type == MsgType::DhMulti) {
                result.elements_sent += 1;
            } else if (msg.type == MsgType::TagSetInitiator ||
                       msg.type == MsgType::TagSetResponder) {
                result.tags_sent += parse_tagset_payload(msg).size();
            }
        } catch (const FormatError&) {
        }
    };

    auto send = [&](Dir dir, const WireMessage& msg) {
        Bytes bytes = encode(msg);
        account(bytes);
        queue.push_back(Flight{dir, std::move(bytes)});
    };

    if (protocol == Protocol::Single) {
        send(Dir::IToR, ia.single->start());
    } else {
        send(Dir::IToR, ia.multi->start());
    }

    auto deliver = [&](Dir dir, const Bytes& bytes) {
        Endpoint& dst = dir == Dir::IToR ? rb : ia;
        result.transcript.push_back(TranscriptEntry{dir, bytes});
        if (dst.format_failed || dst.done()) return;
        WireMessage msg;
        try {
            msg = decode(bytes);
        } catch (const FormatError&) {
            dst.format_failed = true; // transport would tear the session down
            return;
        }
        Dir reply_dir = dir == Dir::IToR ? Dir::RToI : Dir::IToR;
        for (const WireMessage& reply : dst.feed(msg)) {
            send(reply_dir, reply);
        }
    };

    std::size_t next_rule = 0;
    std::size_t steps = 0;
    const std::size_t step_budget = 64 + 4 * script.size();
    while (!queue.empty() && steps++ < step_budget) {
        Flight flight = std::move(queue.front());
        queue.pop_front();

        const ScriptRule* rule = next_rule < script.size() ? &script[next_rule] : nullptr;
        std::size_t rule_idx = next_rule;
        if (rule) ++next_rule;

        switch (rule ? rule->kind : RuleKind::Deliver) {
            case RuleKind::Deliver:
                result.audit.push_back({flight.dir, AuditAction::Delivered, flight.bytes,
                                        flight.bytes,
                                        rule ? std::optional<std::size_t>(rule_idx)
                                             : std::nullopt});
                deliver(flight.dir, flight.bytes);
                break;
            case RuleKind::Drop:
                result.audit.push_back(
                    {flight.dir, AuditAction::Dropped, flight.bytes, {}, rule_idx});
                break;
            case RuleKind::Modify: {
                Bytes mutated = rule->mutate ? rule->mutate(flight.bytes) : flight.bytes;
                result.audit.push_back(
                    {flight.dir, AuditAction::Modified, flight.bytes, mutated, rule_idx});
                deliver(flight.dir, mutated);
                break;
            }
            case RuleKind::Inject:
                result.audit.push_back({rule->inject_dir, AuditAction::Injected, {},
                                        rule->inject_bytes, rule_idx});
                deliver(rule->inject_dir, rule->inject_bytes);
                queue.push_front(std::move(flight)); // original still in flight
                break;
            case RuleKind::Replay: {
                if (rule->replay_index < result.audit.size()) {
                    // copy out: the push_back below may reallocate the log
                    Dir replay_dir = result.audit[rule->replay_index].dir;
                    Bytes replay_bytes = result.audit[rule->replay_index].delivered;
                    if (!replay_bytes.empty()) {
                        result.audit.push_back({replay_dir, AuditAction::Replayed, replay_bytes,
                                                replay_bytes, rule_idx});
                        deliver(replay_dir, replay_bytes);
                    }
                }
                queue.push_front(std::move(flight));
                break;
            }
            case RuleKind::Reorder:
                if (queue.empty()) {
                    result.audit.push_back({flight.dir, AuditAction::Delivered, flight.bytes,
                                            flight.bytes, rule_idx});
                    deliver(flight.dir, flight.bytes);
                } else {
                    result.audit.push_back(
                        {flight.dir, AuditAction::Reordered, flight.bytes, {}, rule_idx});
                    Flight ahead = std::move(queue.front());
                    queue.pop_front();
                    queue.push_front(std::move(flight));
                    queue.push_front(std::move(ahead));
                }
                break;
        }
    }

    result.outcome_i = ia.outcome();
    result.outcome_r = rb.outcome();
    result.completed_i = ia.completed();
    result.completed_r = rb.completed();
    return result;
}

} // namespace ph
