#include "ph/vectors.hpp"

#include <fstream>
#include <sstream>

namespace ph {

namespace {

std::string join_ids(const std::set<std::string>& ids) {
    if (ids.empty()) return "-";
    std::string out;
    for (const std::string& id : ids) {
        if (!out.empty()) out.push_back(',');
        out += id;
    }
    return out;
}

std::set<std::string> split_ids(const std::string& s) {
    std::set<std::string> out;
    if (s == "-") return out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t comma = s.find(',', pos);
        if (comma == std::string::npos) {
            out.insert(s.substr(pos));
            break;
        }
        out.insert(s.substr(pos, comma - pos));
        pos = comma + 1;
    }
    return out;
}

} // namespace

std::string group_fingerprint(const GroupParams& params) {
    Bytes blob = params.p.to_bytes_be(params.element_width);
    append(blob, params.q.to_bytes_be(params.element_width));
    append(blob, params.g.to_bytes_be(params.element_width));
    Digest32 d = Sha256().update("ph-group").update(blob).finish();
    return to_hex(std::span<const std::uint8_t>(d.data(), 8));
}

std::string emit_vectors(const VectorConfig& cfg) {
    NodeConfig node{cfg.creds, cfg.hidden, cfg.m, std::nullopt};
    Drbg rng_i = role_stream(cfg.seed, Role::Initiator);
    Drbg rng_r = role_stream(cfg.seed, Role::Responder);

    std::ostringstream out;
    out << "# private handshake test vectors\n";
    out << "format 1\n";
    out << "protocol " << (cfg.protocol == Protocol::Single ? "single" : "multi") << "\n";
    out << "groupfp " << group_fingerprint(cfg.params) << "\n";
    out << "seed " << to_hex(cfg.seed) << "\n";

    Transcript transcript;
    auto push = [&transcript](Dir dir, const WireMessage& msg) {
        transcript.push_back({dir, encode(msg)});
    };

    std::set<std::string> outcome_i, outcome_r;

    if (cfg.protocol == Protocol::Single) {
        SinglePieces pi = draw_single_pieces(node, cfg.params, rng_i);
        SinglePieces pr = draw_single_pieces(node, cfg.params, rng_r);
        out << "gen-i " << pi.generator.value.to_hex() << "\n";
        out << "gen-r " << pr.generator.value.to_hex() << "\n";
        out << "x " << pi.x.value.to_hex() << "\n";
        out << "y " << pr.x.value.to_hex() << "\n";

        SingleHandshake alice(Role::Initiator, cfg.params, pi.generator, pi.group_id, pi.x);
        SingleHandshake bob(Role::Responder, cfg.params, pr.generator, pr.group_id, pr.x);

        WireMessage m0 = alice.start();
        push(Dir::IToR, m0);
        WireMessage m1 = bob.on_message(m0).at(0);
        push(Dir::RToI, m1);
        WireMessage m2 = alice.on_message(m1).at(0);
        push(Dir::IToR, m2);
        WireMessage m3 = bob.on_message(m2).at(0);
        push(Dir::RToI, m3);
        alice.on_message(m3);

        GroupElement shared = validate_element(m1.payload, cfg.params);
        shared = mod_exp(shared, pi.x, cfg.params);
        out << "shared " << shared.value.to_hex() << "\n";
        out << "key " << to_hex(alice.outcome()->session_key.key) << "\n";
        out << "confirm-i " << to_hex(m2.payload) << "\n";
        out << "confirm-r " << to_hex(m3.payload) << "\n";
        outcome_i = alice.outcome()->matched;
        outcome_r = bob.outcome()->matched;
    } else {
        MultiPieces pi = draw_multi_pieces(node, cfg.params, rng_i);
        MultiPieces pr = draw_multi_pieces(node, cfg.params, rng_r);
        out << "m " << cfg.m << "\n";
        out << "x " << pi.x.value.to_hex() << "\n";
        out << "y " << pr.x.value.to_hex() << "\n";

        MultiHandshake alice(Role::Initiator, cfg.params, pi.array, pi.x);
        MultiHandshake bob(Role::Responder, cfg.params, pr.array, pr.x);

        WireMessage m0 = alice.start();
        push(Dir::IToR, m0);
        WireMessage m1 = bob.on_message(m0).at(0);
        push(Dir::RToI, m1);
        WireMessage m2 = alice.on_message(m1).at(0);
        push(Dir::IToR, m2);
        WireMessage m3 = bob.on_message(m2).at(0);
        push(Dir::RToI, m3);
        alice.on_message(m3);

        GroupElement shared = validate_element(m1.payload, cfg.params);
        shared = mod_exp(shared, pi.x, cfg.params);
        out << "shared " << shared.value.to_hex() << "\n";
        out << "key " << to_hex(alice.outcome()->session_key.key) << "\n";
        std::vector<Tag> tags_i = parse_tagset_payload(m2);
        std::vector<Tag> tags_r = parse_tagset_payload(m3);
        for (std::size_t i = 0; i < tags_i.size(); ++i) {
            out << "tag-i " << i << " " << to_hex(tags_i[i].bytes) << "\n";
        }
        for (std::size_t i = 0; i < tags_r.size(); ++i) {
            out << "tag-r " << i << " " << to_hex(tags_r[i].bytes) << "\n";
        }
        outcome_i = alice.outcome()->matched;
        outcome_r = bob.outcome()->matched;
    }

    for (std::size_t i = 0; i < transcript.size(); ++i) {
        out << "msg " << i << " " << to_string(transcript[i].dir) << " "
            << to_hex(transcript[i].bytes) << "\n";
    }
    out << "outcome-i " << join_ids(outcome_i) << "\n";
    out << "outcome-r " << join_ids(outcome_r) << "\n";
    return out.str();
}

void write_vectors_file(const std::string& path, const VectorConfig& cfg) {
    std::ofstream out(path, std::ios::trunc | std::ios::binary);
    if (!out.good()) {
        throw ConfigError("vectors: cannot write " + path);
    }
    out << emit_vectors(cfg);
}

VectorFile parse_vectors(const std::string& content) {
    VectorFile vf;
    std::istringstream in(content);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "msg") {
            std::size_t index;
            std::string dir_s, hex_s;
            ls >> index >> dir_s >> hex_s;
            if (index != vf.transcript.size()) {
                throw ConfigError("vectors: msg lines out of order");
            }
            Dir dir = dir_s == "I->R" ? Dir::IToR : Dir::RToI;
            vf.transcript.push_back({dir, from_hex(hex_s)});
        } else if (key == "outcome-i") {
            std::string ids;
            ls >> ids;
            vf.outcome_i = split_ids(ids);
        } else if (key == "outcome-r") {
            std::string ids;
            ls >> ids;
            vf.outcome_r = split_ids(ids);
        } else {
            std::string rest;
            std::getline(ls, rest);
            auto b = rest.find_first_not_of(' ');
            vf.fields[key] = b == std::string::npos ? "" : rest.substr(b);
        }
    }
    return vf;
}

} // namespace ph
