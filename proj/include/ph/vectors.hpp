#pragma once

#include <map>
#include <string>

#include "ph/sim.hpp"

namespace ph {

/// Configuration of a seeded canonical run: both sides hold the same
/// credential file, so every real group matches.
struct VectorConfig {
    Protocol protocol = Protocol::Single;
    GroupParams params;
    std::vector<GroupSecret> creds;
    std::set<std::string> hidden;
    std::size_t m = 8;
    Bytes seed;
};

/// Short binding of the group parameters, so a vector file refuses to be
/// replayed against the wrong group.
std::string group_fingerprint(const GroupParams& params);

/// Deterministic transcript plus all intermediate values for the seed, in a
/// line-oriented text format (see README).
std::string emit_vectors(const VectorConfig& cfg);

void write_vectors_file(const std::string& path, const VectorConfig& cfg);

/// Parsed vector file: scalar fields by key, plus the transcript.
struct VectorFile {
    std::map<std::string, std::string> fields; // protocol, seed, x, y, key, ...
    Transcript transcript;
    std::set<std::string> outcome_i;
    std::set<std::string> outcome_r;
};

VectorFile parse_vectors(const std::string& content);

} // namespace ph
