#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ph/group.hpp"
#include "ph/outcome.hpp"
#include "ph/wire.hpp"

namespace ph {

enum class Dir { IToR, RToI };

inline const char* to_string(Dir d) { return d == Dir::IToR ? "I->R" : "R->I"; }

/// One observed wire message, as bytes: exactly what an eavesdropper sees.
struct TranscriptEntry {
    Dir dir;
    Bytes bytes;

    bool operator==(const TranscriptEntry& o) const = default;
};

using Transcript = std::vector<TranscriptEntry>;

/// Well-formedness check: the message sequence, framing, element validity and
/// tag-set arithmetic of a complete honest-shaped run. Carries no notion of
/// who produced the bytes, so unilateral forgeries that follow the format
/// pass. On failure `why` (if given) names the first offence.
bool verify_transcript(const Transcript& t, Protocol protocol, const GroupParams& params,
                       std::optional<std::size_t> expected_m = std::nullopt,
                       std::string* why = nullptr);

/// Traffic accounting. Group elements ride in DH messages, keyed tags in
/// tag-set messages; undecodable entries count zero.
std::size_t count_group_elements(const Transcript& t);
std::size_t count_tags(const Transcript& t);

} // namespace ph
