#pragma once

#include <set>
#include <string>

#include "ph/kdf.hpp"

namespace ph {

enum class Role { Initiator, Responder };
enum class Protocol { Single, Multi };

/// The output set plus the session key. The key is always present at DONE;
/// on mismatch or abort it is garbage shared with nobody.
struct HandshakeOutcome {
    std::set<std::string> matched;
    SessionKey session_key;
};

} // namespace ph
