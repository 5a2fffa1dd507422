#include "ph/kdf.hpp"

namespace ph {

Digest32 role_hash(HashLabel label, const GroupElement& value, const GroupParams& params) {
    return Sha256()
        .update(label_string(label))
        .update(encode_element(value, params))
        .finish();
}

SessionKey session_key_from(HashLabel label, const GroupElement& shared,
                            const GroupParams& params) {
    SessionKey k;
    k.key = role_hash(label, shared, params);
    return k;
}

Tag keyed_tag(const SessionKey& k, Direction dir, std::span<const std::uint8_t> secret) {
    Bytes msg;
    msg.reserve(1 + secret.size());
    msg.push_back(static_cast<std::uint8_t>(dir));
    append(msg, secret);
    Tag t;
    t.bytes = hmac_sha256(k.key, msg);
    return t;
}

} // namespace ph
