#include "ph/group.hpp"

#include <fstream>
#include <sstream>

#include "ph/sha256.hpp"

namespace ph {

namespace {

constexpr int kPrimalityRounds = 64;

// RFC 3526, group 14.
constexpr const char* kModp2048P =
    "FFFFFFFFFFFFFFFFC90FDAA22168C234C4C6628B80DC1CD129024E088A67CC74"
    "020BBEA63B139B22514A08798E3404DDEF9519B3CD3A431B302B0A6DF25F1437"
    "4FE1356D6D51C245E485B576625E7EC6F44C42E9A637ED6B0BFF5CB6F406B7ED"
    "EE386BFB5A899FA5AE9F24117C4B1FE649286651ECE45B3DC2007CB8A163BF05"
    "98DA48361C55D39A69163FA8FD24CF5F83655D23DCA3AD961C62F356208552BB"
    "9ED529077096966D670C354E4ABC9804F1746C08CA18217C32905E462E36CE3B"
    "E39E772C180E86039B2783A2EC07A28FB5C55DF06F4C52C9DE2BCBF695581718"
    "3995497CEA956AE515D2261898FA051015728E5A8AACAA68FFFFFFFFFFFFFFFF";

std::string strip(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

GroupParams GroupParams::from_hex(std::string_view p_hex, std::string_view q_hex,
                                  std::string_view g_hex) {
    GroupParams params;
    try {
        params.p = Bigint::from_hex(p_hex);
        params.q = Bigint::from_hex(q_hex);
        params.g = Bigint::from_hex(g_hex);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("group parameters: ") + e.what());
    }

    if (params.p.cmp_ui(5) < 0 || !params.p.is_odd()) {
        throw ConfigError("group parameters: p must be an odd prime >= 5");
    }
    Bigint half = Bigint::divexact_ui(Bigint::sub_ui(params.p, 1), 2);
    if (half != params.q) {
        throw ConfigError("group parameters: q != (p-1)/2");
    }
    if (!Bigint::is_probably_prime(params.p, kPrimalityRounds)) {
        throw ConfigError("group parameters: p failed primality check");
    }
    if (!Bigint::is_probably_prime(params.q, kPrimalityRounds)) {
        throw ConfigError("group parameters: q failed primality check");
    }
    if (params.g.cmp_ui(2) < 0 || params.g >= Bigint::sub_ui(params.p, 1)) {
        throw ConfigError("group parameters: g out of range");
    }
    if (Bigint::powm(params.g, params.q, params.p).cmp_ui(1) != 0) {
        throw ConfigError("group parameters: g is not of order q");
    }
    params.element_width = (params.p.bit_length() + 7) / 8;
    return params;
}

GroupParams GroupParams::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) {
        throw ConfigError("group file: cannot open " + path);
    }
    std::string p_hex, q_hex, g_hex;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = strip(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("group file: malformed line: " + line);
        }
        std::string key = strip(line.substr(0, eq));
        std::string val = strip(line.substr(eq + 1));
        if (key == "p") p_hex = val;
        else if (key == "q") q_hex = val;
        else if (key == "g") g_hex = val;
        else throw ConfigError("group file: unknown key: " + key);
    }
    if (p_hex.empty() || q_hex.empty() || g_hex.empty()) {
        throw ConfigError("group file: p, q, g all required");
    }
    return from_hex(p_hex, q_hex, g_hex);
}

const GroupParams& GroupParams::modp2048() {
    static const GroupParams params = [] {
        Bigint p = Bigint::from_hex(kModp2048P);
        Bigint q = Bigint::divexact_ui(Bigint::sub_ui(p, 1), 2);
        return GroupParams::from_hex(p.to_hex(), q.to_hex(), "2");
    }();
    return params;
}

GroupParams GroupParams::test23() {
    return GroupParams::from_hex("17", "b", "2"); // p=23, q=11, g=2
}

static Bigint bigint_from_u64(std::uint64_t v) {
    Bytes be;
    for (int i = 7; i >= 0; --i) be.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    return Bigint::from_bytes_be(be);
}

GroupElement element_from_u64(std::uint64_t v, const GroupParams& params) {
    Bigint b = bigint_from_u64(v);
    if (b.cmp_ui(1) < 0 || b >= params.p) {
        throw std::invalid_argument("element_from_u64: outside [1, p-1]");
    }
    return GroupElement{std::move(b)};
}

Exponent exponent_from_u64(std::uint64_t v, const GroupParams& params) {
    Bigint b = bigint_from_u64(v);
    if (b.cmp_ui(1) < 0 || b >= params.q) {
        throw std::invalid_argument("exponent_from_u64: outside [1, q-1]");
    }
    return Exponent{std::move(b)};
}

Bytes encode_element(const GroupElement& e, const GroupParams& params) {
    return e.value.to_bytes_be(params.element_width);
}

GroupElement mod_exp(const GroupElement& base, const Exponent& e, const GroupParams& params) {
    return GroupElement{Bigint::powm_sec(base.value, e.value, params.p)};
}

bool in_subgroup(const GroupElement& e, const GroupParams& params) {
    return Bigint::powm(e.value, params.q, params.p).cmp_ui(1) == 0;
}

GroupElement validate_element(std::span<const std::uint8_t> raw, const GroupParams& params) {
    if (raw.size() != params.element_width) {
        throw RangeError("element: wrong encoding width");
    }
    Bigint v = Bigint::from_bytes_be(raw);
    if (v.cmp_ui(2) < 0 || v > Bigint::sub_ui(params.p, 2)) {
        throw RangeError("element: value outside [2, p-2]");
    }
    GroupElement e{std::move(v)};
    if (!in_subgroup(e, params)) {
        throw SubgroupError("element: not in the order-q subgroup");
    }
    return e;
}

namespace detail {

Bigint expand_to_residue(std::span<const std::uint8_t> secret, const GroupParams& params,
                         std::uint8_t counter) {
    Bytes stream;
    stream.reserve(((params.element_width + 31) / 32) * 32);
    for (std::uint32_t block = 0; stream.size() < params.element_width; ++block) {
        Bytes block_id;
        append_u32be(block_id, block);
        Digest32 d = Sha256()
                         .update("ph-gen")
                         .update(std::span<const std::uint8_t>(&counter, 1))
                         .update(block_id)
                         .update(secret)
                         .finish();
        append(stream, d);
    }
    stream.resize(params.element_width);
    return Bigint::mod(Bigint::from_bytes_be(stream), params.p);
}

std::optional<GroupElement> map_to_subgroup(const Bigint& t, const GroupParams& params) {
    Bigint sq = Bigint::mulmod(t, t, params.p);
    if (sq.cmp_ui(1) <= 0) return std::nullopt;
    return GroupElement{std::move(sq)};
}

} // namespace detail

GroupElement derive_generator(std::span<const std::uint8_t> secret, const GroupParams& params) {
    for (unsigned counter = 0; counter < 255; ++counter) {
        Bigint t = detail::expand_to_residue(secret, params, static_cast<std::uint8_t>(counter));
        if (auto e = detail::map_to_subgroup(t, params)) {
            return *std::move(e);
        }
    }
    // 255 degenerate squares in a row means the hash is broken.
    throw Error("derive_generator: retry budget exhausted");
}

Exponent random_exponent(RandomSource& rng, const GroupParams& params) {
    std::size_t bits = params.q.bit_length();
    std::size_t nbytes = (bits + 7) / 8;
    std::uint8_t top_mask =
        bits % 8 == 0 ? 0xff : static_cast<std::uint8_t>((1u << (bits % 8)) - 1);
    for (;;) {
        Bytes buf = rng.bytes(nbytes);
        buf[0] &= top_mask;
        Bigint v = Bigint::from_bytes_be(buf);
        if (v.cmp_ui(1) >= 0 && v < params.q) {
            return Exponent{std::move(v)};
        }
    }
}

GroupElement random_subgroup_element(RandomSource& rng, const GroupParams& params) {
    Exponent r = random_exponent(rng, params);
    return mod_exp(GroupElement{params.g}, r, params);
}

} // namespace ph
