#pragma once

#include <optional>
#include <string>

#include "ph/bigint.hpp"
#include "ph/bytes.hpp"
#include "ph/errors.hpp"
#include "ph/rng.hpp"

namespace ph {

/// Safe-prime group arena: p = 2q+1 with p, q prime; g generates the order-q
/// quadratic-residue subgroup. All element encodings are fixed-width
/// big-endian, width = ceil(bitlen(p)/8).
struct GroupParams {
    Bigint p;
    Bigint q;
    Bigint g;
    std::size_t element_width = 0;

    /// Validates everything: p, q prime (>= 64 Miller-Rabin rounds each),
    /// p = 2q+1, g of order q, g != 1. Throws ConfigError.
    static GroupParams from_hex(std::string_view p_hex, std::string_view q_hex,
                                std::string_view g_hex);

    /// Loads `p = <hex>` / `q = <hex>` / `g = <hex>` lines ('#' comments).
    static GroupParams load_file(const std::string& path);

    /// RFC 3526 2048-bit MODP group, g = 2.
    static const GroupParams& modp2048();

    /// p=23, q=11, g=2. Unit-test scale only.
    static GroupParams test23();

    bool same_group(const GroupParams& o) const { return p == o.p && g == o.g; }
};

/// Multiplicative-group element in [1, p-1]. Subgroup membership is enforced
/// only on the wire path (validate_element); locally built values may sit
/// anywhere in the group.
struct GroupElement {
    Bigint value;

    bool operator==(const GroupElement& o) const { return value == o.value; }
    bool operator!=(const GroupElement& o) const { return value != o.value; }
};

/// Secret exponent in [1, q-1].
struct Exponent {
    Bigint value;
};

GroupElement element_from_u64(std::uint64_t v, const GroupParams& params);
Exponent exponent_from_u64(std::uint64_t v, const GroupParams& params);

/// Fixed-width big-endian encoding of an element.
Bytes encode_element(const GroupElement& e, const GroupParams& params);

/// base^e mod p. Runtime is independent of the bit pattern of e for a fixed
/// bit-length (delegates to the hardened powm path).
GroupElement mod_exp(const GroupElement& base, const Exponent& e, const GroupParams& params);

/// True iff v^q mod p == 1 (variable-time; inputs are public wire values).
bool in_subgroup(const GroupElement& e, const GroupParams& params);

/// Wire-side element acceptance: exactly element_width bytes, decodes into
/// [2, p-2], and passes the full order-q check. Throws RangeError or
/// SubgroupError.
GroupElement validate_element(std::span<const std::uint8_t> raw, const GroupParams& params);

/// Deterministic secret-to-generator map: hash the secret into the group and
/// square into the order-q subgroup, retrying on degenerate squares.
GroupElement derive_generator(std::span<const std::uint8_t> secret, const GroupParams& params);

/// Uniform over [1, q-1] by rejection sampling on bitlen(q)-bit candidates.
Exponent random_exponent(RandomSource& rng, const GroupParams& params);

/// Uniform over the non-identity subgroup elements (g^r, r in [1, q-1]).
GroupElement random_subgroup_element(RandomSource& rng, const GroupParams& params);

namespace detail {
/// One derive_generator attempt given the already-reduced hash value t:
/// returns t^2 mod p, or nullopt when the square is degenerate (0 or 1).
std::optional<GroupElement> map_to_subgroup(const Bigint& t, const GroupParams& params);

/// Hash expansion for attempt `counter`: SHA-256("ph-gen" || counter || block)
/// in counter mode, truncated to element_width bytes and reduced mod p.
Bigint expand_to_residue(std::span<const std::uint8_t> secret, const GroupParams& params,
                         std::uint8_t counter);
} // namespace detail

} // namespace ph
