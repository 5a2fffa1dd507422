#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include <gmp.h>

#include "ph/bytes.hpp"

namespace ph {

/// Arbitrary-precision unsigned integer, a thin RAII wrapper over GMP's mpz
/// exposing exactly the operations the group layer needs.
class Bigint {
public:
    Bigint() { mpz_init(v_); }
    explicit Bigint(unsigned long u) { mpz_init_set_ui(v_, u); }
    Bigint(const Bigint& o) { mpz_init_set(v_, o.v_); }
    Bigint(Bigint&& o) noexcept {
        mpz_init(v_);
        mpz_swap(v_, o.v_);
    }
    Bigint& operator=(const Bigint& o) {
        if (this != &o) mpz_set(v_, o.v_);
        return *this;
    }
    Bigint& operator=(Bigint&& o) noexcept {
        mpz_swap(v_, o.v_);
        return *this;
    }
    ~Bigint() { mpz_clear(v_); }

    static Bigint from_hex(std::string_view hex);
    static Bigint from_bytes_be(std::span<const std::uint8_t> bytes);

    /// Big-endian, left-zero-padded to `width` bytes. Throws if it doesn't fit.
    Bytes to_bytes_be(std::size_t width) const;
    std::string to_hex() const;

    std::size_t bit_length() const { return mpz_sizeinbase(v_, 2); }
    bool is_zero() const { return mpz_sgn(v_) == 0; }
    bool is_odd() const { return mpz_odd_p(v_) != 0; }
    std::uint64_t to_u64() const;

    int cmp(const Bigint& o) const { return mpz_cmp(v_, o.v_); }
    int cmp_ui(unsigned long u) const { return mpz_cmp_ui(v_, u); }
    bool operator==(const Bigint& o) const { return cmp(o) == 0; }
    bool operator!=(const Bigint& o) const { return cmp(o) != 0; }
    bool operator<(const Bigint& o) const { return cmp(o) < 0; }
    bool operator<=(const Bigint& o) const { return cmp(o) <= 0; }
    bool operator>(const Bigint& o) const { return cmp(o) > 0; }
    bool operator>=(const Bigint& o) const { return cmp(o) >= 0; }

    static Bigint sub_ui(const Bigint& a, unsigned long u);
    static Bigint mod(const Bigint& a, const Bigint& m);
    static Bigint divexact_ui(const Bigint& a, unsigned long u);
    static Bigint mulmod(const Bigint& a, const Bigint& b, const Bigint& m);

    /// a^e mod m via the side-channel-hardened code path
    /// (same-runtime for same-size operands). Requires odd m, e > 0.
    static Bigint powm_sec(const Bigint& a, const Bigint& e, const Bigint& m);

    /// a^e mod m, variable time. For checks on public values only.
    static Bigint powm(const Bigint& a, const Bigint& e, const Bigint& m);

    /// Miller-Rabin with `rounds` random bases (plus small trial division).
    static bool is_probably_prime(const Bigint& n, int rounds);

    mpz_srcptr raw() const { return v_; }

private:
    mpz_t v_;
};

} // namespace ph
