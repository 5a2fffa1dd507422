#include "ph/bigint.hpp"

#include <cstring>
#include <stdexcept>

namespace ph {

Bigint Bigint::from_hex(std::string_view hex) {
    std::string clean;
    clean.reserve(hex.size());
    for (char c : hex) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
        clean.push_back(c);
    }
    if (clean.empty()) throw std::invalid_argument("Bigint::from_hex: empty");
    Bigint out;
    if (mpz_set_str(out.v_, clean.c_str(), 16) != 0) {
        throw std::invalid_argument("Bigint::from_hex: invalid hex");
    }
    if (mpz_sgn(out.v_) < 0) {
        throw std::invalid_argument("Bigint::from_hex: negative");
    }
    return out;
}

Bigint Bigint::from_bytes_be(std::span<const std::uint8_t> bytes) {
    Bigint out;
    if (!bytes.empty()) {
        mpz_import(out.v_, bytes.size(), 1, 1, 1, 0, bytes.data());
    }
    return out;
}

Bytes Bigint::to_bytes_be(std::size_t width) const {
    std::size_t needed = is_zero() ? 0 : (mpz_sizeinbase(v_, 2) + 7) / 8;
    if (needed > width) {
        throw std::invalid_argument("Bigint::to_bytes_be: value wider than field");
    }
    Bytes out(width, 0);
    if (needed > 0) {
        std::size_t written = 0;
        mpz_export(out.data() + (width - needed), &written, 1, 1, 1, 0, v_);
    }
    return out;
}

std::string Bigint::to_hex() const {
    char* s = mpz_get_str(nullptr, 16, v_);
    std::string out(s);
    void (*freefn)(void*, std::size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefn);
    freefn(s, std::strlen(s) + 1);
    return out;
}

std::uint64_t Bigint::to_u64() const {
    if (mpz_sizeinbase(v_, 2) > 64) {
        throw std::overflow_error("Bigint::to_u64: too large");
    }
    std::uint64_t lo = mpz_get_ui(v_);
    if (mp_bits_per_limb >= 64) return lo;
    Bigint hi;
    mpz_fdiv_q_2exp(hi.v_, v_, 32);
    return (static_cast<std::uint64_t>(mpz_get_ui(hi.v_)) << 32) | (lo & 0xffffffffULL);
}

Bigint Bigint::sub_ui(const Bigint& a, unsigned long u) {
    if (mpz_cmp_ui(a.v_, u) < 0) {
        throw std::invalid_argument("Bigint::sub_ui: would go negative");
    }
    Bigint out;
    mpz_sub_ui(out.v_, a.v_, u);
    return out;
}

Bigint Bigint::mod(const Bigint& a, const Bigint& m) {
    Bigint out;
    mpz_mod(out.v_, a.v_, m.v_);
    return out;
}

Bigint Bigint::divexact_ui(const Bigint& a, unsigned long u) {
    Bigint out;
    mpz_divexact_ui(out.v_, a.v_, u);
    return out;
}

Bigint Bigint::mulmod(const Bigint& a, const Bigint& b, const Bigint& m) {
    Bigint out;
    mpz_mul(out.v_, a.v_, b.v_);
    mpz_mod(out.v_, out.v_, m.v_);
    return out;
}

Bigint Bigint::powm_sec(const Bigint& a, const Bigint& e, const Bigint& m) {
    if (!m.is_odd() || mpz_sgn(e.v_) <= 0) {
        throw std::invalid_argument("Bigint::powm_sec: needs odd modulus, e > 0");
    }
    Bigint out;
    mpz_powm_sec(out.v_, a.v_, e.v_, m.v_);
    return out;
}

Bigint Bigint::powm(const Bigint& a, const Bigint& e, const Bigint& m) {
    Bigint out;
    mpz_powm(out.v_, a.v_, e.v_, m.v_);
    return out;
}

bool Bigint::is_probably_prime(const Bigint& n, int rounds) {
    if (mpz_cmp_ui(n.v_, 2) < 0) return false;
    if (mpz_cmp_ui(n.v_, 3) <= 0) return true;
    if (mpz_even_p(n.v_)) return false;

    static const unsigned long kSmallPrimes[] = {3,  5,  7,  11, 13, 17, 19, 23,
                                                 29, 31, 37, 41, 43, 47, 53, 59};
    for (unsigned long sp : kSmallPrimes) {
        if (mpz_cmp_ui(n.v_, sp) == 0) return true;
        if (mpz_divisible_ui_p(n.v_, sp)) return false;
    }

    // n - 1 = d * 2^r with d odd
    Bigint n_minus_1 = sub_ui(n, 1);
    Bigint d = n_minus_1;
    unsigned long r = 0;
    while (!d.is_odd()) {
        mpz_fdiv_q_2exp(d.v_, d.v_, 1);
        ++r;
    }

    // Deterministic base stream keeps the check reproducible.
    gmp_randstate_t rs;
    gmp_randinit_mt(rs);
    gmp_randseed_ui(rs, 0x70682d6d72ul); // "ph-mr"
    Bigint n_minus_3 = sub_ui(n, 3);

    bool prime = true;
    for (int i = 0; i < rounds && prime; ++i) {
        Bigint a;
        mpz_urandomm(a.v_, rs, n_minus_3.v_); // [0, n-4]
        mpz_add_ui(a.v_, a.v_, 2);            // [2, n-2]
        Bigint x = powm(a, d, n);
        if (x.cmp_ui(1) == 0 || x == n_minus_1) continue;
        bool witness = true;
        for (unsigned long j = 0; j + 1 < r; ++j) {
            x = mulmod(x, x, n);
            if (x == n_minus_1) {
                witness = false;
                break;
            }
        }
        if (witness) prime = false;
    }
    gmp_randclear(rs);
    return prime;
}

} // namespace ph
