#include "ph/rng.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

#if defined(__unix__) || defined(__APPLE__)
#include <unistd.h>
#endif

namespace ph {

std::uint8_t RandomSource::byte() {
    std::uint8_t b;
    fill(std::span<std::uint8_t>(&b, 1));
    return b;
}

Bytes RandomSource::bytes(std::size_t n) {
    Bytes out(n);
    fill(out);
    return out;
}

std::uint64_t RandomSource::below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("RandomSource::below: zero bound");
    if (bound == 1) return 0;
    int bits = 64 - std::countl_zero(bound - 1);
    std::size_t nbytes = (static_cast<std::size_t>(bits) + 7) / 8;
    std::uint8_t top_mask = bits % 8 == 0 ? 0xff : static_cast<std::uint8_t>((1u << (bits % 8)) - 1);
    for (;;) {
        std::uint8_t buf[8] = {};
        fill(std::span<std::uint8_t>(buf, nbytes));
        buf[0] &= top_mask;
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < nbytes; ++i) {
            v = (v << 8) | buf[i];
        }
        if (v < bound) return v;
    }
}

void SystemRandom::fill(std::span<std::uint8_t> out) {
    static thread_local std::ifstream urandom("/dev/urandom", std::ios::binary);
    if (!urandom.good()) {
        throw std::runtime_error("SystemRandom: cannot open /dev/urandom");
    }
    urandom.read(reinterpret_cast<char*>(out.data()),
                 static_cast<std::streamsize>(out.size()));
    if (urandom.gcount() != static_cast<std::streamsize>(out.size())) {
        throw std::runtime_error("SystemRandom: short read");
    }
}

Drbg::Drbg(std::span<const std::uint8_t> seed)
    : seed_(Sha256().update("ph-drbg-seed").update(seed).finish()) {}

Drbg::Drbg(std::string_view seed)
    : Drbg(std::span<const std::uint8_t>(
          reinterpret_cast<const std::uint8_t*>(seed.data()), seed.size())) {}

Drbg Drbg::fork(std::string_view label) const {
    Digest32 child = Sha256().update("ph-drbg-fork").update(seed_).update(label).finish();
    return Drbg(std::span<const std::uint8_t>(child.data(), child.size()));
}

void Drbg::fill(std::span<std::uint8_t> out) {
    std::size_t off = 0;
    while (off < out.size()) {
        if (block_used_ == 32) {
            std::uint8_t ctr[8];
            for (int i = 0; i < 8; ++i) {
                ctr[i] = static_cast<std::uint8_t>(counter_ >> (56 - 8 * i));
            }
            block_ = Sha256()
                         .update("ph-drbg-block")
                         .update(seed_)
                         .update(std::span<const std::uint8_t>(ctr, 8))
                         .finish();
            counter_++;
            block_used_ = 0;
        }
        std::size_t take = std::min(out.size() - off, 32 - block_used_);
        std::memcpy(out.data() + off, block_.data() + block_used_, take);
        off += take;
        block_used_ += take;
    }
}

} // namespace ph
