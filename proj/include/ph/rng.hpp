#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string_view>

#include "ph/bytes.hpp"
#include "ph/sha256.hpp"

namespace ph {

/// Byte source abstraction. Protocol code never touches an OS RNG directly;
/// the harness swaps in deterministic or scripted sources.
class RandomSource {
public:
    virtual ~RandomSource() = default;
    virtual void fill(std::span<std::uint8_t> out) = 0;

    std::uint8_t byte();
    Bytes bytes(std::size_t n);
    // Unbiased integer in [0, bound) via rejection sampling. bound > 0.
    std::uint64_t below(std::uint64_t bound);
};

/// OS entropy (production path).
class SystemRandom final : public RandomSource {
public:
    void fill(std::span<std::uint8_t> out) override;
};

/// Deterministic SHA-256 counter-mode stream, seedable and forkable.
/// Harness-only; never used for production handshakes without an explicit seed.
class Drbg final : public RandomSource {
public:
    explicit Drbg(std::span<const std::uint8_t> seed);
    explicit Drbg(std::string_view seed);

    /// Independent child stream bound to a label. Deterministic in (seed, label).
    Drbg fork(std::string_view label) const;

    void fill(std::span<std::uint8_t> out) override;

private:
    Digest32 seed_;
    std::uint64_t counter_ = 0;
    std::array<std::uint8_t, 32> block_{};
    std::size_t block_used_ = 32;
};

} // namespace ph
