#pragma once

#include <stdexcept>

#include "ph/rng.hpp"

namespace testutil {

/// Replays a fixed byte stream; throws when the script runs dry.
class ScriptedRandom final : public ph::RandomSource {
public:
    explicit ScriptedRandom(ph::Bytes stream) : stream_(std::move(stream)) {}

    void fill(std::span<std::uint8_t> out) override {
        if (pos_ + out.size() > stream_.size()) {
            throw std::runtime_error("ScriptedRandom: stream exhausted");
        }
        std::copy_n(stream_.begin() + static_cast<std::ptrdiff_t>(pos_), out.size(),
                    out.begin());
        pos_ += out.size();
    }

private:
    ph::Bytes stream_;
    std::size_t pos_ = 0;
};

} // namespace testutil
