#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ph/bytes.hpp"
#include "ph/errors.hpp"
#include "ph/rng.hpp"

namespace ph {

/// Possession of the 32-byte secret *is* membership. The id is a purely
/// local alias and never goes on the wire.
struct GroupSecret {
    std::string id;
    std::array<std::uint8_t, 32> secret{};
};

GroupSecret new_group_secret(RandomSource& rng, std::string id);

struct PaddedSlot {
    std::array<std::uint8_t, 32> secret{};
    bool is_real = false;
    std::optional<std::string> id; // set only on real slots
};

/// Exactly m slots, uniformly permuted per session. Hidden memberships and
/// unused capacity are indistinguishable fresh-random fillers.
struct PaddedArray {
    std::vector<PaddedSlot> slots;

    std::size_t size() const { return slots.size(); }
    std::size_t real_count() const;
};

/// Throws CapacityError when |memberships| > m.
PaddedArray build_padded_array(const std::vector<GroupSecret>& memberships,
                               const std::set<std::string>& hidden, std::size_t m,
                               RandomSource& rng);

struct CredentialFile {
    std::vector<GroupSecret> secrets;
    std::optional<std::size_t> max_memberships;
};

/// One record per line, `id:hex(secret)`; optional `max_memberships = N`.
/// '#' starts a comment. Throws ConfigError.
CredentialFile load_credentials(const std::string& path);

/// Writes the same format, file mode 0600.
void save_credentials(const std::string& path, const CredentialFile& creds);

} // namespace ph
