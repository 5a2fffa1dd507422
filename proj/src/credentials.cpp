#include "ph/credentials.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <sstream>

#include <sys/stat.h>

namespace ph {

GroupSecret new_group_secret(RandomSource& rng, std::string id) {
    GroupSecret s;
    s.id = std::move(id);
    rng.fill(s.secret);
    return s;
}

std::size_t PaddedArray::real_count() const {
    return static_cast<std::size_t>(
        std::count_if(slots.begin(), slots.end(), [](const PaddedSlot& s) { return s.is_real; }));
}

PaddedArray build_padded_array(const std::vector<GroupSecret>& memberships,
                               const std::set<std::string>& hidden, std::size_t m,
                               RandomSource& rng) {
    if (memberships.size() > m) {
        std::ostringstream msg;
        msg << "padded array: " << memberships.size() << " memberships exceed cap m=" << m;
        throw CapacityError(msg.str());
    }

    PaddedArray array;
    array.slots.reserve(m);
    for (const GroupSecret& g : memberships) {
        PaddedSlot slot;
        if (hidden.count(g.id)) {
            rng.fill(slot.secret); // hidden membership becomes plain filler
        } else {
            slot.secret = g.secret;
            slot.is_real = true;
            slot.id = g.id;
        }
        array.slots.push_back(std::move(slot));
    }
    while (array.slots.size() < m) {
        PaddedSlot slot;
        rng.fill(slot.secret);
        array.slots.push_back(std::move(slot));
    }

    // Fisher-Yates with the session rng; uniform permutation per session.
    for (std::size_t i = array.slots.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng.below(i));
        std::swap(array.slots[i - 1], array.slots[j]);
    }
    return array;
}

CredentialFile load_credentials(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) {
        throw ConfigError("credentials: cannot open " + path);
    }
    CredentialFile out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        auto strip = [](const std::string& s) {
            auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos) return std::string();
            auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        };
        line = strip(line);
        if (line.empty()) continue;

        auto eq = line.find('=');
        auto colon = line.find(':');
        if (eq != std::string::npos && (colon == std::string::npos || eq < colon)) {
            std::string key = strip(line.substr(0, eq));
            std::string val = strip(line.substr(eq + 1));
            if (key != "max_memberships") {
                throw ConfigError("credentials: unknown config key '" + key + "'");
            }
            try {
                out.max_memberships = std::stoul(val);
            } catch (const std::exception&) {
                throw ConfigError("credentials: bad max_memberships value");
            }
            continue;
        }
        if (colon == std::string::npos) {
            std::ostringstream msg;
            msg << "credentials: line " << lineno << " is not id:hex";
            throw ConfigError(msg.str());
        }
        GroupSecret s;
        s.id = strip(line.substr(0, colon));
        if (s.id.empty()) {
            throw ConfigError("credentials: empty group id");
        }
        Bytes raw;
        try {
            raw = from_hex(strip(line.substr(colon + 1)));
        } catch (const std::invalid_argument&) {
            throw ConfigError("credentials: bad hex for id '" + s.id + "'");
        }
        if (raw.size() != s.secret.size()) {
            throw ConfigError("credentials: secret for '" + s.id + "' is not 32 bytes");
        }
        std::memcpy(s.secret.data(), raw.data(), raw.size());
        for (const GroupSecret& seen : out.secrets) {
            if (seen.id == s.id) {
                throw ConfigError("credentials: duplicate id '" + s.id + "'");
            }
        }
        out.secrets.push_back(std::move(s));
    }
    return out;
}

void save_credentials(const std::string& path, const CredentialFile& creds) {
    std::ofstream out(path, std::ios::trunc);
    if (!out.good()) {
        throw ConfigError("credentials: cannot write " + path);
    }
    if (creds.max_memberships) {
        out << "max_memberships = " << *creds.max_memberships << "\n";
    }
    for (const GroupSecret& s : creds.secrets) {
        out << s.id << ":" << to_hex(s.secret) << "\n";
    }
    out.close();
    if (::chmod(path.c_str(), S_IRUSR | S_IWUSR) != 0) {
        throw ConfigError("credentials: cannot restrict permissions on " + path);
    }
}

} // namespace ph
