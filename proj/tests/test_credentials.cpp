#include <doctest.h>

#include <fstream>

#include <sys/stat.h>

#include "ph/credentials.hpp"
#include "ph/stats.hpp"

using namespace ph;

TEST_SUITE_BEGIN("credentials");

TEST_CASE("new_group_secret draws 32 fresh bytes and is reproducible under a seed") {
    Drbg rng("secrets");
    GroupSecret a = new_group_secret(rng, "red");
    GroupSecret b = new_group_secret(rng, "blue");
    CHECK(a.secret.size() == 32);
    CHECK(a.secret != b.secret);
    CHECK(a.id == "red");

    Drbg replay("secrets");
    GroupSecret a2 = new_group_secret(replay, "red");
    CHECK(a2.secret == a.secret);
}

TEST_CASE("build_padded_array pads, hides, and caps") {
    Drbg rng("padded");
    GroupSecret red = new_group_secret(rng, "red");
    GroupSecret blue = new_group_secret(rng, "blue");

    PaddedArray arr = build_padded_array({red}, {}, 3, rng);
    CHECK(arr.size() == 3);
    CHECK(arr.real_count() == 1);
    for (const PaddedSlot& s : arr.slots) {
        if (s.is_real) {
            CHECK(s.id == std::string("red"));
            CHECK(s.secret == red.secret);
        } else {
            CHECK_FALSE(s.id.has_value());
            CHECK(s.secret != red.secret);
        }
    }

    PaddedArray hidden = build_padded_array({red}, {"red"}, 3, rng);
    CHECK(hidden.real_count() == 0);
    for (const PaddedSlot& s : hidden.slots) {
        CHECK(s.secret != red.secret); // the hidden secret is replaced, not kept
    }

    CHECK_THROWS_AS(build_padded_array({red, blue}, {}, 1, rng), CapacityError);
    CHECK_NOTHROW(build_padded_array({red, blue}, {}, 2, rng));
}

TEST_CASE("the real slot lands uniformly across positions") {
    Drbg rng("padded-positions");
    GroupSecret red = new_group_secret(rng, "red");
    const std::size_t builds = 10000;
    std::vector<std::size_t> position_counts(3, 0);
    for (std::size_t i = 0; i < builds; ++i) {
        PaddedArray arr = build_padded_array({red}, {}, 3, rng);
        for (std::size_t pos = 0; pos < arr.size(); ++pos) {
            if (arr.slots[pos].is_real) position_counts[pos] += 1;
        }
    }
    for (std::size_t pos = 0; pos < 3; ++pos) {
        CHECK(within_binomial_sigma(position_counts[pos], builds, 1.0 / 3.0, 5.0));
    }
}

TEST_CASE("padding is fresh per session") {
    Drbg rng("padding-fresh");
    PaddedArray a = build_padded_array({}, {}, 4, rng);
    PaddedArray b = build_padded_array({}, {}, 4, rng);
    for (const PaddedSlot& sa : a.slots) {
        for (const PaddedSlot& sb : b.slots) {
            CHECK(sa.secret != sb.secret);
        }
    }
}

TEST_CASE("credential files round-trip with restricted permissions") {
    Drbg rng("cred-file");
    CredentialFile cf;
    cf.secrets.push_back(new_group_secret(rng, "red"));
    cf.secrets.push_back(new_group_secret(rng, "blue"));
    cf.max_memberships = 8;

    const char* path = "test_creds.txt";
    save_credentials(path, cf);

    struct stat st {};
    REQUIRE(::stat(path, &st) == 0);
    CHECK((st.st_mode & 0777) == 0600);

    CredentialFile back = load_credentials(path);
    REQUIRE(back.secrets.size() == 2);
    CHECK(back.secrets[0].id == "red");
    CHECK(back.secrets[0].secret == cf.secrets[0].secret);
    CHECK(back.secrets[1].id == "blue");
    CHECK(back.max_memberships == std::size_t{8});
    std::remove(path);
}

TEST_CASE("credential file parse errors") {
    auto write_and_load = [](const char* content) {
        const char* path = "test_creds_bad.txt";
        {
            std::ofstream out(path);
            out << content;
        }
        try {
            load_credentials(path);
        } catch (...) {
            std::remove(path);
            throw;
        }
        std::remove(path);
    };
    CHECK_THROWS_AS(write_and_load("red\n"), ConfigError);           // no colon
    CHECK_THROWS_AS(write_and_load("red:zz\n"), ConfigError);        // bad hex
    CHECK_THROWS_AS(write_and_load("red:aabb\n"), ConfigError);      // not 32 bytes
    CHECK_THROWS_AS(write_and_load("bogus = 3\n"), ConfigError);     // unknown key
    CHECK_THROWS_AS(load_credentials("missing_creds.txt"), ConfigError);

    const char* dup =
        "red:0000000000000000000000000000000000000000000000000000000000000001\n"
        "red:0000000000000000000000000000000000000000000000000000000000000002\n";
    CHECK_THROWS_AS(write_and_load(dup), ConfigError);

    // comments and blank lines are fine
    const char* path = "test_creds_ok.txt";
    {
        std::ofstream out(path);
        out << "# comment\n\n"
            << "max_memberships = 4\n"
            << "red:00000000000000000000000000000000000000000000000000000000000000aa # x\n";
    }
    CredentialFile cf = load_credentials(path);
    CHECK(cf.secrets.size() == 1);
    CHECK(cf.max_memberships == std::size_t{4});
    std::remove(path);
}

TEST_SUITE_END();
