#include <doctest.h>

#include <fstream>
#include <set>

#include "oracles.hpp"
#include "ph/group.hpp"
#include "ph/stats.hpp"
#include "test_util.hpp"

using namespace ph;

namespace {

// The 11 quadratic residues mod 23 (the order-11 subgroup).
const std::set<std::uint64_t> kSubgroup23 = {1, 2, 3, 4, 6, 8, 9, 12, 13, 16, 18};

} // namespace

TEST_SUITE_BEGIN("group");

TEST_CASE("parameter validation accepts the test group and rejects corrupt ones") {
    GroupParams p23 = GroupParams::test23();
    CHECK(p23.p.cmp_ui(23) == 0);
    CHECK(p23.q.cmp_ui(11) == 0);
    CHECK(p23.g.cmp_ui(2) == 0);
    CHECK(p23.element_width == 1);

    CHECK_THROWS_AS(GroupParams::from_hex("19", "c", "2"), ConfigError); // p=25 composite
    CHECK_THROWS_AS(GroupParams::from_hex("17", "a", "2"), ConfigError); // q != (p-1)/2
    CHECK_THROWS_AS(GroupParams::from_hex("17", "b", "1"), ConfigError); // g = 1
    CHECK_THROWS_AS(GroupParams::from_hex("17", "b", "5"), ConfigError); // 5^11 = -1 mod 23
    CHECK_THROWS_AS(GroupParams::from_hex("17", "b", "16"), ConfigError); // g = p-1
    // p=29 is prime but not safe: (29-1)/2 = 14
    CHECK_THROWS_AS(GroupParams::from_hex("1d", "e", "2"), ConfigError);
}

TEST_CASE("the production group loads and is a safe-prime group of width 256") {
    const GroupParams& prod = GroupParams::modp2048();
    CHECK(prod.p.bit_length() == 2048);
    CHECK(prod.element_width == 256);
    CHECK(prod.g.cmp_ui(2) == 0);
    // 2 generates the order-q subgroup: checked at load; identity here.
    CHECK(Bigint::powm(prod.g, prod.q, prod.p).cmp_ui(1) == 0);
}

TEST_CASE("group files round-trip through the loader") {
    GroupParams p23 = GroupParams::test23();
    const char* path = "test_group23.cfg";
    {
        std::ofstream out(path);
        out << "# test group\n";
        out << "p = " << p23.p.to_hex() << "\n";
        out << "q = " << p23.q.to_hex() << "\n";
        out << "g = " << p23.g.to_hex() << "\n";
    }
    GroupParams loaded = GroupParams::load_file(path);
    CHECK(loaded.p == p23.p);
    CHECK(loaded.q == p23.q);
    CHECK(loaded.g == p23.g);
    CHECK_THROWS_AS(GroupParams::load_file("no_such_file.cfg"), ConfigError);
    std::remove(path);
}

TEST_CASE("mod_exp worked examples") {
    GroupParams p23 = GroupParams::test23();
    // Identity probe: exponent q collapses any subgroup element to 1. The
    // Exponent type stops at q-1, so this runs on the integer layer.
    CHECK(Bigint::powm(Bigint(2), p23.q, p23.p).cmp_ui(1) == 0);

    CHECK(mod_exp(element_from_u64(5, p23), exponent_from_u64(3, p23), p23).value.cmp_ui(10) ==
          0);
    GroupElement g{p23.g};
    CHECK(mod_exp(g, exponent_from_u64(1, p23), p23) == g);
}

TEST_CASE("mod_exp matches the naive repeated-multiplication oracle exhaustively for p=23") {
    GroupParams p23 = GroupParams::test23();
    for (std::uint64_t base = 1; base <= 22; ++base) {
        for (std::uint64_t e = 1; e <= 10; ++e) {
            GroupElement r = mod_exp(element_from_u64(base, p23), exponent_from_u64(e, p23), p23);
            Bigint expected = oracle::naive_mod_pow(Bigint(base), e, p23.p);
            CHECK(r.value == expected);
        }
    }
}

TEST_CASE("mod_exp matches the naive oracle on random 2048-bit cases") {
    // The naive oracle multiplies e-1 times, so exponents stay small here;
    // full-size exponents are covered by the commutativity property below.
    const GroupParams& prod = GroupParams::modp2048();
    Drbg rng("modexp-2048");
    for (int i = 0; i < 100; ++i) {
        GroupElement base = random_subgroup_element(rng, prod);
        std::uint64_t e = 1 + rng.below(4096);
        GroupElement r = mod_exp(base, exponent_from_u64(e, prod), prod);
        CHECK(r.value == oracle::naive_mod_pow(base.value, e, prod.p));
    }
}

TEST_CASE("dh commutativity holds exhaustively in the test group") {
    GroupParams p23 = GroupParams::test23();
    for (std::uint64_t s : kSubgroup23) {
        GroupElement base = element_from_u64(s, p23);
        for (std::uint64_t a = 1; a <= 10; ++a) {
            for (std::uint64_t b = 1; b <= 10; ++b) {
                Exponent ea = exponent_from_u64(a, p23);
                Exponent eb = exponent_from_u64(b, p23);
                CHECK(mod_exp(mod_exp(base, ea, p23), eb, p23) ==
                      mod_exp(mod_exp(base, eb, p23), ea, p23));
            }
        }
    }
}

TEST_CASE("dh commutativity holds on random 2048-bit instances") {
    const GroupParams& prod = GroupParams::modp2048();
    Drbg rng("commute-2048");
    for (int i = 0; i < 3; ++i) {
        GroupElement s = random_subgroup_element(rng, prod);
        Exponent a = random_exponent(rng, prod);
        Exponent b = random_exponent(rng, prod);
        CHECK(mod_exp(mod_exp(s, a, prod), b, prod) == mod_exp(mod_exp(s, b, prod), a, prod));
    }
}

TEST_CASE("derive_generator squaring map worked examples") {
    GroupParams p23 = GroupParams::test23();
    auto five = detail::map_to_subgroup(Bigint(5), p23);
    REQUIRE(five.has_value());
    CHECK(five->value.cmp_ui(2) == 0); // 25 mod 23

    // t = p-1 squares to 1: degenerate, forces a retry.
    CHECK_FALSE(detail::map_to_subgroup(Bigint(22), p23).has_value());
    CHECK_FALSE(detail::map_to_subgroup(Bigint(1), p23).has_value());
    CHECK_FALSE(detail::map_to_subgroup(Bigint(0), p23).has_value());
}

TEST_CASE("derive_generator is deterministic and stays in the subgroup") {
    GroupParams p23 = GroupParams::test23();
    Bytes secret = to_bytes("red");
    GroupElement once = derive_generator(secret, p23);
    GroupElement twice = derive_generator(secret, p23);
    CHECK(once == twice);
    CHECK(kSubgroup23.count(once.value.to_u64()) == 1);
    CHECK(once.value.cmp_ui(1) != 0);
}

TEST_CASE("derive_generator output always satisfies validate_element") {
    GroupParams p23 = GroupParams::test23();
    Drbg rng("derive-validate");
    for (int i = 0; i < 10000; ++i) {
        Bytes secret = rng.bytes(32);
        GroupElement gen = derive_generator(secret, p23);
        CHECK_NOTHROW(validate_element(encode_element(gen, p23), p23));
    }
    const GroupParams& prod = GroupParams::modp2048();
    for (int i = 0; i < 5; ++i) {
        Bytes secret = rng.bytes(32);
        GroupElement gen = derive_generator(secret, prod);
        CHECK_NOTHROW(validate_element(encode_element(gen, prod), prod));
    }
}

TEST_CASE("validate_element worked examples") {
    GroupParams p23 = GroupParams::test23();
    CHECK_THROWS_AS(validate_element(Bytes{0x01}, p23), RangeError); // identity excluded
    CHECK_THROWS_AS(validate_element(Bytes{0x16}, p23), RangeError); // p-1 has order 2
    CHECK_THROWS_AS(validate_element(Bytes{0x00}, p23), RangeError);
    CHECK_THROWS_AS(validate_element(Bytes{0x17}, p23), RangeError); // p itself
    CHECK_THROWS_AS(validate_element(Bytes{0x05}, p23), SubgroupError); // non-residue
    CHECK_THROWS_AS(validate_element(Bytes{0x02, 0x00}, p23), RangeError); // wrong width
    CHECK_THROWS_AS(validate_element(Bytes{}, p23), RangeError);

    GroupElement two = validate_element(Bytes{0x02}, p23);
    CHECK(two.value.cmp_ui(2) == 0);

    // Acceptance set is exactly the subgroup minus the identity.
    for (std::uint64_t v = 0; v < 32; ++v) {
        Bytes raw{static_cast<std::uint8_t>(v)};
        bool expected = v >= 2 && v <= 21 && kSubgroup23.count(v) == 1;
        bool accepted = true;
        try {
            validate_element(raw, p23);
        } catch (const Error&) {
            accepted = false;
        }
        CHECK(accepted == expected);
    }
}

TEST_CASE("element decode/re-encode is byte-identical") {
    GroupParams p23 = GroupParams::test23();
    for (std::uint64_t v : kSubgroup23) {
        if (v == 1) continue;
        Bytes raw{static_cast<std::uint8_t>(v)};
        GroupElement e = validate_element(raw, p23);
        CHECK(encode_element(e, p23) == raw);
    }

    const GroupParams& prod = GroupParams::modp2048();
    Drbg rng("encode-2048");
    for (int i = 0; i < 5; ++i) {
        GroupElement e = random_subgroup_element(rng, prod);
        Bytes raw = encode_element(e, prod);
        CHECK(raw.size() == prod.element_width);
        GroupElement back = validate_element(raw, prod);
        CHECK(back == e);
        CHECK(encode_element(back, prod) == raw);
    }
}

TEST_CASE("exponents live strictly inside [1, q-1]") {
    GroupParams p23 = GroupParams::test23();
    CHECK_THROWS(exponent_from_u64(0, p23));
    CHECK_THROWS(exponent_from_u64(11, p23)); // q itself would map any base to 1
    CHECK_THROWS(exponent_from_u64(12, p23));
    CHECK(exponent_from_u64(10, p23).value.cmp_ui(10) == 0);
}

TEST_CASE("random_exponent rejection rules") {
    GroupParams p23 = GroupParams::test23();
    // q=11 is 4 bits, so one masked byte per draw: 0x00 -> 0 rejected, then 7.
    testutil::ScriptedRandom zero_then_seven(Bytes{0x00, 0x07});
    CHECK(random_exponent(zero_then_seven, p23).value.cmp_ui(7) == 0);
    // 11 >= q rejected, then 3.
    testutil::ScriptedRandom eleven_then_three(Bytes{0x0b, 0x03});
    CHECK(random_exponent(eleven_then_three, p23).value.cmp_ui(3) == 0);
}

TEST_CASE("random_exponent draws are uniform over [1, q-1]") {
    GroupParams p23 = GroupParams::test23();
    Drbg rng("exponent-freq");
    const std::size_t draws = 10000;
    std::vector<std::size_t> counts(11, 0);
    for (std::size_t i = 0; i < draws; ++i) {
        counts.at(random_exponent(rng, p23).value.to_u64()) += 1;
    }
    CHECK(counts[0] == 0);
    for (std::size_t v = 1; v <= 10; ++v) {
        // 5-sigma binomial band around draws/10
        CHECK(within_binomial_sigma(counts[v], draws, 1.0 / 10.0, 5.0));
    }
}

TEST_CASE("random subgroup elements pass validation and never hit the identity") {
    GroupParams p23 = GroupParams::test23();
    Drbg rng("subgroup-elem");
    for (int i = 0; i < 2000; ++i) {
        GroupElement e = random_subgroup_element(rng, p23);
        CHECK(kSubgroup23.count(e.value.to_u64()) == 1);
        CHECK(e.value.cmp_ui(1) != 0);
    }
}

TEST_SUITE_END();
