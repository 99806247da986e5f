#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "normeu/characters.hpp"
#include "normeu/modmath.hpp"
#include "oracles.hpp"

using namespace normeu;

namespace {

std::vector<uint64_t> conductors_below(uint64_t limit, uint32_t ell) {
    std::vector<uint64_t> out;
    for (uint64_t f = 2; f < limit; ++f) {
        if (f % ell == 1 && oracles::trial_division_is_prime(f)) out.push_back(f);
    }
    return out;
}

}  // namespace

TEST_CASE("build_character validation") {
    CHECK_THROWS_AS(build_character(3, 10), Error);   // NotPrime
    CHECK_THROWS_AS(build_character(3, 9), Error);    // f = ell^2 is composite
    CHECK_THROWS_AS(build_character(3, 11), Error);   // BadCongruence
    CHECK_THROWS_AS(build_character(4, 13), Error);   // NotOddPrime
    CHECK_THROWS_AS(build_character(2, 7), Error);
    CHECK_THROWS_AS(build_character(9, 19), Error);
    CHECK_THROWS_AS(build_character(101, 607), Error);  // beyond the supported range
}

TEST_CASE("build_character(3, 7) structure") {
    const auto chr = build_character(3, 7);
    CHECK(chr.ell() == 3);
    CHECK(chr.conductor() == 7);
    CHECK(chr.cofactor_exponent() == 2);
    CHECK(chr.params().discriminant_exponent() == 2);
    // least primitive root of 7 is 3, h = 3^2 = 2 (mod 7)
    CHECK(chr.subgroup_table() == std::vector<uint64_t>{1, 2, 4});
}

TEST_CASE("eval basics") {
    const auto chr = build_character(3, 7);
    CHECK(chr.eval(1) == CharValue::root(0));
    CHECK(chr.eval(14) == CharValue::zero());
    CHECK(chr.eval(6) == CharValue::root(0));  // 6^2 = 36 = 1 (mod 7)
    const auto v2 = chr.eval(2);
    CHECK(v2.tag == CharValue::Tag::Root);
    CHECK(v2.exponent != 0);
    // canonical normalization: the least primitive root maps to exponent 1
    CHECK(chr.eval(primitive_root(7)) == CharValue::root(1));
}

TEST_CASE("is_residue") {
    const auto chr31 = build_character(3, 31);
    CHECK(chr31.is_residue(2));        // 2^10 = 1 (mod 31)
    CHECK_FALSE(chr31.is_residue(3));  // 3^10 = 25 (mod 31)
    const auto chr7 = build_character(3, 7);
    CHECK_THROWS_AS(chr7.is_residue(7), Error);
    CHECK_THROWS_AS(chr7.is_residue(0), Error);
}

TEST_CASE("multiplicativity on random coprime pairs") {
    std::mt19937_64 rng(0x5eed0101);
    for (uint64_t f : {7ull, 13ull, 31ull, 5113ull, 360007ull, 913900417ull}) {
        const auto chr = build_character(3, f);
        for (int i = 0; i < 1000; ++i) {
            uint64_t a = rng() % f, b = rng() % f;
            if (a % f == 0 || b % f == 0) continue;
            const auto va = chr.eval(a), vb = chr.eval(b);
            const auto vab = chr.eval(mul_mod(a, b, Modulus{f}));
            REQUIRE(vab == CharValue::root((va.exponent + vb.exponent) % chr.ell()));
        }
    }
}

TEST_CASE("evenness: chi(-1) = 1") {
    for (uint64_t f : {7ull, 13ull, 31ull, 21787ull, 4775569ull}) {
        const auto chr = build_character(3, f);
        CHECK(chr.eval(f - 1) == CharValue::root(0));
    }
    const auto chr = build_character(7, 29);
    CHECK(chr.eval(28) == CharValue::root(0));
}

TEST_CASE("residue set equals the brute-force cube set below 1e4") {
    for (uint64_t f : conductors_below(10'000, 3)) {
        const auto chr = build_character(3, f);
        const auto mask = oracles::power_residue_mask(f, 3);
        for (uint64_t n = 1; n < f; ++n) {
            REQUIRE(chr.is_residue(n) == static_cast<bool>(mask[n]));
        }
    }
}

TEST_CASE("image of the cofactor power map has exactly ell elements") {
    for (uint64_t f : conductors_below(10'000, 3)) {
        const auto chr = build_character(3, f);
        std::set<uint64_t> image;
        for (uint64_t n = 1; n < f; ++n) {
            image.insert(pow_mod(n, chr.cofactor_exponent(), Modulus{f}));
        }
        REQUIRE(image.size() == chr.ell());
        REQUIRE(image == std::set<uint64_t>(chr.subgroup_table().begin(),
                                            chr.subgroup_table().end()));
    }
}

TEST_CASE("higher orders: ell = 5 and ell = 7") {
    const auto chr5 = build_character(5, 11);
    CHECK(chr5.subgroup_table().size() == 5);
    CHECK(chr5.eval(10) == CharValue::root(0));  // chi(-1) = 1
    const auto mask = oracles::power_residue_mask(11, 5);
    for (uint64_t n = 1; n < 11; ++n) {
        CHECK(chr5.is_residue(n) == static_cast<bool>(mask[n]));
    }
    const auto chr7 = build_character(7, 211);
    const auto mask7 = oracles::power_residue_mask(211, 7);
    for (uint64_t n = 1; n < 211; ++n) {
        CHECK(chr7.is_residue(n) == static_cast<bool>(mask7[n]));
    }
}
