#include <doctest.h>

#include "implicit_lce/errors.hpp"
#include "implicit_lce/fingerprint_index.hpp"

#include <sstream>
#include <string>

using namespace implicit_lce;

namespace {

std::string serialized(const FingerprintIndex& idx) {
    std::ostringstream out;
    idx.serialize(out);
    return out.str();
}

FingerprintIndex parse(const std::string& s) {
    std::istringstream in(s);
    return FingerprintIndex::deserialize(in);
}

uint64_t le_at(const std::string& s, size_t off) {
    uint64_t v = 0;
    for (int k = 7; k >= 0; --k) v = (v << 8) | static_cast<unsigned char>(s[off + k]);
    return v;
}

} // namespace

TEST_CASE("header layout") {
    Rng rng(1);
    std::string const banana = "banana";
    std::vector<uint64_t> chars(banana.begin(), banana.end());
    auto idx = FingerprintIndex::build_in_place(BitText::pack(chars, 256, 63), rng);
    auto const s = serialized(idx);
    CHECK(le_at(s, 0) == 0x494C454353534131ULL);
    CHECK(le_at(s, 8) == 1);
    CHECK(le_at(s, 16) == 63);
    CHECK(le_at(s, 24) == idx.modulus().q());
    CHECK(le_at(s, 32) == idx.seed().value);
    CHECK(le_at(s, 40) == 8);
    CHECK(le_at(s, 48) == 6);
    CHECK(le_at(s, 56) == 15);
    CHECK(s.size() == 64 + (63 + 15 + 48 + 7) / 8);
}

TEST_CASE("roundtrip across tau") {
    Rng rng(2);
    for (unsigned tau : {32u, 63u, 64u, 65u, 100u, 126u}) {
        std::vector<uint64_t> chars(777);
        for (auto& c : chars) c = rng.next() % 5;
        auto idx = FingerprintIndex::build_in_place(BitText::pack(chars, 5, tau), rng);
        auto const s = serialized(idx);
        auto back = parse(s);
        CHECK(back.modulus() == idx.modulus());
        CHECK(back.seed() == idx.seed());
        CHECK(back.extract(0, chars.size()) == chars);
        CHECK(back.lce_slow(3, 3).length == chars.size() - 3);
        CHECK(serialized(back) == s);
        CHECK(back.restore_in_place().chars() == chars);
    }
}

TEST_CASE("corrupt files are rejected") {
    Rng rng(3);
    std::vector<uint64_t> chars(300, 1);
    auto idx = FingerprintIndex::build_in_place(BitText::pack(chars, 4, 63), rng);
    auto const good = serialized(idx);

    auto bad = good;
    bad[0] ^= 1;
    CHECK_THROWS_AS(parse(bad), InputError);

    CHECK_THROWS_AS(parse(good.substr(0, good.size() - 1)), InputError);
    CHECK_THROWS_AS(parse(good.substr(0, 20)), InputError);

    bad = good;
    bad[24] ^= 2; // q + 2 is even, hence not prime
    CHECK_THROWS_AS(parse(bad), InputError);

    bad = good;
    bad[56] ^= 1; // pad_bits
    CHECK_THROWS_AS(parse(bad), InputError);

    // block 1 rewritten so that it decodes to q - 1 + q >= 2^tau
    Modulus const& m = idx.modulus();
    Residue const pow_tau = pow_mod({2}, 63, m);
    Residue const target = add_mod({m.q() - 1}, mul_mod(idx.seed(), pow_tau, m), m);
    REQUIRE(target.value < (u128{1} << 62));
    bad = good;
    u128 const block = (u128{1} << 62) | target.value;
    for (unsigned bit = 0; bit < 63; ++bit) {
        size_t const pos = 63 + bit;
        auto& byte = reinterpret_cast<unsigned char&>(bad[64 + pos / 8]);
        unsigned char const mask = static_cast<unsigned char>(0x80u >> (pos % 8));
        byte = ((block >> (62 - bit)) & 1) ? (byte | mask) : (byte & ~mask);
    }
    CHECK_THROWS_AS(parse(bad), InputError);
}

TEST_CASE("overflow lists are not serializable") {
    std::vector<uint64_t> chars(2000);
    for (size_t i = 0; i < chars.size(); ++i) chars[i] = (i * 37 + i / 7) % 256;
    auto idx = FingerprintIndex::encode_with(BitText::pack(chars, 256, 8), Modulus(131), {5}, OverflowPolicy::Keep);
    REQUIRE_FALSE(idx.overflow_blocks().empty());
    std::ostringstream out;
    CHECK_THROWS_AS(idx.serialize(out), StateError);
}
