#include <doctest.h>

#include "implicit_lce/errors.hpp"
#include "implicit_lce/fingerprint_index.hpp"
#include "implicit_lce/ztable.hpp"
#include "oracle.hpp"

#include <sstream>
#include <string>

using namespace implicit_lce;

namespace {

std::vector<uint64_t> from_string(const std::string& s) {
    return {s.begin(), s.end()};
}

std::vector<uint64_t> random_text(Rng& rng, size_t n, uint64_t sigma) {
    std::vector<uint64_t> t(n);
    for (auto& c : t) c = rng.next() % sigma;
    return t;
}

FingerprintIndex build(const std::vector<uint64_t>& chars, uint64_t sigma, Rng& rng, unsigned tau = kDefaultTau) {
    return FingerprintIndex::build_in_place(BitText::pack(chars, sigma, tau), rng);
}

} // namespace

TEST_CASE("roundtrip and buffer size") {
    Rng rng(1);
    for (uint64_t sigma : {2ull, 4ull, 256ull}) {
        for (size_t n : {0ul, 1ul, 7ul, 63ul, 64ul, 1000ul}) {
            auto const chars = random_text(rng, n, sigma);
            auto plain = BitText::pack(chars, sigma, 63);
            auto reference = plain;
            reference.attach_seed_block({0});
            auto idx = FingerprintIndex::build_in_place(std::move(plain), rng);
            CHECK(idx.bit_length() == reference.bit_length());
            CHECK(idx.storage().words().size() <= reference.words().size());
            CHECK(idx.extract(0, n) == chars);
            auto back = idx.restore_in_place();
            CHECK(back == BitText::pack(chars, sigma, 63));
            CHECK_THROWS_AS(idx.restore_in_place(), StateError);
        }
    }
}

TEST_CASE("empty text keeps only the seed") {
    Rng rng(2);
    std::vector<uint64_t> const none;
    auto idx = build(none, 2, rng);
    CHECK(idx.bit_length() == 63);
    CHECK(idx.retries() == 1);
    CHECK(idx.prefix_fp(62) == idx.seed());
}

TEST_CASE("rebuild with the same parameters reproduces the buffer") {
    Rng rng(3);
    auto const chars = from_string("banana");
    auto idx = build(chars, 256, rng);
    auto const words = std::vector<uint64_t>(idx.storage().words().begin(), idx.storage().words().end());
    Modulus const m = idx.modulus();
    Residue const seed = idx.seed();
    auto text = idx.restore_in_place();
    CHECK(text.chars() == chars);
    auto again = FingerprintIndex::encode_with(std::move(text), m, seed);
    CHECK(std::vector<uint64_t>(again.storage().words().begin(), again.storage().words().end()) == words);
}

TEST_CASE("stored prefixes never use the top bit") {
    Rng rng(4);
    auto const chars = random_text(rng, 5000, 256);
    auto idx = build(chars, 256, rng);
    u128 const top = u128{1} << (idx.tau() - 1);
    for (size_t k = 0; k < idx.block_count(); ++k) REQUIRE(idx.stored_prefix(k).value < top);
}

TEST_CASE("prefix and substring fingerprints match the oracle") {
    Rng rng(5);
    for (unsigned tau : {8u, 13u, 32u, 63u, 64u, 100u, 126u}) {
        for (uint64_t sigma : {2ull, 4ull, 256ull}) {
            size_t const n = 256 / char_bits_for(sigma);
            auto const chars = random_text(rng, n, sigma);
            BuildOptions opt;
            opt.test_mode = true;
            opt.max_retries = 100000;
            auto idx = FingerprintIndex::build_in_place(BitText::pack(chars, sigma, tau), rng, opt);
            auto const bits = oracle::buffer_bits(chars, char_bits_for(sigma), tau, idx.seed().value);
            REQUIRE(bits.size() == idx.bit_length());
            u128 const q = idx.modulus().q();
            for (size_t i = 0; i < bits.size(); ++i) REQUIRE(idx.prefix_fp(i).value == oracle::bits_fp(bits, 0, i, q));
            size_t const stride = tau > 32 ? 3 : 1;
            for (size_t i = 0; i < bits.size(); i += stride)
                for (size_t j = i; j < bits.size(); j += stride)
                    REQUIRE(idx.substring_fp(i, j).value == oracle::bits_fp(bits, i, j, q));
        }
    }
}

TEST_CASE("fingerprint identities") {
    Rng rng(6);
    auto const chars = random_text(rng, 300, 4);
    auto idx = build(chars, 4, rng);
    CHECK(idx.prefix_fp(62) == idx.seed());
    CHECK(idx.prefix_fp(2 * 63 - 1) == idx.stored_prefix(1));
    CHECK(idx.substring_fp(0, 200) == idx.prefix_fp(200));
    CHECK(idx.substring_fp_with_exp(0, 200, {12345}) == idx.prefix_fp(200));
    size_t const off = 63 + idx.pad_bits();
    auto const bits = oracle::buffer_bits(chars, 2, 63, idx.seed().value);
    for (size_t i = off; i < off + 20; ++i) CHECK(idx.substring_fp(i, i).value == bits[i]);
    auto const zt = ZTable::build_heap(idx);
    for (size_t e = 0; e < zt.size(); ++e) {
        size_t const len = size_t{1} << e;
        for (size_t c = 0; c + len <= chars.size(); c += 37) {
            size_t const s = off + 2 * c;
            REQUIRE(idx.window_fp(c, len, zt[e]) == idx.substring_fp(s, s + 2 * len - 1));
        }
    }
    CHECK_THROWS_AS(idx.prefix_fp(idx.bit_length()), IndexError);
}

TEST_CASE("ztable") {
    Rng rng(7);
    std::vector<uint64_t> const one{1};
    auto idx = build(one, 4, rng);
    auto const zt = ZTable::build_heap(idx);
    CHECK(zt.size() == 1);
    CHECK(zt[0] == reduce(4, idx.modulus()));
    CHECK(ZTable::entry_count(1000) == 10);
    CHECK(ZTable::entry_count(1024) == 11);

    auto const chars = random_text(rng, 100, 2);
    auto other = build(chars, 2, rng);
    CHECK_THROWS_AS(other.lce_fast(zt, 0, 1), StateError);
}

TEST_CASE("lce examples") {
    Rng rng(8);
    auto idx = build(from_string("abracadabra"), 256, rng);
    auto const zt = ZTable::build_heap(idx);
    CHECK(idx.lce_slow(0, 7).length == 4);
    CHECK(idx.lce_fast(zt, 0, 7).length == 4);
    CHECK(idx.lce_slow(3, 3).length == 8);
    CHECK(idx.lce_fast(zt, 10, 10).length == 1);
    CHECK_THROWS_AS(idx.lce_slow(0, 11), IndexError);

    auto aaaa = build(from_string("aaaa"), 256, rng);
    CHECK(aaaa.lce_slow(0, 1).length == 3);

    std::string ab;
    for (int k = 0; k < 50; ++k) ab += "ab";
    auto per = build(from_string(ab), 256, rng);
    CHECK(per.lce_slow(0, 2).length == 98);
}

TEST_CASE("lce agrees with naive scan") {
    Rng rng(9);
    for (uint64_t sigma : {2ull, 4ull, 256ull}) {
        auto chars = random_text(rng, 200, sigma);
        for (size_t k = 50; k < 150; ++k) chars[k] = chars[k - 50];
        auto idx = build(chars, sigma, rng);
        auto const zt = ZTable::build_heap(idx);
        for (size_t i = 0; i < chars.size(); ++i)
            for (size_t j = 0; j < chars.size(); ++j) {
                size_t const l = oracle::lce(chars, i, j);
                auto const s = idx.lce_slow(i, j);
                auto const f = idx.lce_fast(zt, i, j);
                REQUIRE(s.length == l);
                REQUIRE(f.length == l);
            }
    }
}

TEST_CASE("compare_suffixes") {
    Rng rng(10);
    auto idx = build(from_string("banana"), 256, rng);
    CHECK(idx.compare_suffixes(1, 3, LceKind::Slow) == Ordering::Greater);
    CHECK(idx.compare_suffixes(3, 1, LceKind::Slow) == Ordering::Less);
    CHECK(idx.compare_suffixes(2, 2, LceKind::Slow) == Ordering::Equal);
    CHECK(idx.compare_suffixes(5, 0, LceKind::Slow) == Ordering::Less);
}

TEST_CASE("extract") {
    Rng rng(11);
    auto const chars = random_text(rng, 3000, 1000);
    auto idx = build(chars, 1000, rng);
    CHECK(idx.extract(5, 0).empty());
    for (int t = 0; t < 200; ++t) {
        size_t const i = rng.next() % chars.size();
        size_t const m = rng.next() % (chars.size() - i + 1);
        REQUIRE(idx.extract(i, m) == std::vector<uint64_t>(chars.begin() + i, chars.begin() + i + m));
    }
    CHECK(idx.char_at(2999) == chars[2999]);
    CHECK_THROWS_AS(idx.extract(2990, 11), IndexError);
}

TEST_CASE("failed builds leave the text plain") {
    Rng rng(12);
    auto const chars = random_text(rng, 10000, 2);
    auto text = BitText::pack(chars, 2, 8);
    BuildOptions opt;
    opt.test_mode = true;
    opt.max_retries = 20;
    CHECK_THROWS_AS(FingerprintIndex::build_in_place(std::move(text), rng, opt), BuildError);
    CHECK(text == BitText::pack(chars, 2, 8));

    BuildOptions prod;
    CHECK_THROWS_AS(FingerprintIndex::build_in_place(BitText::pack(chars, 2, 8), rng, prod), InputError);
}

TEST_CASE("small tau needs retries") {
    Rng rng(13);
    BuildOptions opt;
    opt.test_mode = true;
    opt.max_retries = 100000;
    unsigned total = 0;
    for (int r = 0; r < 50; ++r) {
        auto const chars = random_text(rng, 64, 2);
        auto idx = FingerprintIndex::build_in_place(BitText::pack(chars, 2, 8), rng, opt);
        total += idx.retries();
        REQUIRE(idx.extract(0, 64) == chars);
    }
    CHECK(total > 50);
}

TEST_CASE("keep policy records overflowing blocks") {
    Rng rng(14);
    std::vector<uint64_t> chars(2001, 'a');
    chars[1000] = 'b';
    Modulus const m(131);
    auto idx = FingerprintIndex::encode_with(BitText::pack(chars, 256, 8), m, {77}, OverflowPolicy::Keep);
    CHECK_FALSE(idx.overflow_blocks().empty());
    CHECK(idx.extract(0, chars.size()) == chars);
    auto const bits = oracle::buffer_bits(chars, 8, 8, 77);
    for (size_t i = 0; i < bits.size(); i += 17) REQUIRE(idx.prefix_fp(i).value == oracle::bits_fp(bits, 0, i, 131));
    CHECK(idx.restore_in_place().chars() == chars);
    CHECK_THROWS_AS(FingerprintIndex::encode_with(BitText::pack(chars, 256, 8), m, {77}), BuildError);
}
