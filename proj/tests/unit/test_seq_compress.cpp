#include <doctest.h>

#include "implicit_lce/errors.hpp"
#include "implicit_lce/seq_compress.hpp"

#include <algorithm>

using namespace implicit_lce;

TEST_CASE("three element example") {
    std::vector<uint64_t> seg{5, 1, 3};
    auto cs = CompressedSegment::compress(seg, 3);
    CHECK(cs.split_index() == 2);
    CHECK(cs.element(0) == 1);
    CHECK(cs.element(1) == 3);
    CHECK(cs.element(2) == 5);
    CHECK(cs.free_bits() == 3);
    // packed payload 01 11 01
    CHECK((seg[0] >> 58) == 0b011101);
    cs.decompress();
    CHECK(seg == std::vector<uint64_t>{1, 3, 5});
}

TEST_CASE("edge cases") {
    std::vector<uint64_t> low{1, 2, 0, 3};
    auto a = CompressedSegment::compress(low, 4);
    CHECK(a.split_index() == 4);
    a.decompress();
    CHECK(low == std::vector<uint64_t>{0, 1, 2, 3});

    std::vector<uint64_t> same(9, 6);
    auto b = CompressedSegment::compress(same, 3);
    b.decompress();
    CHECK(same == std::vector<uint64_t>(9, 6));

    std::vector<uint64_t> bad{8};
    CHECK_THROWS_AS(CompressedSegment::compress(bad, 3), InputError);
}

TEST_CASE("lease lifecycle") {
    std::vector<uint64_t> seg(100);
    for (size_t i = 0; i < seg.size(); ++i) seg[i] = (i * 7919) % 1024;
    auto sorted = seg;
    std::sort(sorted.begin(), sorted.end());
    auto cs = CompressedSegment::compress(seg, 10);
    CHECK_THROWS_AS(cs.lease(101), CapacityError);
    {
        auto lease = cs.lease(100);
        CHECK_THROWS_AS(cs.lease(1), CapacityError);
        CHECK_THROWS_AS(cs.decompress(), StateError);
        for (size_t k = 0; k < 100; k += 10) lease.write(k, 10, 1023);
        for (size_t t = 0; t < 100; ++t) REQUIRE(cs.element(t) == sorted[t]);
    }
    CHECK_FALSE(cs.lease_active());
    cs.decompress();
    CHECK(seg == sorted);
    CHECK_THROWS_AS(cs.decompress(), StateError);
}

TEST_CASE("compress then decompress sorts") {
    Rng rng(4);
    for (int round = 0; round < 10000; ++round) {
        unsigned const bits = 1 + rng.next() % 64;
        std::vector<uint64_t> seg(rng.next() % 40);
        for (auto& v : seg) v = bits == 64 ? rng.next() : rng.next() & ((uint64_t{1} << bits) - 1);
        auto expect = seg;
        std::sort(expect.begin(), expect.end());
        auto cs = CompressedSegment::compress(seg, bits);
        if (!seg.empty()) {
            auto lease = cs.lease(seg.size());
            lease.write(0, static_cast<unsigned>(std::min<size_t>(seg.size(), 128)), ~u128{0});
        }
        cs.decompress();
        REQUIRE(seg == expect);
    }
}
