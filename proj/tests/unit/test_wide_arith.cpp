#include <doctest.h>

#include "implicit_lce/errors.hpp"
#include "implicit_lce/wide_arith.hpp"
#include "oracle.hpp"

#include <boost/multiprecision/cpp_int.hpp>

using namespace implicit_lce;

namespace {

u128 big_mulmod(u128 a, u128 b, u128 q) {
    using boost::multiprecision::cpp_int;
    auto big = [](u128 v) -> cpp_int {
        cpp_int r = static_cast<uint64_t>(v >> 64);
        r <<= 64;
        return r | static_cast<uint64_t>(v);
    };
    cpp_int const r = big(a) * big(b) % big(q);
    return (u128{static_cast<uint64_t>(r >> 64)} << 64) | static_cast<uint64_t>(r & ~uint64_t{0});
}

} // namespace

TEST_CASE("mul_mod") {
    Modulus const m((u128{1} << 61) - 1);
    CHECK(mul_mod({0}, {12345}, m).value == 0);
    CHECK(mul_mod({1}, {12345}, m).value == 12345);

    Rng rng(7);
    for (unsigned tau : {63u, 64u, 90u, 126u}) {
        Modulus const q = sample_prime(u128{1} << (tau - 1), (u128{1} << tau) - 1, rng);
        for (int t = 0; t < 2000; ++t) {
            u128 const a = rng.uniform(0, q.q() - 1), b = rng.uniform(0, q.q() - 1);
            REQUIRE(mul_mod({a}, {b}, q).value == big_mulmod(a, b, q.q()));
        }
    }
}

TEST_CASE("pow_mod") {
    Modulus const m(1031);
    CHECK(pow_mod({5}, 0, m).value == 1);
    CHECK(pow_mod({5}, 1, m).value == 5);
    CHECK(pow_mod({2}, 10, m).value == 1024);
    CHECK(pow_mod({2}, 11, m).value == 1017);
}

TEST_CASE("add and sub stay in range") {
    Modulus const m(1031);
    CHECK(add_mod({1030}, {5}, m).value == 4);
    CHECK(sub_mod({3}, {5}, m).value == 1029);
    CHECK(reduce(1031 * 7 + 3, m).value == 3);
}

TEST_CASE("is_prime") {
    CHECK(is_prime(2));
    CHECK(is_prime((u128{1} << 61) - 1));
    CHECK_FALSE(is_prime(u128{1} << 62));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(561));
    CHECK(is_prime((u128{1} << 127) - 1));
    Rng rng(3);
    for (int t = 0; t < 300; ++t) {
        u128 const x = rng.uniform(2, u128{1} << 100);
        REQUIRE(is_prime(x) == oracle::is_prime(x));
    }
    for (uint64_t x = 0; x < 5000; ++x) REQUIRE(is_prime(x) == oracle::is_prime(x));
}

TEST_CASE("modulus_interval") {
    auto iv = modulus_interval(2, 8);
    CHECK(iv.lo == 128);
    CHECK(iv.hi == 256);
    iv = modulus_interval(uint64_t{1} << 20, 64);
    CHECK(iv.lo == u128{1} << 63);
    CHECK(iv.hi - iv.lo == (u128{1} << 63) / ((uint64_t{1} << 20) - 1));
    CHECK_THROWS_AS(modulus_interval(1000, 8), IntervalError);
}

TEST_CASE("sample_prime") {
    Rng rng(11);
    CHECK(sample_prime(127, 127, rng).q() == 127);
    CHECK_THROWS_AS(sample_prime(24, 28, rng), SamplingError);
    auto const iv = modulus_interval(uint64_t{1} << 20, 64);
    for (int t = 0; t < 20; ++t) {
        Modulus const q = sample_prime(iv.lo, iv.hi, rng);
        CHECK(q.q() >= iv.lo);
        CHECK(q.q() <= iv.hi);
        CHECK(oracle::is_prime(q.q()));
        CHECK(q.tau() == 64);
    }
}

TEST_CASE("sample_seed") {
    Rng a(5), b(5);
    Modulus const two(2);
    for (int t = 0; t < 50; ++t) CHECK(sample_seed(two, a).value <= 1);
    Modulus const m(1031);
    Rng c(99), d(99);
    CHECK(sample_seed(m, c) == sample_seed(m, d));
    double sum = 0;
    for (int t = 0; t < 100000; ++t) sum += static_cast<double>(sample_seed(m, c).value);
    CHECK(sum / 100000 == doctest::Approx(515.0).epsilon(0.05));
}

TEST_CASE("Modulus rejects composites") {
    CHECK_THROWS_AS(Modulus(1000), InputError);
    CHECK(Modulus(131).tau() == 8);
}

TEST_CASE("u128 text roundtrip") {
    u128 const v = (u128{0x0123456789abcdefULL} << 64) | 0xfedcba9876543210ULL;
    CHECK(parse_u128(to_string(v)) == v);
    CHECK(to_string(0) == "0");
    CHECK_THROWS_AS(parse_u128("12x"), InputError);
}
