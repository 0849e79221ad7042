#pragma once

#include <compare>
#include <cstdint>
#include <random>
#include <string>

namespace implicit_lce {

using u128 = unsigned __int128;

// Widest supported block size. Residues and blocks live in one u128 and
// 2*residue must not overflow it.
inline constexpr unsigned kMaxTau = 126;
// Smallest block size accepted outside of test mode.
inline constexpr unsigned kMinProductionTau = 32;
inline constexpr unsigned kDefaultTau = 63;

constexpr unsigned bit_width(u128 x) {
    unsigned w = 0;
    if (x >> 64) {
        w = 64;
        x >>= 64;
    }
    auto lo = static_cast<uint64_t>(x);
    while (lo) {
        ++w;
        lo >>= 1;
    }
    return w;
}

constexpr u128 low_mask(unsigned bits) {
    return bits >= 128 ? ~u128{0} : (u128{1} << bits) - 1;
}

std::string to_string(u128 v);
// Parses a decimal string; throws InputError on junk or overflow.
u128 parse_u128(const std::string& s);

// A prime modulus q together with its bit width tau, 2^(tau-1) <= q < 2^tau.
class Modulus {
public:
    // Throws InputError unless q is a prime below 2^(kMaxTau+1).
    explicit Modulus(u128 q);

    u128 q() const { return q_; }
    unsigned tau() const { return tau_; }

    friend bool operator==(const Modulus&, const Modulus&) = default;

private:
    u128 q_;
    unsigned tau_;
};

// A value in [0, q-1] for some Modulus the caller keeps track of.
struct Residue {
    u128 value = 0;

    friend auto operator<=>(const Residue&, const Residue&) = default;
};

Residue mul_mod(Residue a, Residue b, const Modulus& m);
Residue add_mod(Residue a, Residue b, const Modulus& m);
Residue sub_mod(Residue a, Residue b, const Modulus& m);
// Square-and-multiply; O(log e) multiplications.
Residue pow_mod(Residue base, uint64_t e, const Modulus& m);
// Reduces an arbitrary u128 (not necessarily < q).
Residue reduce(u128 x, const Modulus& m);

// Deterministic below 2^64, 64 Miller-Rabin rounds above. Valid for x < 2^127.
bool is_prime(u128 x);

// Seedable randomness source. Single owner; not thread-safe.
class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed), seed_(seed) {}

    uint64_t next() { return engine_(); }
    // Uniform in [lo, hi].
    u128 uniform(u128 lo, u128 hi);
    uint64_t seed_value() const { return seed_; }

private:
    std::mt19937_64 engine_;
    uint64_t seed_;
};

struct PrimeInterval {
    u128 lo = 0;
    u128 hi = 0;
};

// [2^(tau-1), 2^(tau-1) + floor(2^(tau-1) / (total_bits-1))]: the primes in
// here have exactly tau bits and make each prefix fingerprint's top bit set
// with probability at most 1/total_bits. Throws IntervalError when empty
// after rounding, InputError for tau < 2 or total_bits < 2.
PrimeInterval modulus_interval(uint64_t total_bits, unsigned tau);

// Rejection sampling; throws SamplingError after 64*bit_width(hi) misses.
Modulus sample_prime(u128 lo, u128 hi, Rng& rng);

Residue sample_seed(const Modulus& m, Rng& rng);

} // namespace implicit_lce
