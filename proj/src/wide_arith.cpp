#include "implicit_lce/wide_arith.hpp"

#include <algorithm>
#include <array>

#include "implicit_lce/errors.hpp"

namespace implicit_lce {

namespace {

// a, b < m < 2^127.
u128 mulmod_raw(u128 a, u128 b, u128 m) {
    if (m >> 64 == 0) {
        auto const prod = u128{static_cast<uint64_t>(a)} * static_cast<uint64_t>(b);
        return prod % static_cast<uint64_t>(m);
    }
    // shift-and-add, MSB first; 2r stays below 2^128
    u128 r = 0;
    for (int k = static_cast<int>(bit_width(b)) - 1; k >= 0; --k) {
        r <<= 1;
        if (r >= m) r -= m;
        if ((b >> k) & 1) {
            r += a;
            if (r >= m) r -= m;
        }
    }
    return r;
}

u128 powmod_raw(u128 base, u128 e, u128 m) {
    u128 result = 1 % m;
    base %= m;
    while (e) {
        if (e & 1) result = mulmod_raw(result, base, m);
        base = mulmod_raw(base, base, m);
        e >>= 1;
    }
    return result;
}

// true if a witnesses that odd n > 2 is composite
bool mr_witness(u128 n, u128 a, u128 d, unsigned s) {
    u128 x = powmod_raw(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (unsigned r = 1; r < s; ++r) {
        x = mulmod_raw(x, x, n);
        if (x == n - 1) return false;
    }
    return true;
}

constexpr std::array<uint32_t, 12> kSmallPrimes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

} // namespace

std::string to_string(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v) {
        s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

u128 parse_u128(const std::string& s) {
    if (s.empty()) throw InputError("empty integer literal");
    u128 v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') throw InputError("not a decimal integer: '" + s + "'");
        u128 const next = v * 10 + static_cast<unsigned>(c - '0');
        if ((next - static_cast<unsigned>(c - '0')) / 10 != v) throw InputError("integer overflow: '" + s + "'");
        v = next;
    }
    return v;
}

Modulus::Modulus(u128 q) : q_(q), tau_(bit_width(q)) {
    if (q < 2 || tau_ > kMaxTau + 1 || !is_prime(q))
        throw InputError("modulus must be a prime below 2^127, got " + to_string(q));
}

Residue mul_mod(Residue a, Residue b, const Modulus& m) {
    return {mulmod_raw(a.value, b.value, m.q())};
}

Residue add_mod(Residue a, Residue b, const Modulus& m) {
    u128 r = a.value + b.value;
    if (r >= m.q()) r -= m.q();
    return {r};
}

Residue sub_mod(Residue a, Residue b, const Modulus& m) {
    return {a.value >= b.value ? a.value - b.value : a.value + (m.q() - b.value)};
}

Residue pow_mod(Residue base, uint64_t e, const Modulus& m) {
    return {powmod_raw(base.value, e, m.q())};
}

Residue reduce(u128 x, const Modulus& m) {
    return {x % m.q()};
}

bool is_prime(u128 x) {
    if (x < 2) return false;
    for (uint32_t p : kSmallPrimes) {
        if (x == p) return true;
        if (x % p == 0) return false;
    }
    u128 d = x - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    if (x >> 64 == 0) {
        // first 12 primes as bases are exact below 3.3e24 > 2^64
        return std::none_of(kSmallPrimes.begin(), kSmallPrimes.end(),
                            [&](uint32_t a) { return mr_witness(x, a, d, s); });
    }
    std::mt19937_64 gen(static_cast<uint64_t>(x) ^ static_cast<uint64_t>(x >> 64));
    for (int round = 0; round < 64; ++round) {
        u128 const a = 2 + ((u128{gen()} << 64 | gen()) % (x - 3));
        if (mr_witness(x, a, d, s)) return false;
    }
    return true;
}

u128 Rng::uniform(u128 lo, u128 hi) {
    u128 const span = hi - lo;
    if (span == 0) return lo;
    unsigned const bits = bit_width(span);
    for (;;) {
        u128 draw = engine_();
        if (bits > 64) draw = (draw << 64) | engine_();
        draw &= low_mask(bits);
        if (draw <= span) return lo + draw;
    }
}

PrimeInterval modulus_interval(uint64_t total_bits, unsigned tau) {
    if (tau < 2 || tau > kMaxTau) throw InputError("tau out of range: " + std::to_string(tau));
    if (total_bits < 2) throw InputError("total_bits must be >= 2");
    u128 const lo = u128{1} << (tau - 1);
    u128 const width = lo / (total_bits - 1);
    if (width < 1)
        throw IntervalError("prime interval empty for tau=" + std::to_string(tau) +
                            ", total_bits=" + std::to_string(total_bits));
    return {lo, lo + width};
}

Modulus sample_prime(u128 lo, u128 hi, Rng& rng) {
    if (lo > hi) throw InputError("sample_prime: lo > hi");
    unsigned const attempts = 64 * std::max(1u, bit_width(hi));
    for (unsigned k = 0; k < attempts; ++k) {
        u128 const x = rng.uniform(lo, hi);
        if (is_prime(x)) return Modulus(x);
    }
    throw SamplingError("no prime found in [" + to_string(lo) + ", " + to_string(hi) + "] after " +
                        std::to_string(attempts) + " draws");
}

Residue sample_seed(const Modulus& m, Rng& rng) {
    return {rng.uniform(0, m.q() - 1)};
}

} // namespace implicit_lce
