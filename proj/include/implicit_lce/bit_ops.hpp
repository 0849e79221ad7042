#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>

#include "implicit_lce/wide_arith.hpp"

// MSB-first bit-stream access over 64-bit words: bit p lives in word p/64 at
// bit 63 - p%64. Reads past the end of the span yield zeros.
namespace implicit_lce::bits {

constexpr uint64_t mask64(unsigned bits) {
    return bits >= 64 ? ~uint64_t{0} : (uint64_t{1} << bits) - 1;
}

inline uint64_t word_at(std::span<const uint64_t> words, size_t w) {
    return w < words.size() ? words[w] : 0;
}

// len <= 128
inline u128 read(std::span<const uint64_t> words, size_t pos, unsigned len) {
    if (len == 0) return 0;
    size_t const w = pos >> 6;
    unsigned const off = pos & 63;
    unsigned const need = off + len;
    u128 const top = (u128{word_at(words, w)} << 64) | word_at(words, w + 1);
    if (need <= 128) return (top >> (128 - need)) & low_mask(len);
    unsigned const extra = need - 128;
    return ((top << extra) | (word_at(words, w + 2) >> (64 - extra))) & low_mask(len);
}

// len <= 128; the range must lie inside the span
inline void write(std::span<uint64_t> words, size_t pos, unsigned len, u128 v) {
    size_t const end = pos + len;
    while (pos < end) {
        size_t const w = pos >> 6;
        unsigned const off = pos & 63;
        auto const take = static_cast<unsigned>(std::min<size_t>(64 - off, end - pos));
        auto const chunk = static_cast<uint64_t>(v >> (end - pos - take)) & mask64(take);
        unsigned const shift = 64 - off - take;
        uint64_t const m = mask64(take) << shift;
        words[w] = (words[w] & ~m) | (chunk << shift);
        pos += take;
    }
}

} // namespace implicit_lce::bits
