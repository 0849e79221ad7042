#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "implicit_lce/wide_arith.hpp"

namespace implicit_lce {

class FingerprintIndex;

// Number of bits per character for an alphabet of size sigma: ceil(log2 sigma).
unsigned char_bits_for(uint64_t sigma);

/*
 * Bit-packed text, b = ceil(log2 sigma) bits per character, stored
 * most-significant-bit first so that any bit range read as an integer is the
 * substring value.
 *
 * Layout once a seed block is attached:
 *
 *     [ seed : tau bits ][ pad_bits zeros ][ n*b text bits ]
 *
 * with pad_bits = (tau - n*b mod tau) mod tau, so the whole buffer is
 * tau * (1 + ceil(n*b / tau)) bits and splits into tau-bit blocks. pack()
 * reserves that capacity up front; attaching the seed never reallocates.
 */
class BitText {
public:
    BitText() = default;

    // Throws InputError if a character is >= sigma or sigma < 2.
    static BitText pack(std::span<const uint64_t> chars, uint64_t sigma, unsigned tau);
    static BitText pack(std::span<const uint8_t> bytes, uint64_t sigma, unsigned tau);

    void attach_seed_block(Residue seed);
    void detach_seed_block();

    // B[i]: the i-th tau-bit block of the buffer.
    u128 block_read(size_t i) const;
    void block_write(size_t i, u128 v);
    size_t block_count() const;

    // T[i]. StateError while the buffer holds an encoded index.
    uint64_t char_read(size_t i) const;
    std::vector<uint64_t> chars() const;

    // Raw bit access on the whole buffer, len <= 128.
    u128 read_bits(size_t pos, unsigned len) const;
    void write_bits(size_t pos, unsigned len, u128 v);

    size_t size() const { return n_chars_; }
    unsigned char_bits() const { return char_bits_; }
    unsigned tau() const { return tau_; }
    unsigned pad_bits() const { return pad_bits_; }
    bool has_seed_block() const { return has_seed_block_; }
    bool encoded() const { return encoded_; }
    size_t bit_length() const { return bit_length_; }
    // Bit offset of T[0] inside the buffer.
    size_t text_offset() const { return has_seed_block_ ? size_t{tau_} + pad_bits_ : 0; }

    std::span<const uint64_t> words() const { return words_; }

    friend bool operator==(const BitText& a, const BitText& b);

private:
    friend class FingerprintIndex;

    BitText(size_t n_chars, unsigned char_bits, unsigned tau);

    void copy_bits(size_t src, size_t dst, size_t len);

    std::vector<uint64_t> words_;
    size_t bit_length_ = 0;
    size_t n_chars_ = 0;
    unsigned char_bits_ = 1;
    unsigned tau_ = kDefaultTau;
    unsigned pad_bits_ = 0;
    bool has_seed_block_ = false;
    bool encoded_ = false;
};

} // namespace implicit_lce
