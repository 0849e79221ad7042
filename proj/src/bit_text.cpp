#include "implicit_lce/bit_text.hpp"

#include <algorithm>
#include <string>

#include "implicit_lce/bit_ops.hpp"
#include "implicit_lce/errors.hpp"

namespace implicit_lce {

namespace {

size_t words_for(size_t bits) {
    return (bits + 63) / 64;
}

template <class Char>
BitText pack_impl(std::span<const Char> chars, uint64_t sigma, BitText text) {
    unsigned const b = text.char_bits();
    for (size_t i = 0; i < chars.size(); ++i) {
        if (uint64_t{chars[i]} >= sigma)
            throw InputError("character " + std::to_string(uint64_t{chars[i]}) + " at position " +
                             std::to_string(i) + " is not below sigma=" + std::to_string(sigma));
        text.write_bits(i * b, b, chars[i]);
    }
    return text;
}

} // namespace

unsigned char_bits_for(uint64_t sigma) {
    if (sigma < 2) throw InputError("alphabet size must be >= 2");
    return std::max(1u, bit_width(sigma - 1));
}

BitText::BitText(size_t n_chars, unsigned char_bits, unsigned tau)
    : bit_length_(n_chars * char_bits), n_chars_(n_chars), char_bits_(char_bits), tau_(tau) {
    if (tau < 2 || tau > kMaxTau) throw InputError("tau out of range: " + std::to_string(tau));
    size_t const text_bits = n_chars * char_bits;
    pad_bits_ = static_cast<unsigned>((tau - text_bits % tau) % tau);
    words_.reserve(words_for(tau + pad_bits_ + text_bits));
    words_.assign(words_for(text_bits), 0);
}

BitText BitText::pack(std::span<const uint64_t> chars, uint64_t sigma, unsigned tau) {
    unsigned const b = char_bits_for(sigma);
    return pack_impl(chars, sigma, BitText(chars.size(), b, tau));
}

BitText BitText::pack(std::span<const uint8_t> bytes, uint64_t sigma, unsigned tau) {
    unsigned const b = char_bits_for(sigma);
    return pack_impl(bytes, sigma, BitText(bytes.size(), b, tau));
}

u128 BitText::read_bits(size_t pos, unsigned len) const {
    return bits::read(words_, pos, len);
}

void BitText::write_bits(size_t pos, unsigned len, u128 v) {
    bits::write(words_, pos, len, v);
}

// Overlapping moves: copies back-to-front when dst > src, front-to-back otherwise.
void BitText::copy_bits(size_t src, size_t dst, size_t len) {
    if (dst > src) {
        size_t remaining = len;
        while (remaining) {
            auto const take = static_cast<unsigned>(std::min<size_t>(64, remaining));
            remaining -= take;
            write_bits(dst + remaining, take, read_bits(src + remaining, take));
        }
    } else {
        for (size_t done = 0; done < len;) {
            auto const take = static_cast<unsigned>(std::min<size_t>(64, len - done));
            write_bits(dst + done, take, read_bits(src + done, take));
            done += take;
        }
    }
}

void BitText::attach_seed_block(Residue seed) {
    if (has_seed_block_) throw StateError("seed block already attached");
    if (bit_width(seed.value) > tau_) throw InputError("seed does not fit in tau bits");
    size_t const text_bits = bit_length_;
    size_t const shift = size_t{tau_} + pad_bits_;
    bit_length_ = text_bits + shift;
    words_.resize(words_for(bit_length_), 0);
    copy_bits(0, shift, text_bits);
    write_bits(tau_, pad_bits_, 0);
    write_bits(0, tau_, seed.value);
    has_seed_block_ = true;
}

void BitText::detach_seed_block() {
    if (!has_seed_block_) throw StateError("no seed block attached");
    if (encoded_) throw StateError("cannot detach the seed block of an encoded buffer");
    size_t const shift = size_t{tau_} + pad_bits_;
    size_t const text_bits = bit_length_ - shift;
    copy_bits(shift, 0, text_bits);
    bit_length_ = text_bits;
    words_.resize(words_for(bit_length_));
    // keep trailing bits of the last word zero so equal texts compare equal
    if (bit_length_ % 64) words_.back() &= ~bits::mask64(64 - bit_length_ % 64);
    has_seed_block_ = false;
}

size_t BitText::block_count() const {
    return bit_length_ / tau_;
}

u128 BitText::block_read(size_t i) const {
    if (bit_length_ % tau_) throw StateError("buffer length is not a multiple of tau");
    if (i >= block_count()) throw IndexError("block " + std::to_string(i) + " out of range");
    return read_bits(i * tau_, tau_);
}

void BitText::block_write(size_t i, u128 v) {
    if (bit_length_ % tau_) throw StateError("buffer length is not a multiple of tau");
    if (i >= block_count()) throw IndexError("block " + std::to_string(i) + " out of range");
    if (bit_width(v) > tau_) throw InputError("block value does not fit in tau bits");
    write_bits(i * tau_, tau_, v);
}

uint64_t BitText::char_read(size_t i) const {
    if (encoded_) throw StateError("text is encoded; use the index to extract characters");
    if (i >= n_chars_) throw IndexError("character " + std::to_string(i) + " out of range");
    return static_cast<uint64_t>(read_bits(text_offset() + i * char_bits_, char_bits_));
}

std::vector<uint64_t> BitText::chars() const {
    std::vector<uint64_t> out(n_chars_);
    for (size_t i = 0; i < n_chars_; ++i) out[i] = char_read(i);
    return out;
}

bool operator==(const BitText& a, const BitText& b) {
    return a.bit_length_ == b.bit_length_ && a.n_chars_ == b.n_chars_ && a.char_bits_ == b.char_bits_ &&
           a.tau_ == b.tau_ && a.has_seed_block_ == b.has_seed_block_ && a.encoded_ == b.encoded_ &&
           a.words_ == b.words_;
}

} // namespace implicit_lce
