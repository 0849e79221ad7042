#include "implicit_lce/seq_compress.hpp"

#include <algorithm>
#include <cassert>
#include <string>

#include "implicit_lce/bit_ops.hpp"
#include "implicit_lce/errors.hpp"

namespace implicit_lce {

BitLease::BitLease(BitLease&& other) noexcept
    : owner_(other.owner_), words_(other.words_), first_bit_(other.first_bit_), bits_(other.bits_) {
    other.owner_ = nullptr;
}

BitLease& BitLease::operator=(BitLease&& other) noexcept {
    if (this != &other) {
        release();
        owner_ = other.owner_;
        words_ = other.words_;
        first_bit_ = other.first_bit_;
        bits_ = other.bits_;
        other.owner_ = nullptr;
    }
    return *this;
}

u128 BitLease::read(size_t offset, unsigned len) const {
    assert(owner_ && offset + len <= bits_);
    return bits::read(words_, first_bit_ + offset, len);
}

void BitLease::write(size_t offset, unsigned len, u128 v) {
    assert(owner_ && offset + len <= bits_);
    bits::write(words_, first_bit_ + offset, len, v);
}

void BitLease::release() {
    if (owner_) {
        owner_->leased_ = false;
        owner_ = nullptr;
    }
}

CompressedSegment CompressedSegment::compress(std::span<uint64_t> segment, unsigned element_bits) {
    if (element_bits < 1 || element_bits > 64) throw InputError("element width must be in [1, 64]");
    uint64_t const top = uint64_t{1} << (element_bits - 1);
    for (uint64_t v : segment)
        if (element_bits < 64 && v >> element_bits)
            throw InputError("element " + std::to_string(v) + " does not fit in " + std::to_string(element_bits) +
                             " bits");

    // heap sort: no auxiliary memory
    std::make_heap(segment.begin(), segment.end());
    std::sort_heap(segment.begin(), segment.end());
    auto const split =
        static_cast<size_t>(std::partition_point(segment.begin(), segment.end(), [&](uint64_t v) { return !(v & top); }) -
                            segment.begin());

    // element t is read before its packed image (which ends at or before bit
    // 64(t+1)) is written, and nothing after word t is touched
    unsigned const width = element_bits - 1;
    for (size_t t = 0; t < segment.size(); ++t) {
        uint64_t const low = segment[t] & bits::mask64(width);
        bits::write(segment, t * width, width, low);
    }
    return CompressedSegment(segment, element_bits, split);
}

uint64_t CompressedSegment::element(size_t t) const {
    if (decompressed_) throw StateError("segment already decompressed");
    if (t >= segment_.size()) throw IndexError("element index out of range");
    unsigned const width = element_bits_ - 1;
    auto const low = static_cast<uint64_t>(bits::read(segment_, t * width, width));
    return t >= split_index_ ? low | (uint64_t{1} << width) : low;
}

BitLease CompressedSegment::lease(size_t bits) {
    if (decompressed_) throw StateError("segment already decompressed");
    if (leased_) throw CapacityError("segment already has an active lease");
    if (bits > free_bits())
        throw CapacityError("requested " + std::to_string(bits) + " bits, only " + std::to_string(free_bits()) +
                            " freed");
    leased_ = true;
    return BitLease(this, segment_, payload_bits(), bits);
}

void CompressedSegment::decompress() {
    if (decompressed_) throw StateError("segment already decompressed");
    if (leased_) throw StateError("cannot decompress while bits are leased out");
    // back to front: word t only overlaps packed bits of elements >= t
    for (size_t t = segment_.size(); t-- > 0;) segment_[t] = element(t);
    decompressed_ = true;
}

} // namespace implicit_lce
