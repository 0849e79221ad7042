#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "implicit_lce/wide_arith.hpp"

namespace implicit_lce {

class CompressedSegment;

// A run of bits lent out by a CompressedSegment. Returning the lease (on
// destruction or release()) is what allows the segment to be decompressed.
class BitLease {
public:
    BitLease() = default;
    BitLease(BitLease&& other) noexcept;
    BitLease& operator=(BitLease&& other) noexcept;
    BitLease(const BitLease&) = delete;
    BitLease& operator=(const BitLease&) = delete;
    ~BitLease() { release(); }

    size_t size() const { return bits_; }
    bool active() const { return owner_ != nullptr; }

    // len <= 128, offset + len <= size()
    u128 read(size_t offset, unsigned len) const;
    void write(size_t offset, unsigned len, u128 v);

    void release();

private:
    friend class CompressedSegment;
    BitLease(CompressedSegment* owner, std::span<uint64_t> words, size_t first_bit, size_t bits)
        : owner_(owner), words_(words), first_bit_(first_bit), bits_(bits) {}

    CompressedSegment* owner_ = nullptr;
    std::span<uint64_t> words_;
    size_t first_bit_ = 0;
    size_t bits_ = 0;
};

/*
 * Space-creation trick for a segment of k integers of element_bits bits each
 * (one per 64-bit word for addressing): sort the segment, record where the
 * elements with the top bit set begin, and pack the remaining element_bits-1
 * low bits of every element at the front. Conceptually the segment is
 * k*element_bits bits; the payload takes k*(element_bits-1), so k bits at
 * the back become free and can be leased out.
 *
 * compress() DESTROYS the original element order: decompress() gives back the
 * sorted multiset, not the input sequence.
 *
 * The segment memory is borrowed; the caller keeps it alive and untouched
 * until decompress().
 */
class CompressedSegment {
public:
    // Throws InputError if an element does not fit in element_bits.
    static CompressedSegment compress(std::span<uint64_t> segment, unsigned element_bits);

    CompressedSegment(CompressedSegment&&) = delete;
    CompressedSegment& operator=(CompressedSegment&&) = delete;
    ~CompressedSegment() = default;

    // Lends `bits` free bits; CapacityError if more than free_bits() remain
    // or a lease is already out.
    BitLease lease(size_t bits);

    // Restores the sorted elements at full width. StateError while a lease is active.
    void decompress();

    size_t size() const { return segment_.size(); }
    unsigned element_bits() const { return element_bits_; }
    size_t split_index() const { return split_index_; }
    size_t free_bits() const { return segment_.size(); }
    size_t payload_bits() const { return segment_.size() * (element_bits_ - 1); }
    bool lease_active() const { return leased_; }
    bool decompressed() const { return decompressed_; }

    // Element t of the packed (sorted) sequence, valid until decompress().
    uint64_t element(size_t t) const;

private:
    friend class BitLease;
    CompressedSegment(std::span<uint64_t> segment, unsigned element_bits, size_t split_index)
        : segment_(segment), element_bits_(element_bits), split_index_(split_index) {}

    std::span<uint64_t> segment_;
    unsigned element_bits_;
    size_t split_index_ = 0;
    bool leased_ = false;
    bool decompressed_ = false;
};

} // namespace implicit_lce
