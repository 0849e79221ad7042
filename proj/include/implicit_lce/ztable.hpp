#pragma once

#include <cstddef>
#include <vector>

#include "implicit_lce/fingerprint_index.hpp"
#include "implicit_lce/seq_compress.hpp"

namespace implicit_lce {

// z_e = 2^(b * 2^e) mod q for e = 0..floor(log2 n): the multipliers of
// power-of-two-length character windows. Immutable once built.
class ZTable {
public:
    enum class StorageKind { Heap, BorrowedBits };

    // O(log n)-word heap allocation.
    static ZTable build_heap(const FingerprintIndex& idx);
    // Entries live in bits leased from `segment`; CapacityError if it cannot
    // lend tau * entry_count(n) bits. The table must not outlive the segment,
    // and holds the lease until destroyed.
    static ZTable build_borrowed(const FingerprintIndex& idx, CompressedSegment& segment);

    // floor(log2 n) + 1 (one entry for n <= 1)
    static size_t entry_count(size_t n);
    static size_t required_bits(const FingerprintIndex& idx);

    Residue operator[](size_t e) const;
    size_t size() const { return count_; }
    StorageKind storage_kind() const { return kind_; }
    // true if built for an index with this modulus and character width
    bool matches(const FingerprintIndex& idx) const;

private:
    ZTable(StorageKind kind, size_t count, const FingerprintIndex& idx);

    StorageKind kind_;
    size_t count_;
    unsigned width_;
    u128 q_;
    unsigned char_bits_;
    std::vector<Residue> heap_;
    BitLease lease_;
};

} // namespace implicit_lce
