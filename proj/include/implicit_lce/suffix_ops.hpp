#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "implicit_lce/derandomizer.hpp"
#include "implicit_lce/fingerprint_index.hpp"

namespace implicit_lce {

enum class SortPath {
    // heap ZTable, fast queries throughout
    Heap,
    // strict mode with too few positions to lend a ZTable: slow queries only
    SlowOnly,
    // strict mode: compress S', sort S'' fast on borrowed bits, sort S' slow, merge
    Split,
};

struct SparseSortStats {
    SortPath path = SortPath::Heap;
    // |S'| on the Split path
    size_t split_size = 0;
};

// Sorts `positions` by their suffixes (shorter suffix first on a tie). Throws
// IndexError for a position >= n and InputError for a repeated position.
// With strict_in_place no heap memory is allocated: the ZTable lives in bits
// freed by compressing a prefix of `positions`.
void sparse_suffix_sort(const FingerprintIndex& idx, std::span<uint64_t> positions, bool strict_in_place = false,
                        SparseSortStats* stats = nullptr);

// Overwrites suffix-sorted positions with their sparse LCP array, first entry
// 0, using slow queries and O(1) words. ContractError if the input turns out
// not to be sorted.
void sparse_lcp(const FingerprintIndex& idx, std::span<uint64_t> sorted_positions);

enum class LcpVariant {
    // collision check by sorting, conversion with slow queries
    General,
    // compact collision check, most of the conversion with fast queries on
    // bits borrowed from a compressed part of the suffix array
    SmallAlphabet,
};

struct LcpStats {
    // (q, seed) pairs drawn by the deterministic build
    unsigned retries = 0;
    // |SA'| when the SmallAlphabet split was used, else 0
    size_t split_size = 0;
};

// Full LCP array (entry 0 is 0) of `text`, exact. The text is encoded in
// place during the computation and is plain again on return.
std::vector<uint64_t> lcp_array(BitText& text, Rng& rng, LcpVariant variant = LcpVariant::General,
                                const BuildOptions& options = {}, LcpStats* stats = nullptr);

struct SelectStats {
    unsigned levels = 0;
    // pivots thrown away because they left more than 3/4 of the range on the chosen side
    unsigned redraws = 0;
};

// Position of the suffix with exactly `rank` smaller suffixes. O(1) words
// with slow queries.
uint64_t suffix_select(const FingerprintIndex& idx, uint64_t rank, Rng& rng, SelectStats* stats = nullptr);

} // namespace implicit_lce
