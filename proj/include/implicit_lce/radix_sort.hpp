#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>

namespace implicit_lce {

// In-place MSD binary radix sort of fixed-size records. Each record is
// `record_words` consecutive words; its key is the first `key_bits` bits read
// MSB-first across those words. O(record_words) extra words plus recursion
// depth key_bits.
class RecordSorter {
public:
    RecordSorter(std::span<uint64_t> data, size_t record_words, unsigned key_bits)
        : data_(data), c_(record_words), key_bits_(key_bits) {}

    void sort() { sort_range(0, count(), 0); }

    size_t count() const { return c_ ? data_.size() / c_ : 0; }
    uint64_t* record(size_t r) { return data_.data() + r * c_; }

private:
    bool bit(size_t r, unsigned d) const { return (data_[r * c_ + d / 64] >> (63 - d % 64)) & 1; }

    void swap_records(size_t r, size_t s) {
        for (size_t w = 0; w < c_; ++w) std::swap(data_[r * c_ + w], data_[s * c_ + w]);
    }

    void sort_range(size_t lo, size_t hi, unsigned d) {
        while (hi - lo > 1 && d < key_bits_) {
            size_t i = lo, j = hi;
            while (i < j) {
                if (!bit(i, d)) {
                    ++i;
                } else {
                    --j;
                    swap_records(i, j);
                }
            }
            // recurse on the smaller side, loop on the larger
            if (i - lo < hi - i) {
                sort_range(lo, i, d + 1);
                lo = i;
            } else {
                sort_range(i, hi, d + 1);
                hi = i;
            }
            ++d;
        }
    }

    std::span<uint64_t> data_;
    size_t c_;
    unsigned key_bits_;
};

} // namespace implicit_lce
