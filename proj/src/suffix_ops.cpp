#include "implicit_lce/suffix_ops.hpp"

#include <algorithm>
#include <cassert>
#include <string>

#include "implicit_lce/errors.hpp"
#include "implicit_lce/in_place_merge.hpp"
#include "implicit_lce/seq_compress.hpp"
#include "implicit_lce/ztable.hpp"

namespace implicit_lce {

namespace {

auto suffix_less(const FingerprintIndex& idx, LceKind kind, const ZTable* zt) {
    return [&idx, kind, zt](uint64_t a, uint64_t b) { return idx.compare_suffixes(a, b, kind, zt) == Ordering::Less; };
}

template <class Less>
void heap_sort(std::span<uint64_t> s, Less less) {
    std::make_heap(s.begin(), s.end(), less);
    std::sort_heap(s.begin(), s.end(), less);
}

size_t ceil_log2(size_t n) {
    return n <= 1 ? 1 : bit_width(n - 1);
}

unsigned position_bits(size_t n) {
    return std::max(1u, bit_width(n ? n - 1 : 0));
}

void check_positions(const FingerprintIndex& idx, std::span<const uint64_t> s) {
    for (uint64_t p : s)
        if (p >= idx.size())
            throw IndexError("position " + std::to_string(p) + " out of range (n=" + std::to_string(idx.size()) + ")");
}

void check_distinct_sorted(std::span<const uint64_t> s) {
    for (size_t t = 1; t < s.size(); ++t)
        if (s[t] == s[t - 1]) throw InputError("position " + std::to_string(s[t]) + " appears more than once");
}

} // namespace

void sparse_suffix_sort(const FingerprintIndex& idx, std::span<uint64_t> s, bool strict_in_place,
                        SparseSortStats* stats) {
    check_positions(idx, s);
    SparseSortStats local;
    if (s.size() <= 1) {
        if (stats) *stats = local;
        return;
    }
    size_t const n = idx.size();

    if (!strict_in_place) {
        auto const zt = ZTable::build_heap(idx);
        std::sort(s.begin(), s.end(), suffix_less(idx, LceKind::Fast, &zt));
    } else {
        size_t const need = ZTable::required_bits(idx);
        size_t const lg = ceil_log2(n);
        size_t const split = std::min(s.size() / 2, std::max(n / (lg * lg * lg), need));
        if (split < need) {
            local.path = SortPath::SlowOnly;
            heap_sort(s, suffix_less(idx, LceKind::Slow, nullptr));
        } else {
            local.path = SortPath::Split;
            local.split_size = split;
            auto const head = s.first(split);
            auto const tail = s.subspan(split);
            auto segment = CompressedSegment::compress(head, position_bits(n));
            {
                auto const zt = ZTable::build_borrowed(idx, segment);
                heap_sort(tail, suffix_less(idx, LceKind::Fast, &zt));
            }
            segment.decompress();
            auto const slow = suffix_less(idx, LceKind::Slow, nullptr);
            heap_sort(head, slow);
            in_place_merge(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(split), s.end(), slow);
        }
    }
    check_distinct_sorted(s);
    if (stats) *stats = local;
}

namespace {

// LCE of two suffixes that must appear in this order; ContractError otherwise.
template <class Lce>
uint64_t ordered_lce(const FingerprintIndex& idx, uint64_t a, uint64_t b, Lce&& lce) {
    size_t const n = idx.size();
    if (a == b) throw ContractError("position " + std::to_string(a) + " repeated in sorted input");
    uint64_t const l = lce(a, b);
    bool ordered;
    if (a + l == n)
        ordered = true;
    else if (b + l == n)
        ordered = false;
    else
        ordered = idx.char_at(a + l) < idx.char_at(b + l);
    if (!ordered)
        throw ContractError("suffixes " + std::to_string(a) + " and " + std::to_string(b) + " are out of order");
    return l;
}

} // namespace

void sparse_lcp(const FingerprintIndex& idx, std::span<uint64_t> s) {
    check_positions(idx, s);
    auto const slow = [&idx](uint64_t a, uint64_t b) { return idx.lce_slow(a, b).length; };
    for (size_t t = s.size(); t-- > 1;) s[t] = ordered_lce(idx, s[t - 1], s[t], slow);
    if (!s.empty()) s[0] = 0;
}

std::vector<uint64_t> lcp_array(BitText& text, Rng& rng, LcpVariant variant, const BuildOptions& options,
                                LcpStats* stats) {
    size_t const n = text.size();
    Checker const checker = variant == LcpVariant::General ? Checker::Sort : Checker::Compact;
    auto certified = build_deterministic(std::move(text), rng, checker, options);
    Modulus const m = certified.modulus();
    Residue const seed = certified.seed();
    LcpStats local;
    local.retries = certified.retries();
    text = certified.restore_in_place();

    // the suffix array is built in the memory that becomes the LCP array
    std::vector<uint64_t> out(n);
    for (size_t i = 0; i < n; ++i) out[i] = i;
    auto idx = FingerprintIndex::encode_with(std::move(text), m, seed);
    auto const slow = suffix_less(idx, LceKind::Slow, nullptr);
    heap_sort(out, slow);

    auto const slow_lce = [&idx](uint64_t a, uint64_t b) { return idx.lce_slow(a, b).length; };
    std::span<uint64_t> const sa(out);
    size_t const need = ZTable::required_bits(idx);
    size_t const lg = ceil_log2(n);
    size_t const split = variant == LcpVariant::SmallAlphabet ? std::min(n / 2, std::max(n / (lg * lg), need)) : 0;

    if (variant == LcpVariant::General || split < need) {
        for (size_t t = n; t-- > 1;) out[t] = ordered_lce(idx, out[t - 1], out[t], slow_lce);
    } else {
        local.split_size = split;
        uint64_t const boundary = out[split - 1];
        auto const head = sa.first(split);
        auto segment = CompressedSegment::compress(head, position_bits(n));
        {
            auto const zt = ZTable::build_borrowed(idx, segment);
            auto const fast_lce = [&idx, &zt](uint64_t a, uint64_t b) { return idx.lce_fast(zt, a, b).length; };
            for (size_t t = n; t-- > split + 1;) out[t] = ordered_lce(idx, out[t - 1], out[t], fast_lce);
            out[split] = ordered_lce(idx, boundary, out[split], fast_lce);
        }
        segment.decompress();
        heap_sort(head, slow);
        for (size_t t = split; t-- > 1;) out[t] = ordered_lce(idx, out[t - 1], out[t], slow_lce);
    }
    if (n) out[0] = 0;
    text = idx.restore_in_place();
    if (stats) *stats = local;
    return out;
}

namespace {

// Suffixes strictly between two optional bounds.
struct Range {
    const FingerprintIndex& idx;
    bool has_low = false;
    uint64_t low = 0;
    bool has_high = false;
    uint64_t high = 0;

    bool contains(uint64_t x) const {
        if (has_low && idx.compare_suffixes(x, low, LceKind::Slow) != Ordering::Greater) return false;
        if (has_high && idx.compare_suffixes(x, high, LceKind::Slow) != Ordering::Less) return false;
        return true;
    }

    // k-th member in text order
    uint64_t nth(uint64_t k) const {
        for (uint64_t x = 0; x < idx.size(); ++x)
            if (contains(x) && k-- == 0) return x;
        throw StateError("range holds fewer suffixes than counted");
    }
};

} // namespace

uint64_t suffix_select(const FingerprintIndex& idx, uint64_t rank, Rng& rng, SelectStats* stats) {
    size_t const n = idx.size();
    if (rank >= n) throw IndexError("rank " + std::to_string(rank) + " out of range (n=" + std::to_string(n) + ")");
    SelectStats local;
    Range range{idx};
    uint64_t m = n;
    uint64_t r = rank;
    for (;;) {
        ++local.levels;
        if (m == 1) {
            uint64_t const x = range.nth(0);
            if (stats) *stats = local;
            return x;
        }
        for (;;) {
            uint64_t const pivot = range.nth(static_cast<uint64_t>(rng.uniform(0, m - 1)));
            uint64_t smaller = 0;
            for (uint64_t x = 0; x < n; ++x)
                if (x != pivot && range.contains(x) &&
                    idx.compare_suffixes(x, pivot, LceKind::Slow) == Ordering::Less)
                    ++smaller;
            uint64_t const larger = m - 1 - smaller;
            if (r == smaller) {
                if (stats) *stats = local;
                return pivot;
            }
            uint64_t const side = r < smaller ? smaller : larger;
            if (4 * side > 3 * m) {
                ++local.redraws;
                continue;
            }
            if (r < smaller) {
                range.has_high = true;
                range.high = pivot;
                m = smaller;
            } else {
                range.has_low = true;
                range.low = pivot;
                r -= smaller + 1;
                m = larger;
            }
            break;
        }
    }
}

} // namespace implicit_lce
