#include "implicit_lce/derandomizer.hpp"

#include <algorithm>
#include <cassert>
#include <string>
#include <vector>

#include "implicit_lce/errors.hpp"
#include "implicit_lce/in_place_merge.hpp"
#include "implicit_lce/radix_sort.hpp"

namespace implicit_lce {

namespace {

// Fingerprints of all windows of 2^e characters plus the check of a pair
// with equal fingerprints.
class Level {
public:
    Level(const FingerprintIndex& idx, unsigned e, Residue z, Residue z_half)
        : idx_(idx), e_(e), len_(size_t{1} << e), z_(z), z_half_(z_half) {}

    size_t windows() const { return idx_.size() - len_ + 1; }
    Residue fp(size_t i) const { return idx_.window_fp(i, len_, z_); }

    // true if windows i and j are really equal
    bool same(size_t i, size_t j) const {
        if (e_ == 0) return idx_.char_at(i) == idx_.char_at(j);
        size_t const h = len_ / 2;
        return idx_.window_fp(i, h, z_half_) == idx_.window_fp(j, h, z_half_) &&
               idx_.window_fp(i + h, h, z_half_) == idx_.window_fp(j + h, h, z_half_);
    }

    unsigned e() const { return e_; }

private:
    const FingerprintIndex& idx_;
    unsigned e_;
    size_t len_;
    Residue z_;
    Residue z_half_;
};

// Runs `check_level` for each level, stopping at the first witness.
template <class CheckLevel>
CollisionReport run_levels(const FingerprintIndex& idx, CheckLevel&& check_level) {
    CollisionReport report;
    size_t const n = idx.size();
    if (n == 0) return report;
    unsigned const levels = bit_width(n);
    Residue z = idx.y();
    Residue z_half = z;
    for (unsigned e = 0; e < levels; ++e) {
        assert(report.levels_passed == e);
        Level const level(idx, e, z, z_half);
        if (auto w = check_level(level)) {
            report.ok = false;
            report.failing_level = e;
            report.witness = w;
            return report;
        }
        ++report.levels_passed;
        z_half = z;
        z = mul_mod(z, z, idx.modulus());
    }
    return report;
}

using Witness = std::optional<std::pair<uint64_t, uint64_t>>;

// Walks positions sorted by (fp, position) and verifies neighbours with
// equal fingerprints.
template <class Positions>
Witness scan_sorted(const Level& level, const Positions& sorted, size_t count) {
    for (size_t k = 1; k < count; ++k) {
        uint64_t const a = sorted[k - 1], b = sorted[k];
        if (level.fp(a) == level.fp(b) && !level.same(a, b)) return std::make_pair(a, b);
    }
    return std::nullopt;
}

} // namespace

CollisionReport check_collisions_hashed(const FingerprintIndex& idx) {
    size_t capacity = 1;
    while (capacity < 2 * idx.size()) capacity *= 2;
    constexpr uint64_t kEmpty = ~uint64_t{0};
    std::vector<Residue> keys(capacity);
    std::vector<uint64_t> owner(capacity);

    return run_levels(idx, [&](const Level& level) -> Witness {
        std::fill(owner.begin(), owner.end(), kEmpty);
        for (size_t i = 0; i < level.windows(); ++i) {
            Residue const fp = level.fp(i);
            auto slot = static_cast<size_t>(fp.value & (capacity - 1));
            while (owner[slot] != kEmpty && keys[slot] != fp) slot = (slot + 1) & (capacity - 1);
            if (owner[slot] == kEmpty) {
                keys[slot] = fp;
                owner[slot] = i;
            } else if (!level.same(owner[slot], i)) {
                return std::make_pair(owner[slot], uint64_t{i});
            }
        }
        return std::nullopt;
    });
}

CollisionReport check_collisions_sorted(const FingerprintIndex& idx) {
    std::vector<uint64_t> a(idx.size());
    return run_levels(idx, [&](const Level& level) -> Witness {
        size_t const m = level.windows();
        for (size_t i = 0; i < m; ++i) a[i] = i;
        std::sort(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(m), [&](uint64_t x, uint64_t y) {
            Residue const fx = level.fp(x), fy = level.fp(y);
            return fx != fy ? fx < fy : x < y;
        });
        return scan_sorted(level, a, m);
    });
}

namespace {

// Chunk boundaries of the compact checker: r_0 = m, r_{k+1} = r_k - floor(r_k / (c+1)).
size_t chunk_take(size_t r, size_t c) {
    return r / (c + 1);
}

} // namespace

CollisionReport check_collisions_compact(const FingerprintIndex& idx) {
    std::vector<uint64_t> a(idx.size());
    unsigned const tau = idx.tau();
    unsigned const pos_bits = std::max(1u, bit_width(idx.size()));
    unsigned const key_bits = tau + pos_bits;
    size_t const c = (key_bits + 63) / 64;

    return run_levels(idx, [&](const Level& level) -> Witness {
        size_t const m = level.windows();
        auto const less = [&](uint64_t x, uint64_t y) {
            Residue const fx = level.fp(x), fy = level.fp(y);
            return fx != fy ? fx < fy : x < y;
        };

        // a[r, m) collects sorted runs; positions [0, r) are still unsorted
        size_t r = m;
        for (size_t t; (t = chunk_take(r, c)) > 0; r -= t) {
            std::span<uint64_t> const records(a.data(), t * c);
            std::fill(records.begin(), records.end(), 0);
            for (size_t k = 0; k < t; ++k) {
                uint64_t const pos = r - t + k;
                uint64_t* rec = records.data() + k * c;
                u128 const fp = level.fp(pos).value;
                // key = fp (tau bits) then pos (pos_bits bits), left aligned
                for (unsigned bit = 0; bit < key_bits; ++bit) {
                    bool const v = bit < tau ? (fp >> (tau - 1 - bit)) & 1 : (pos >> (key_bits - 1 - bit)) & 1;
                    if (v) rec[bit / 64] |= uint64_t{1} << (63 - bit % 64);
                }
            }
            RecordSorter sorter(records, c, key_bits);
            sorter.sort();
            // compact to positions; destination lies right of every record
            for (size_t k = 0; k < t; ++k) {
                uint64_t const* rec = records.data() + k * c;
                uint64_t pos = 0;
                for (unsigned bit = tau; bit < key_bits; ++bit)
                    pos = (pos << 1) | ((rec[bit / 64] >> (63 - bit % 64)) & 1);
                a[r - t + k] = pos;
            }
        }
        // tail too short for records
        for (size_t k = 0; k < r; ++k) {
            uint64_t const pos = k;
            size_t j = k;
            while (j > 0 && less(pos, a[j - 1])) {
                a[j] = a[j - 1];
                --j;
            }
            a[j] = pos;
        }
        // merge runs right to left: [0, r) absorbs each following run
        size_t sorted_end = r;
        while (sorted_end < m) {
            // recompute the run that starts at sorted_end
            size_t rr = m, run_end = m;
            while (rr > sorted_end) {
                run_end = rr;
                rr -= chunk_take(rr, c);
            }
            assert(rr == sorted_end);
            in_place_merge(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(sorted_end),
                           a.begin() + static_cast<std::ptrdiff_t>(run_end), less);
            sorted_end = run_end;
        }
        assert(std::is_sorted(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(m), less));
        return scan_sorted(level, a, m);
    });
}

CollisionReport check_collisions(const FingerprintIndex& idx, Checker checker) {
    switch (checker) {
    case Checker::Hash:
        return check_collisions_hashed(idx);
    case Checker::Sort:
        return check_collisions_sorted(idx);
    case Checker::Compact:
        return check_collisions_compact(idx);
    }
    throw InputError("unknown checker");
}

const char* checker_name(Checker checker) {
    switch (checker) {
    case Checker::Hash:
        return "hash";
    case Checker::Sort:
        return "sort";
    case Checker::Compact:
        return "compact";
    }
    return "?";
}

FingerprintIndex build_deterministic(BitText&& text, Rng& rng, Checker checker, const BuildOptions& options) {
    unsigned spent = 0;
    while (spent < options.max_retries) {
        BuildOptions round = options;
        round.max_retries = options.max_retries - spent;
        auto idx = FingerprintIndex::build_in_place(std::move(text), rng, round);
        spent += idx.retries();
        if (check_collisions(idx, checker).ok) {
            idx.set_retries(spent);
            return idx;
        }
        text = idx.restore_in_place();
    }
    throw BuildError("no collision-free (q, seed) pair found in " + std::to_string(options.max_retries) + " attempts");
}

} // namespace implicit_lce
