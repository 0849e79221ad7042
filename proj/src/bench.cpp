#include "implicit_lce/bench.hpp"

#include <chrono>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "implicit_lce/suffix_ops.hpp"
#include "implicit_lce/ztable.hpp"

namespace implicit_lce {

namespace {

using Clock = std::chrono::steady_clock;

uint64_t nanos_since(Clock::time_point start) {
    return static_cast<uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count());
}

} // namespace

std::vector<BenchRecord> bench_lce(const FingerprintIndex& idx, const std::vector<std::pair<uint64_t, uint64_t>>& pairs) {
    auto const zt = ZTable::build_heap(idx);
    std::vector<BenchRecord> out;
    out.reserve(2 * pairs.size());
    for (auto [i, j] : pairs) {
        auto start = Clock::now();
        auto const slow = idx.lce_slow(i, j);
        out.push_back({"lce_slow", idx.size(), idx.char_bits(), slow.length, slow.steps, nanos_since(start)});
        start = Clock::now();
        auto const fast = idx.lce_fast(zt, i, j);
        out.push_back({"lce_fast", idx.size(), idx.char_bits(), fast.length, fast.steps, nanos_since(start)});
    }
    return out;
}

std::vector<std::pair<uint64_t, uint64_t>> random_pairs(size_t n, size_t count, Rng& rng) {
    std::vector<std::pair<uint64_t, uint64_t>> out;
    if (n == 0) return out;
    out.reserve(count);
    for (size_t k = 0; k < count; ++k) {
        uint64_t const i = rng.next() % n;
        uint64_t j = rng.next() % n;
        if (k % 2) j = std::min<uint64_t>(n - 1, i + 1 + rng.next() % 16);
        out.emplace_back(i, j);
    }
    return out;
}

BenchRecord bench_sparse_sort(const FingerprintIndex& idx, size_t count, Rng& rng, bool strict_in_place) {
    size_t const n = idx.size();
    count = std::min(count, n);
    std::vector<uint64_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    for (size_t k = 0; k < count; ++k) std::swap(all[k], all[k + rng.next() % (n - k)]);
    all.resize(count);
    auto const start = Clock::now();
    sparse_suffix_sort(idx, all, strict_in_place);
    return {strict_in_place ? "ssa_strict" : "ssa", n, idx.char_bits(), count, 0, nanos_since(start)};
}

std::string to_json_line(const BenchRecord& r) {
    nlohmann::json const j = {{"op", r.op}, {"n", r.n}, {"b", r.b}, {"ell", r.ell}, {"steps", r.steps}, {"nanos", r.nanos}};
    return j.dump();
}

double slow_step_bound(uint64_t ell) {
    double const l = std::log2(static_cast<double>(ell) + 2) + 2;
    return 8 * l * l;
}

double fast_step_bound(uint64_t ell) {
    return 8 * (std::log2(static_cast<double>(ell) + 2) + 2);
}

} // namespace implicit_lce
