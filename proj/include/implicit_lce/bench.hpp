#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "implicit_lce/fingerprint_index.hpp"

namespace implicit_lce {

// One measured operation. For LCE queries ell is the answer and steps the
// window evaluations (plus power multiplications for slow queries); for
// sparse sorts ell is the number of positions and steps is 0.
struct BenchRecord {
    std::string op;
    uint64_t n = 0;
    // bits per character
    uint64_t b = 0;
    uint64_t ell = 0;
    uint64_t steps = 0;
    uint64_t nanos = 0;
};

// A slow and a fast query per pair.
std::vector<BenchRecord> bench_lce(const FingerprintIndex& idx, const std::vector<std::pair<uint64_t, uint64_t>>& pairs);

// `count` random pairs; half of them are offset by a random period
// 1..16 so that long extensions show up on repetitive texts.
std::vector<std::pair<uint64_t, uint64_t>> random_pairs(size_t n, size_t count, Rng& rng);

BenchRecord bench_sparse_sort(const FingerprintIndex& idx, size_t count, Rng& rng, bool strict_in_place);

std::string to_json_line(const BenchRecord& r);

// Envelopes every query must respect.
double slow_step_bound(uint64_t ell);
double fast_step_bound(uint64_t ell);

} // namespace implicit_lce
