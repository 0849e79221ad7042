#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "implicit_lce/fingerprint_index.hpp"

namespace implicit_lce {

enum class Checker { Hash, Sort, Compact };

struct CollisionReport {
    bool ok = true;
    // window length 2^failing_level characters
    std::optional<unsigned> failing_level;
    // two start positions whose windows share a fingerprint but differ
    std::optional<std::pair<uint64_t, uint64_t>> witness;
    // levels fully certified before stopping
    unsigned levels_passed = 0;
};

// Each checker certifies that rk is collision-free among all character
// windows of length 2^e, for e = 0..floor(log2 n) in increasing order, and
// stops at the first witness. Level 0 compares characters directly; level e
// compares the two half-window fingerprints, which is exact once level e-1
// has passed. All take O(n) words of workspace.

// Linear-probing hash table keyed by fingerprint.
CollisionReport check_collisions_hashed(const FingerprintIndex& idx);
// Position array sorted by fingerprint, adjacent pairs verified.
CollisionReport check_collisions_sorted(const FingerprintIndex& idx);
// fingerprint:position records radix sorted in shrinking chunks of the
// position array, then merged in place.
CollisionReport check_collisions_compact(const FingerprintIndex& idx);

CollisionReport check_collisions(const FingerprintIndex& idx, Checker checker);

// Rebuilds until the encoding fits and the checker finds no collision.
// retries() of the result counts every (q, seed) pair drawn. On BuildError
// (budget of options.max_retries pairs spent) `text` is left plain.
FingerprintIndex build_deterministic(BitText&& text, Rng& rng, Checker checker, const BuildOptions& options = {});

const char* checker_name(Checker checker);

} // namespace implicit_lce
