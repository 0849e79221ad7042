#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "implicit_lce/bit_text.hpp"
#include "implicit_lce/wide_arith.hpp"

namespace implicit_lce {

// first header word of a serialized index, "1ASSCELI" little-endian
inline constexpr uint64_t kIndexMagic = 0x494C454353534131ULL;

class ZTable;

// What to do when a prefix fingerprint has its top bit set during encoding.
enum class OverflowPolicy {
    // undo the partial encoding and report failure (production builds)
    Reject,
    // remember the block in a side list (test-mode builds with tiny tau)
    Keep,
};

struct BuildOptions {
    // number of (q, seed) pairs to try before giving up
    unsigned max_retries = 64;
    // allows tau below kMinProductionTau and widens the prime interval when
    // it is empty or prime-free
    bool test_mode = false;
};

// A prime q of exactly tau bits from modulus_interval(total_bits, tau). In
// test mode an empty or prime-free interval is doubled in width (capped at
// 2^tau - 1) until a prime is found.
Modulus draw_modulus(uint64_t total_bits, unsigned tau, Rng& rng, bool test_mode);

enum class LceKind { Slow, Fast };

enum class Ordering { Less, Equal, Greater };

struct LcePair {
    uint64_t i = 0;
    uint64_t j = 0;
    uint64_t length = 0;
    // fingerprint windows evaluated (plus modular multiplications spent on
    // powers, for slow queries)
    uint64_t steps = 0;
};

/*
 * Karp-Rabin LCE structure that replaces the text it indexes.
 *
 * The text is seen as tau-bit blocks B[0..K) with B[0] the random seed. For
 * k >= 1 the block is overwritten with
 *
 *     [ D[k] : 1 bit ][ P'[k] : tau-1 bits ]
 *
 * where P'[k] = (2^tau * P'[k-1] + B[k]) mod q is the fingerprint of the
 * whole prefix up to and including block k, and D[k] = floor(B[k] / q). A
 * build only succeeds when every P'[k] < 2^(tau-1), so nothing else needs to
 * be stored and the encoded buffer has exactly the size of the plain one.
 * B[k] comes back as ((P'[k] - 2^tau * P'[k-1]) mod q) + D[k] * q.
 *
 * Bit positions in prefix_fp/substring_fp are positions in the whole buffer
 * (seed block included). Character positions everywhere else are positions
 * in the original text.
 *
 * An encoded index is immutable; queries are safe from many threads.
 */
class FingerprintIndex {
public:
    enum class Mode { Plain, Encoded };

    // Draws (q, seed) pairs until the encoding fits. On success the buffer of
    // `text` is taken over; on BuildError `text` is left untouched and plain.
    static FingerprintIndex build_in_place(BitText&& text, Rng& rng, const BuildOptions& options = {});

    // Encodes with a caller-chosen modulus and seed. With Reject, throws
    // BuildError (text left plain) if some prefix overflows.
    static FingerprintIndex encode_with(BitText&& text, const Modulus& m, Residue seed,
                                        OverflowPolicy policy = OverflowPolicy::Reject);

    FingerprintIndex(FingerprintIndex&& other) noexcept;
    FingerprintIndex& operator=(FingerprintIndex&& other) noexcept;
    FingerprintIndex(const FingerprintIndex&) = delete;
    FingerprintIndex& operator=(const FingerprintIndex&) = delete;
    ~FingerprintIndex() = default;

    // Decodes the buffer back to the original text. StateError if this
    // index was already restored (or moved from).
    BitText restore_in_place();

    // rk of buffer bits [0, i].
    Residue prefix_fp(size_t i) const;
    // rk of buffer bits [i, j], O(log(j-i+1)).
    Residue substring_fp(size_t i, size_t j) const;
    // Same with E = 2^(j-i+1) mod q supplied by the caller, O(1).
    Residue substring_fp_with_exp(size_t i, size_t j, Residue E) const;
    // rk of characters [c, c+len), len >= 1, with E = y^len.
    Residue window_fp(size_t c, size_t len, Residue E) const;

    LcePair lce_slow(size_t i, size_t j) const;
    LcePair lce_fast(const ZTable& zt, size_t i, size_t j) const;
    LcePair lce(size_t i, size_t j, LceKind kind, const ZTable* zt = nullptr) const;

    uint64_t char_at(size_t i) const;
    std::vector<uint64_t> extract(size_t i, size_t m) const;

    // Exhausted suffix sorts first; Equal only for i == j.
    Ordering compare_suffixes(size_t i, size_t j, LceKind kind, const ZTable* zt = nullptr) const;

    // P'[k] and B[k], reconstructed from the encoded blocks.
    Residue stored_prefix(size_t k) const;
    u128 decoded_block(size_t k) const;

    Mode mode() const { return mode_; }
    size_t size() const { return text_.size(); }
    unsigned char_bits() const { return text_.char_bits(); }
    unsigned tau() const { return m_.tau(); }
    const Modulus& modulus() const { return m_; }
    Residue seed() const { return seed_; }
    // 2^b mod q
    Residue y() const { return y_; }
    unsigned pad_bits() const { return text_.pad_bits(); }
    size_t bit_length() const { return text_.bit_length(); }
    size_t block_count() const { return text_.block_count(); }
    // (q, seed) pairs drawn to obtain this index
    unsigned retries() const { return retries_; }
    void set_retries(unsigned r) { retries_ = r; }
    // blocks whose P' has the top bit set; always empty outside OverflowPolicy::Keep
    const std::vector<uint64_t>& overflow_blocks() const { return overflow_; }
    const BitText& storage() const { return text_; }

    void serialize(std::ostream& out) const;
    static FingerprintIndex deserialize(std::istream& in);

private:
    FingerprintIndex(BitText&& text, const Modulus& m, Residue seed, std::vector<uint64_t> overflow);

    // Encodes blocks 1.. of `text` (attaching the seed block first). With
    // Reject, an overflowing prefix undoes everything and returns false.
    static bool encode_blocks(BitText& text, const Modulus& m, Residue seed, OverflowPolicy policy,
                              std::vector<uint64_t>& overflow);
    // Turns encoded blocks [1, end) back into text blocks.
    static void decode_blocks(BitText& text, const Modulus& m, Residue seed, const std::vector<uint64_t>& overflow,
                              size_t end);

    void require_encoded() const;
    bool overflowed(size_t k) const;
    Residue prefix_before(size_t bit) const;
    Residue block_pow(unsigned bits) const;
    u128 decode(size_t k, Residue p_prev, Residue p_cur) const;

    BitText text_;
    Modulus m_;
    Residue seed_;
    Residue y_;
    Residue pow_tau_;
    std::vector<uint64_t> overflow_;
    unsigned retries_ = 1;
    Mode mode_ = Mode::Plain;
};

static_assert(sizeof(FingerprintIndex) <= 32 * sizeof(uint64_t), "index metadata must stay within 32 words");

} // namespace implicit_lce
