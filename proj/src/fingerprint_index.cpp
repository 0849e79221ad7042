#include "implicit_lce/fingerprint_index.hpp"

#include <algorithm>
#include <cassert>
#include <string>
#include <utility>

#include "implicit_lce/errors.hpp"
#include "implicit_lce/ztable.hpp"

namespace implicit_lce {

Modulus draw_modulus(uint64_t total_bits, unsigned tau, Rng& rng, bool test_mode) {
    if (!test_mode) {
        auto const iv = modulus_interval(total_bits, tau);
        return sample_prime(iv.lo, iv.hi, rng);
    }
    u128 const lo = u128{1} << (tau - 1);
    u128 const max_hi = (u128{1} << tau) - 1;
    u128 width = 1;
    try {
        width = modulus_interval(total_bits, tau).hi - lo;
    } catch (const IntervalError&) {
    }
    for (;;) {
        u128 const hi = std::min(lo + width, max_hi);
        try {
            return sample_prime(lo, hi, rng);
        } catch (const SamplingError&) {
            if (hi == max_hi) throw;
        }
        width *= 2;
    }
}

namespace {

Residue two(const Modulus& m) {
    return reduce(2, m);
}

} // namespace

FingerprintIndex::FingerprintIndex(BitText&& text, const Modulus& m, Residue seed, std::vector<uint64_t> overflow)
    : text_(std::move(text)),
      m_(m),
      seed_(seed),
      y_(pow_mod(two(m), text_.char_bits(), m)),
      pow_tau_(pow_mod(two(m), m.tau(), m)),
      overflow_(std::move(overflow)),
      mode_(Mode::Encoded) {}

FingerprintIndex::FingerprintIndex(FingerprintIndex&& other) noexcept
    : text_(std::move(other.text_)),
      m_(other.m_),
      seed_(other.seed_),
      y_(other.y_),
      pow_tau_(other.pow_tau_),
      overflow_(std::move(other.overflow_)),
      retries_(other.retries_),
      mode_(std::exchange(other.mode_, Mode::Plain)) {}

FingerprintIndex& FingerprintIndex::operator=(FingerprintIndex&& other) noexcept {
    if (this != &other) {
        text_ = std::move(other.text_);
        m_ = other.m_;
        seed_ = other.seed_;
        y_ = other.y_;
        pow_tau_ = other.pow_tau_;
        overflow_ = std::move(other.overflow_);
        retries_ = other.retries_;
        mode_ = std::exchange(other.mode_, Mode::Plain);
    }
    return *this;
}

bool FingerprintIndex::encode_blocks(BitText& text, const Modulus& m, Residue seed, OverflowPolicy policy,
                                     std::vector<uint64_t>& overflow) {
    unsigned const tau = m.tau();
    assert(tau == text.tau());
    if (!text.has_seed_block())
        text.attach_seed_block(seed);
    else
        text.write_bits(0, tau, seed.value);

    u128 const top = u128{1} << (tau - 1);
    Residue const pow_tau = pow_mod(two(m), tau, m);
    size_t const blocks = text.block_count();
    overflow.clear();

    Residue prev = seed;
    for (size_t k = 1; k < blocks; ++k) {
        u128 const block = text.read_bits(k * tau, tau);
        bool const d = block >= m.q();
        Residue const cur = add_mod(mul_mod(prev, pow_tau, m), Residue{d ? block - m.q() : block}, m);
        if (cur.value >= top) {
            if (policy == OverflowPolicy::Reject) {
                decode_blocks(text, m, seed, overflow, k);
                text.detach_seed_block();
                return false;
            }
            overflow.push_back(k);
        }
        text.write_bits(k * tau, tau, (u128{d} << (tau - 1)) | (cur.value & (top - 1)));
        prev = cur;
    }
    text.encoded_ = true;
    return true;
}

void FingerprintIndex::decode_blocks(BitText& text, const Modulus& m, Residue seed,
                                     const std::vector<uint64_t>& overflow, size_t end) {
    unsigned const tau = m.tau();
    u128 const top = u128{1} << (tau - 1);
    Residue const pow_tau = pow_mod(two(m), tau, m);
    Residue prev = seed;
    for (size_t k = 1; k < end; ++k) {
        u128 const stored = text.read_bits(k * tau, tau);
        Residue cur{stored & (top - 1)};
        if (std::binary_search(overflow.begin(), overflow.end(), k)) cur.value |= top;
        u128 block = sub_mod(cur, mul_mod(prev, pow_tau, m), m).value;
        if (stored & top) block += m.q();
        text.write_bits(k * tau, tau, block);
        prev = cur;
    }
    text.encoded_ = false;
}

FingerprintIndex FingerprintIndex::build_in_place(BitText&& text, Rng& rng, const BuildOptions& options) {
    if (text.encoded() || text.has_seed_block()) throw StateError("build_in_place needs a plain text");
    unsigned const tau = text.tau();
    if (!options.test_mode && tau < kMinProductionTau)
        throw InputError("tau=" + std::to_string(tau) + " is only allowed in test mode");
    uint64_t const total_bits = std::max<uint64_t>(2, uint64_t{text.size()} * text.char_bits());

    std::vector<uint64_t> overflow;
    for (unsigned attempt = 1; attempt <= options.max_retries; ++attempt) {
        Modulus const m = draw_modulus(total_bits, tau, rng, options.test_mode);
        Residue const seed = sample_seed(m, rng);
        if (encode_blocks(text, m, seed, OverflowPolicy::Reject, overflow)) {
            FingerprintIndex idx(std::move(text), m, seed, {});
            idx.retries_ = attempt;
            return idx;
        }
    }
    throw BuildError("no overflow-free (q, seed) pair found in " + std::to_string(options.max_retries) +
                     " attempts (tau=" + std::to_string(tau) + ")");
}

FingerprintIndex FingerprintIndex::encode_with(BitText&& text, const Modulus& m, Residue seed,
                                               OverflowPolicy policy) {
    if (text.encoded() || text.has_seed_block()) throw StateError("encode_with needs a plain text");
    if (m.tau() != text.tau())
        throw InputError("modulus has " + std::to_string(m.tau()) + " bits but the text uses tau=" +
                         std::to_string(text.tau()));
    if (seed.value >= m.q()) throw InputError("seed must be below q");
    std::vector<uint64_t> overflow;
    if (!encode_blocks(text, m, seed, policy, overflow))
        throw BuildError("prefix fingerprint overflow with the given (q, seed)");
    return FingerprintIndex(std::move(text), m, seed, std::move(overflow));
}

BitText FingerprintIndex::restore_in_place() {
    require_encoded();
    decode_blocks(text_, m_, seed_, overflow_, text_.block_count());
    text_.detach_seed_block();
    mode_ = Mode::Plain;
    overflow_.clear();
    return std::move(text_);
}

void FingerprintIndex::require_encoded() const {
    if (mode_ != Mode::Encoded) throw StateError("index is not in encoded mode");
}

bool FingerprintIndex::overflowed(size_t k) const {
    return !overflow_.empty() && std::binary_search(overflow_.begin(), overflow_.end(), k);
}

Residue FingerprintIndex::stored_prefix(size_t k) const {
    if (k == 0) return seed_;
    unsigned const tau = m_.tau();
    u128 const top = u128{1} << (tau - 1);
    u128 v = text_.read_bits(k * tau, tau) & (top - 1);
    if (overflowed(k)) v |= top;
    return {v};
}

u128 FingerprintIndex::decode(size_t k, Residue p_prev, Residue p_cur) const {
    if (k == 0) return seed_.value;
    unsigned const tau = m_.tau();
    u128 block = sub_mod(p_cur, mul_mod(p_prev, pow_tau_, m_), m_).value;
    if ((text_.read_bits(k * tau, tau) >> (tau - 1)) & 1) block += m_.q();
    return block;
}

u128 FingerprintIndex::decoded_block(size_t k) const {
    require_encoded();
    if (k >= text_.block_count()) throw IndexError("block " + std::to_string(k) + " out of range");
    if (k == 0) return seed_.value;
    return decode(k, stored_prefix(k - 1), stored_prefix(k));
}

Residue FingerprintIndex::block_pow(unsigned bits) const {
    return bits == m_.tau() ? pow_tau_ : reduce(u128{1} << bits, m_);
}

Residue FingerprintIndex::prefix_fp(size_t i) const {
    require_encoded();
    if (i >= text_.bit_length()) throw IndexError("bit " + std::to_string(i) + " out of range");
    unsigned const tau = m_.tau();
    size_t const j = i / tau;
    auto const r = static_cast<unsigned>(i - j * tau);
    Residue const cur = stored_prefix(j);
    if (r == tau - 1) return cur;
    Residue const prev = j ? stored_prefix(j - 1) : Residue{0};
    u128 const head = decode(j, prev, cur) >> (tau - r - 1);
    return add_mod(mul_mod(prev, block_pow(r + 1), m_), reduce(head, m_), m_);
}

Residue FingerprintIndex::prefix_before(size_t bit) const {
    return bit == 0 ? Residue{0} : prefix_fp(bit - 1);
}

Residue FingerprintIndex::substring_fp(size_t i, size_t j) const {
    if (i > j) throw IndexError("substring_fp: i > j");
    return substring_fp_with_exp(i, j, pow_mod(two(m_), j - i + 1, m_));
}

Residue FingerprintIndex::substring_fp_with_exp(size_t i, size_t j, Residue E) const {
    if (i > j) throw IndexError("substring_fp: i > j");
    Residue const whole = prefix_fp(j);
    return sub_mod(whole, mul_mod(prefix_before(i), E, m_), m_);
}

Residue FingerprintIndex::window_fp(size_t c, size_t len, Residue E) const {
    size_t const first = text_.text_offset() + c * text_.char_bits();
    return substring_fp_with_exp(first, first + len * text_.char_bits() - 1, E);
}

namespace {

// Exponential then binary search comparing only power-of-two windows.
// `power(p)` must return y^(2^p) mod q and may charge extra steps.
template <class Power>
LcePair lce_search(const FingerprintIndex& idx, size_t i, size_t j, Power&& power) {
    size_t const n = idx.size();
    if (i >= n || j >= n)
        throw IndexError("lce(" + std::to_string(i) + ", " + std::to_string(j) + ") with n=" + std::to_string(n));
    LcePair r{i, j, 0, 0};
    if (i == j) {
        r.length = n - i;
        return r;
    }
    size_t const limit = n - std::max(i, j);
    auto same = [&](size_t e, unsigned p) {
        Residue const E = power(p, r.steps);
        r.steps += 2;
        size_t const len = size_t{1} << p;
        return idx.window_fp(i + e, len, E) == idx.window_fp(j + e, len, E);
    };

    size_t e = 0;
    unsigned p = 0;
    int descend;
    for (;;) {
        if (e + (size_t{1} << p) > limit) {
            size_t const rest = limit - e;
            descend = static_cast<int>(bit_width(rest)) - 1;
            break;
        }
        if (!same(e, p)) {
            descend = static_cast<int>(p) - 1;
            break;
        }
        e += size_t{1} << p;
        ++p;
    }
    for (int d = descend; d >= 0; --d) {
        auto const len = size_t{1} << d;
        if (e + len <= limit && same(e, static_cast<unsigned>(d))) e += len;
    }
    r.length = e;
    return r;
}

} // namespace

LcePair FingerprintIndex::lce_slow(size_t i, size_t j) const {
    require_encoded();
    return lce_search(*this, i, j, [this](unsigned p, uint64_t& steps) {
        steps += p + 1;
        return pow_mod(y_, uint64_t{1} << p, m_);
    });
}

LcePair FingerprintIndex::lce_fast(const ZTable& zt, size_t i, size_t j) const {
    require_encoded();
    if (!zt.matches(*this)) throw StateError("ZTable was built for a different index");
    return lce_search(*this, i, j, [&zt](unsigned p, uint64_t&) { return zt[p]; });
}

LcePair FingerprintIndex::lce(size_t i, size_t j, LceKind kind, const ZTable* zt) const {
    if (kind == LceKind::Fast) {
        if (!zt) throw StateError("fast LCE queries need a ZTable");
        return lce_fast(*zt, i, j);
    }
    return lce_slow(i, j);
}

namespace {

// Sequential reader over the decoded bit stream; decodes each block once
// when moving forward.
class DecodedReader {
public:
    explicit DecodedReader(const FingerprintIndex& idx) : idx_(idx), tau_(idx.tau()) {}

    uint64_t read(size_t pos, unsigned len) {
        uint64_t value = 0;
        while (len) {
            size_t const k = pos / tau_;
            seek(k);
            auto const off = static_cast<unsigned>(pos - k * tau_);
            unsigned const take = std::min(tau_ - off, len);
            auto const chunk = static_cast<uint64_t>((block_ >> (tau_ - off - take)) & low_mask(take));
            value = (take == 64 ? 0 : value << take) | chunk;
            pos += take;
            len -= take;
        }
        return value;
    }

private:
    void seek(size_t k) {
        if (valid_ && k == block_index_) return;
        if (valid_ && k == block_index_ + 1) {
            Residue const cur = idx_.stored_prefix(k);
            block_ = decode_with(k, prefix_, cur);
            prefix_ = cur;
        } else {
            prefix_ = idx_.stored_prefix(k);
            block_ = idx_.decoded_block(k);
        }
        block_index_ = k;
        valid_ = true;
    }

    u128 decode_with(size_t k, Residue prev, Residue cur) const {
        const Modulus& m = idx_.modulus();
        u128 block = sub_mod(cur, mul_mod(prev, pow_mod(reduce(2, m), tau_, m), m), m).value;
        if ((idx_.storage().read_bits(k * tau_, tau_) >> (tau_ - 1)) & 1) block += m.q();
        return block;
    }

    const FingerprintIndex& idx_;
    unsigned tau_;
    size_t block_index_ = 0;
    Residue prefix_;
    u128 block_ = 0;
    bool valid_ = false;
};

} // namespace

uint64_t FingerprintIndex::char_at(size_t i) const {
    require_encoded();
    if (i >= size()) throw IndexError("character " + std::to_string(i) + " out of range");
    DecodedReader reader(*this);
    return reader.read(text_.text_offset() + i * char_bits(), char_bits());
}

std::vector<uint64_t> FingerprintIndex::extract(size_t i, size_t m) const {
    require_encoded();
    if (i > size() || m > size() - i)
        throw IndexError("extract(" + std::to_string(i) + ", " + std::to_string(m) + ") with n=" +
                         std::to_string(size()));
    std::vector<uint64_t> out(m);
    DecodedReader reader(*this);
    unsigned const b = char_bits();
    size_t pos = text_.text_offset() + i * b;
    for (size_t t = 0; t < m; ++t, pos += b) out[t] = reader.read(pos, b);
    return out;
}

Ordering FingerprintIndex::compare_suffixes(size_t i, size_t j, LceKind kind, const ZTable* zt) const {
    if (i == j) {
        if (i >= size()) throw IndexError("suffix " + std::to_string(i) + " out of range");
        return Ordering::Equal;
    }
    size_t const l = lce(i, j, kind, zt).length;
    if (i + l == size()) return Ordering::Less;
    if (j + l == size()) return Ordering::Greater;
    return char_at(i + l) < char_at(j + l) ? Ordering::Less : Ordering::Greater;
}

} // namespace implicit_lce
