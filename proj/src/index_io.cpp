#include <algorithm>
#include <istream>
#include <ostream>
#include <string>

#include "implicit_lce/errors.hpp"
#include "implicit_lce/fingerprint_index.hpp"

namespace implicit_lce {

namespace {

// version 1: q and seed fit one word (tau <= 64); version 2: both as lo, hi
constexpr uint64_t kNarrowVersion = 1;
constexpr uint64_t kWideVersion = 2;

void put_u64(std::ostream& out, uint64_t v) {
    char bytes[8];
    for (int k = 0; k < 8; ++k) bytes[k] = static_cast<char>((v >> (8 * k)) & 0xff);
    out.write(bytes, 8);
}

uint64_t get_u64(std::istream& in) {
    unsigned char bytes[8];
    if (!in.read(reinterpret_cast<char*>(bytes), 8)) throw InputError("index file truncated in header");
    uint64_t v = 0;
    for (int k = 7; k >= 0; --k) v = (v << 8) | bytes[k];
    return v;
}

void put_wide(std::ostream& out, u128 v, bool wide) {
    put_u64(out, static_cast<uint64_t>(v));
    if (wide) put_u64(out, static_cast<uint64_t>(v >> 64));
}

u128 get_wide(std::istream& in, bool wide) {
    u128 v = get_u64(in);
    if (wide) v |= u128{get_u64(in)} << 64;
    return v;
}

} // namespace

void FingerprintIndex::serialize(std::ostream& out) const {
    require_encoded();
    if (!overflow_.empty()) throw StateError("an index with overflowing prefixes cannot be serialized");
    bool const wide = tau() > 64;
    put_u64(out, kIndexMagic);
    put_u64(out, wide ? kWideVersion : kNarrowVersion);
    put_u64(out, tau());
    put_wide(out, m_.q(), wide);
    put_wide(out, seed_.value, wide);
    put_u64(out, char_bits());
    put_u64(out, size());
    put_u64(out, pad_bits());

    size_t const bits = text_.bit_length();
    for (size_t pos = 0; pos < bits; pos += 8) {
        unsigned const take = static_cast<unsigned>(std::min<size_t>(8, bits - pos));
        auto const byte = static_cast<unsigned>(text_.read_bits(pos, take)) << (8 - take);
        out.put(static_cast<char>(byte));
    }
    if (!out) throw Error("failed to write index");
}

FingerprintIndex FingerprintIndex::deserialize(std::istream& in) {
    if (get_u64(in) != kIndexMagic) throw InputError("not an index file (bad magic)");
    uint64_t const version = get_u64(in);
    if (version != kNarrowVersion && version != kWideVersion)
        throw InputError("unsupported index version " + std::to_string(version));
    bool const wide = version == kWideVersion;
    uint64_t const tau = get_u64(in);
    if (tau < 2 || tau > kMaxTau || (tau > 64) != wide) throw InputError("bad tau " + std::to_string(tau));
    u128 const q = get_wide(in, wide);
    u128 const seed = get_wide(in, wide);
    uint64_t const b = get_u64(in);
    uint64_t const n = get_u64(in);
    uint64_t const pad = get_u64(in);
    if (b < 1 || b > 64) throw InputError("bad character width " + std::to_string(b));
    if (n > (uint64_t{1} << 56) / b) throw InputError("text length too large");
    if (pad != (tau - n * b % tau) % tau) throw InputError("pad_bits inconsistent with n, b and tau");

    Modulus const m(q);
    if (m.tau() != tau) throw InputError("modulus width does not match tau");
    if (seed >= q) throw InputError("seed not below q");

    BitText text(n, static_cast<unsigned>(b), static_cast<unsigned>(tau));
    size_t const bits = tau + pad + n * b;
    text.words_.assign((bits + 63) / 64, 0);
    text.bit_length_ = bits;
    text.has_seed_block_ = true;
    text.encoded_ = true;
    for (size_t pos = 0; pos < bits; pos += 8) {
        int const c = in.get();
        if (c == std::char_traits<char>::eof()) throw InputError("index file truncated in buffer");
        unsigned const take = static_cast<unsigned>(std::min<size_t>(8, bits - pos));
        if (take < 8 && (c & ((1u << (8 - take)) - 1))) throw InputError("nonzero trailing bits");
        text.write_bits(pos, take, static_cast<unsigned>(c) >> (8 - take));
    }
    if (text.read_bits(0, static_cast<unsigned>(tau)) != seed) throw InputError("seed block does not match header");

    FingerprintIndex idx(std::move(text), m, Residue{seed}, {});
    // every block must decode to tau bits and the padding to zeros
    Residue prev = idx.seed_;
    for (size_t k = 1; k < idx.block_count(); ++k) {
        Residue const cur = idx.stored_prefix(k);
        if (cur.value >= q) throw InputError("stored prefix not below q in block " + std::to_string(k));
        u128 const block = idx.decode(k, prev, cur);
        if (block >> tau) throw InputError("block " + std::to_string(k) + " does not decode to tau bits");
        if (k == 1 && pad && (block >> (tau - pad))) throw InputError("padding bits decode to nonzero");
        prev = cur;
    }
    return idx;
}

} // namespace implicit_lce
