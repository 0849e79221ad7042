#include "implicit_lce/ztable.hpp"

#include <string>

#include "implicit_lce/errors.hpp"

namespace implicit_lce {

size_t ZTable::entry_count(size_t n) {
    return n <= 1 ? 1 : bit_width(n);
}

size_t ZTable::required_bits(const FingerprintIndex& idx) {
    return size_t{idx.tau()} * entry_count(idx.size());
}

ZTable::ZTable(StorageKind kind, size_t count, const FingerprintIndex& idx)
    : kind_(kind), count_(count), width_(idx.tau()), q_(idx.modulus().q()), char_bits_(idx.char_bits()) {}

ZTable ZTable::build_heap(const FingerprintIndex& idx) {
    size_t const count = entry_count(idx.size());
    ZTable zt(StorageKind::Heap, count, idx);
    zt.heap_.resize(count);
    Residue z = idx.y();
    for (size_t e = 0; e < count; ++e) {
        zt.heap_[e] = z;
        z = mul_mod(z, z, idx.modulus());
    }
    return zt;
}

ZTable ZTable::build_borrowed(const FingerprintIndex& idx, CompressedSegment& segment) {
    size_t const count = entry_count(idx.size());
    size_t const need = required_bits(idx);
    if (need > segment.free_bits())
        throw CapacityError("ZTable needs " + std::to_string(need) + " bits, segment frees " +
                            std::to_string(segment.free_bits()));
    ZTable zt(StorageKind::BorrowedBits, count, idx);
    zt.lease_ = segment.lease(need);
    Residue z = idx.y();
    for (size_t e = 0; e < count; ++e) {
        zt.lease_.write(e * zt.width_, zt.width_, z.value);
        z = mul_mod(z, z, idx.modulus());
    }
    return zt;
}

Residue ZTable::operator[](size_t e) const {
    if (kind_ == StorageKind::Heap) return heap_[e];
    return {lease_.read(e * width_, width_)};
}

bool ZTable::matches(const FingerprintIndex& idx) const {
    return q_ == idx.modulus().q() && char_bits_ == idx.char_bits() && count_ >= entry_count(idx.size());
}

} // namespace implicit_lce
