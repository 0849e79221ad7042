#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "implicit_lce/bit_text.hpp"

namespace implicit_lce {

enum class Alphabet {
    // every byte is a character, sigma = 256
    Bytes,
    // whitespace-separated decimal integers, sigma = max + 1 (at least 2)
    Ints,
};

enum class PositionFormat {
    // one decimal per line
    Text,
    // little-endian u64 count, then that many little-endian u64 values
    Binary,
};

struct TextFile {
    std::vector<uint64_t> chars;
    uint64_t sigma = 256;
};

std::vector<uint8_t> read_bytes(const std::string& path);
void write_bytes(const std::string& path, std::span<const uint8_t> bytes);

TextFile read_text(const std::string& path, Alphabet alphabet);
// Inverse of read_text for the given alphabet.
void write_text(const std::string& path, std::span<const uint64_t> chars, Alphabet alphabet);

std::vector<uint64_t> read_positions(const std::string& path, PositionFormat format);
void write_positions(const std::string& path, std::span<const uint64_t> values, PositionFormat format);

} // namespace implicit_lce
