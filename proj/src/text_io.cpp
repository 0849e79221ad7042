#include "implicit_lce/text_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <sstream>

#include "implicit_lce/errors.hpp"

namespace implicit_lce {

namespace {

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + path);
    return out;
}

// Decimal tokens separated by whitespace.
std::vector<uint64_t> parse_decimals(const std::string& path, const std::string& data) {
    std::vector<uint64_t> out;
    size_t pos = 0;
    while (pos < data.size()) {
        if (std::isspace(static_cast<unsigned char>(data[pos]))) {
            ++pos;
            continue;
        }
        size_t end = pos;
        while (end < data.size() && !std::isspace(static_cast<unsigned char>(data[end]))) ++end;
        std::string const token = data.substr(pos, end - pos);
        u128 const v = parse_u128(token);
        if (v >> 64) throw InputError(path + ": value " + token + " does not fit 64 bits");
        out.push_back(static_cast<uint64_t>(v));
        pos = end;
    }
    return out;
}

uint64_t get_le(const uint8_t* p) {
    uint64_t v = 0;
    for (int k = 7; k >= 0; --k) v = (v << 8) | p[k];
    return v;
}

void put_le(std::ostream& out, uint64_t v) {
    char bytes[8];
    for (int k = 0; k < 8; ++k) bytes[k] = static_cast<char>((v >> (8 * k)) & 0xff);
    out.write(bytes, 8);
}

} // namespace

std::vector<uint8_t> read_bytes(const std::string& path) {
    auto in = open_in(path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const std::string& path, std::span<const uint8_t> bytes) {
    auto out = open_out(path);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw InputError("failed writing " + path);
}

TextFile read_text(const std::string& path, Alphabet alphabet) {
    auto const bytes = read_bytes(path);
    TextFile t;
    if (alphabet == Alphabet::Bytes) {
        t.chars.assign(bytes.begin(), bytes.end());
        t.sigma = 256;
        return t;
    }
    t.chars = parse_decimals(path, std::string(bytes.begin(), bytes.end()));
    uint64_t const max = t.chars.empty() ? 0 : *std::max_element(t.chars.begin(), t.chars.end());
    if (max == ~uint64_t{0}) throw InputError(path + ": character value too large");
    t.sigma = std::max<uint64_t>(2, max + 1);
    return t;
}

void write_text(const std::string& path, std::span<const uint64_t> chars, Alphabet alphabet) {
    if (alphabet == Alphabet::Bytes) {
        std::vector<uint8_t> bytes(chars.size());
        for (size_t i = 0; i < chars.size(); ++i) {
            if (chars[i] > 255) throw InputError("character " + std::to_string(chars[i]) + " is not a byte");
            bytes[i] = static_cast<uint8_t>(chars[i]);
        }
        write_bytes(path, bytes);
        return;
    }
    auto out = open_out(path);
    for (uint64_t c : chars) out << c << '\n';
    if (!out) throw InputError("failed writing " + path);
}

std::vector<uint64_t> read_positions(const std::string& path, PositionFormat format) {
    auto const bytes = read_bytes(path);
    if (format == PositionFormat::Text) return parse_decimals(path, std::string(bytes.begin(), bytes.end()));
    if (bytes.size() < 8) throw InputError(path + ": missing count header");
    uint64_t const count = get_le(bytes.data());
    if (count > (bytes.size() - 8) / 8 || bytes.size() != 8 + 8 * count)
        throw InputError(path + ": count header says " + std::to_string(count) + " values, file holds " +
                         std::to_string((bytes.size() - 8) / 8));
    std::vector<uint64_t> out(count);
    for (size_t k = 0; k < count; ++k) out[k] = get_le(bytes.data() + 8 + 8 * k);
    return out;
}

void write_positions(const std::string& path, std::span<const uint64_t> values, PositionFormat format) {
    auto out = open_out(path);
    if (format == PositionFormat::Text) {
        for (uint64_t v : values) out << v << '\n';
    } else {
        put_le(out, values.size());
        for (uint64_t v : values) put_le(out, v);
    }
    if (!out) throw InputError("failed writing " + path);
}

} // namespace implicit_lce
