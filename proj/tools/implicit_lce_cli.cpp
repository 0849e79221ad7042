#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "implicit_lce/bench.hpp"
#include "implicit_lce/derandomizer.hpp"
#include "implicit_lce/errors.hpp"
#include "implicit_lce/fingerprint_index.hpp"
#include "implicit_lce/suffix_ops.hpp"
#include "implicit_lce/text_io.hpp"
#include "implicit_lce/ztable.hpp"

using namespace implicit_lce;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kInternal = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    std::string input;
    std::string positions;
    std::string output;
    unsigned tau = kDefaultTau;
    std::string mode = "montecarlo";
    std::string checker = "sort";
    bool strict = false;
    std::optional<uint64_t> seed;
    std::string format = "text";
    std::string bench_out;
    bool test_mode = false;
    std::string alphabet = "bytes";
    bool slow = false;
    uint64_t i = 0;
    uint64_t j = 0;
    uint64_t m = 0;
    uint64_t rank = 0;
    size_t queries = 1000;
    size_t sort_positions = 1000;
};

Checker parse_checker(const std::string& s) {
    if (s == "hash") return Checker::Hash;
    if (s == "sort") return Checker::Sort;
    return Checker::Compact;
}

Alphabet parse_alphabet(const std::string& s) {
    return s == "ints" ? Alphabet::Ints : Alphabet::Bytes;
}

PositionFormat parse_format(const std::string& s) {
    return s == "binary" ? PositionFormat::Binary : PositionFormat::Text;
}

uint64_t resolve_seed(const Config& c) {
    if (c.seed) return *c.seed;
    if (const char* env = std::getenv("IMPLICIT_LCE_SEED")) {
        try {
            u128 const v = parse_u128(env);
            if (v >> 64) throw InputError("too large");
            return static_cast<uint64_t>(v);
        } catch (const InputError&) {
            throw UsageError(std::string("IMPLICIT_LCE_SEED is not a 64-bit decimal: ") + env);
        }
    }
    std::random_device rd;
    return (uint64_t{rd()} << 32) | rd();
}

BuildOptions build_options(const Config& c) {
    if (c.tau < kMinProductionTau && !c.test_mode)
        throw UsageError("--tau " + std::to_string(c.tau) + " needs --test-mode (minimum is " +
                         std::to_string(kMinProductionTau) + ")");
    if (c.tau < 4 || c.tau > kMaxTau) throw UsageError("--tau must be in [4, " + std::to_string(kMaxTau) + "]");
    BuildOptions o;
    o.test_mode = c.test_mode;
    if (c.test_mode) o.max_retries = 100000;
    return o;
}

FingerprintIndex build_index(const Config& c, const TextFile& t, Rng& rng) {
    auto text = BitText::pack(t.chars, t.sigma, c.tau);
    auto const opts = build_options(c);
    if (c.mode == "deterministic") return build_deterministic(std::move(text), rng, parse_checker(c.checker), opts);
    return FingerprintIndex::build_in_place(std::move(text), rng, opts);
}

FingerprintIndex load_index(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    return FingerprintIndex::deserialize(in);
}

bool is_index_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    unsigned char head[8];
    if (!in.read(reinterpret_cast<char*>(head), 8)) return false;
    uint64_t v = 0;
    for (int k = 7; k >= 0; --k) v = (v << 8) | head[k];
    return v == kIndexMagic;
}

// an index file is loaded as is; anything else is read as text and indexed
FingerprintIndex obtain_index(const Config& c, Rng& rng) {
    if (is_index_file(c.input)) return load_index(c.input);
    return build_index(c, read_text(c.input, parse_alphabet(c.alphabet)), rng);
}

std::vector<uint64_t> load_positions(const Config& c, size_t n) {
    auto p = read_positions(c.positions, parse_format(c.format));
    for (uint64_t v : p)
        if (v >= n) throw UsageError("position " + std::to_string(v) + " out of range (n=" + std::to_string(n) + ")");
    auto sorted = p;
    std::sort(sorted.begin(), sorted.end());
    for (size_t k = 1; k < sorted.size(); ++k)
        if (sorted[k] == sorted[k - 1]) throw UsageError("duplicate position " + std::to_string(sorted[k]));
    return p;
}

void emit_positions(const Config& c, const std::vector<uint64_t>& values) {
    if (c.output.empty()) {
        for (size_t k = 0; k < values.size(); ++k) std::cout << (k ? " " : "") << values[k];
        std::cout << '\n';
    } else {
        write_positions(c.output, values, parse_format(c.format));
    }
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

int cmd_build(const Config& c) {
    auto const t = read_text(c.input, parse_alphabet(c.alphabet));
    uint64_t const seed = resolve_seed(c);
    Rng rng(seed);
    auto const start = std::chrono::steady_clock::now();
    auto idx = build_index(c, t, rng);
    double const ms = elapsed_ms(start);
    std::ofstream out(c.output, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + c.output);
    idx.serialize(out);
    std::cout << "R=" << idx.retries() << " q=" << to_string(idx.modulus().q()) << " seed=" << to_string(idx.seed().value)
              << " tau=" << idx.tau() << " n=" << idx.size() << " b=" << idx.char_bits() << " rng_seed=" << seed
              << " elapsed_ms=" << ms << '\n';
    return kOk;
}

int cmd_lce(const Config& c) {
    auto const idx = load_index(c.input);
    if (c.i >= idx.size() || c.j >= idx.size())
        throw UsageError("positions must be below n=" + std::to_string(idx.size()));
    if (c.slow) {
        std::cout << idx.lce_slow(c.i, c.j).length << '\n';
    } else {
        auto const zt = ZTable::build_heap(idx);
        std::cout << idx.lce_fast(zt, c.i, c.j).length << '\n';
    }
    return kOk;
}

void write_chars(const Config& c, const std::vector<uint64_t>& chars, unsigned char_bits) {
    Alphabet const a = parse_alphabet(c.alphabet);
    if (a == Alphabet::Bytes && char_bits != 8)
        throw UsageError("index holds " + std::to_string(char_bits) + "-bit characters; use --alphabet ints");
    if (!c.output.empty()) {
        write_text(c.output, chars, a);
    } else if (a == Alphabet::Bytes) {
        for (uint64_t ch : chars) std::cout.put(static_cast<char>(ch));
    } else {
        for (uint64_t ch : chars) std::cout << ch << '\n';
    }
}

int cmd_extract(const Config& c) {
    auto const idx = load_index(c.input);
    if (c.i > idx.size() || c.m > idx.size() - c.i)
        throw UsageError("range [" + std::to_string(c.i) + ", " + std::to_string(c.i) + "+" + std::to_string(c.m) +
                         ") exceeds n=" + std::to_string(idx.size()));
    write_chars(c, idx.extract(c.i, c.m), idx.char_bits());
    return kOk;
}

int cmd_restore(const Config& c) {
    auto idx = load_index(c.input);
    unsigned const b = idx.char_bits();
    auto const text = idx.restore_in_place();
    write_chars(c, text.chars(), b);
    return kOk;
}

int cmd_ssa(const Config& c, bool slcp) {
    Rng rng(resolve_seed(c));
    auto idx = obtain_index(c, rng);
    auto positions = load_positions(c, idx.size());
    sparse_suffix_sort(idx, positions, c.strict);
    if (slcp) sparse_lcp(idx, positions);
    emit_positions(c, positions);
    return kOk;
}

int cmd_lcp(const Config& c) {
    auto text = is_index_file(c.input) ? load_index(c.input).restore_in_place() : [&] {
        auto const t = read_text(c.input, parse_alphabet(c.alphabet));
        return BitText::pack(t.chars, t.sigma, c.tau);
    }();
    Rng rng(resolve_seed(c));
    auto const variant = c.checker == "compact" ? LcpVariant::SmallAlphabet : LcpVariant::General;
    emit_positions(c, lcp_array(text, rng, variant, build_options(c)));
    return kOk;
}

int cmd_select(const Config& c) {
    Rng rng(resolve_seed(c));
    auto idx = obtain_index(c, rng);
    if (c.rank >= idx.size())
        throw UsageError("rank " + std::to_string(c.rank) + " out of range (n=" + std::to_string(idx.size()) + ")");
    std::cout << suffix_select(idx, c.rank, rng) << '\n';
    return kOk;
}

int cmd_verify(const Config& c) {
    auto const t = read_text(c.input, parse_alphabet(c.alphabet));
    uint64_t const seed = resolve_seed(c);
    Rng rng(seed);
    auto const opts = build_options(c);
    auto text = BitText::pack(t.chars, t.sigma, c.tau);
    // test mode keeps overflowing prefixes so that tiny tau can be checked at all
    auto idx = c.test_mode ? [&] {
        Modulus const m = draw_modulus(std::max<uint64_t>(2, t.chars.size() * text.char_bits()), c.tau, rng, true);
        Residue const s = sample_seed(m, rng);
        return FingerprintIndex::encode_with(std::move(text), m, s, OverflowPolicy::Keep);
    }()
                           : FingerprintIndex::build_in_place(std::move(text), rng, opts);
    Checker const checker = parse_checker(c.checker);
    auto const report = check_collisions(idx, checker);
    std::cout << "checker=" << checker_name(checker) << " retries=" << idx.retries()
              << " q=" << to_string(idx.modulus().q()) << " levels_passed=" << report.levels_passed;
    if (report.ok) {
        std::cout << " verdict=ok\n";
        return kOk;
    }
    size_t const len = size_t{1} << *report.failing_level;
    auto [i, j] = *report.witness;
    bool const differ = idx.extract(i, len) != idx.extract(j, len);
    std::cout << " verdict=collision level=" << *report.failing_level << " length=" << len << " witness=" << i << ","
              << j << " witness_verified=" << (differ ? "yes" : "no") << '\n';
    return kVerifyFailed;
}

int cmd_bench(const Config& c) {
    auto const t = read_text(c.input, parse_alphabet(c.alphabet));
    Rng rng(resolve_seed(c));
    auto idx = build_index(c, t, rng);
    std::unique_ptr<std::ofstream> file;
    std::ostream* out = &std::cout;
    if (!c.bench_out.empty()) {
        file = std::make_unique<std::ofstream>(c.bench_out, std::ios::trunc);
        if (!*file) throw InputError("cannot write " + c.bench_out);
        out = file.get();
    }
    for (auto const& r : bench_lce(idx, random_pairs(idx.size(), c.queries, rng))) *out << to_json_line(r) << '\n';
    if (c.sort_positions && idx.size()) *out << to_json_line(bench_sparse_sort(idx, c.sort_positions, rng, c.strict)) << '\n';
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Implicit Karp-Rabin LCE index: build, query, sparse suffix sorting"};
    app.require_subcommand(1);
    Config c;

    auto add_build_flags = [&](CLI::App* sub) {
        sub->add_option("--tau", c.tau, "block width in bits (production: 32..126)");
        sub->add_option("--mode", c.mode, "montecarlo or deterministic")
            ->check(CLI::IsMember({"montecarlo", "deterministic"}));
        sub->add_option("--checker", c.checker, "collision checker: hash, sort or compact")
            ->check(CLI::IsMember({"hash", "sort", "compact"}));
        sub->add_option("--rng-seed", c.seed, "random seed (default: $IMPLICIT_LCE_SEED, else random)");
        sub->add_flag("--test-mode", c.test_mode, "allow tau below 32");
        sub->add_option("--alphabet", c.alphabet, "bytes or ints")->check(CLI::IsMember({"bytes", "ints"}));
    };
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", c.format, "positions file format: text or binary")
            ->check(CLI::IsMember({"text", "binary"}));
    };

    auto* build = app.add_subcommand("build", "build an index file from a text");
    build->add_option("input", c.input)->required();
    build->add_option("-o,--output", c.output)->required();
    add_build_flags(build);

    auto* lce = app.add_subcommand("lce", "longest common extension of suffixes i and j");
    lce->add_option("index", c.input)->required();
    lce->add_option("i", c.i)->required();
    lce->add_option("j", c.j)->required();
    lce->add_flag("--slow", c.slow, "use slow queries (no power table)");

    auto* extract = app.add_subcommand("extract", "print m characters starting at i");
    extract->add_option("index", c.input)->required();
    extract->add_option("i", c.i)->required();
    extract->add_option("m", c.m)->required();
    extract->add_option("-o,--output", c.output);
    extract->add_option("--alphabet", c.alphabet)->check(CLI::IsMember({"bytes", "ints"}));

    auto* restore = app.add_subcommand("restore", "decode an index file back to its text");
    restore->add_option("index", c.input)->required();
    restore->add_option("-o,--output", c.output)->required();
    restore->add_option("--alphabet", c.alphabet)->check(CLI::IsMember({"bytes", "ints"}));

    auto* ssa = app.add_subcommand("ssa", "sparse suffix array of the given positions");
    auto* slcp = app.add_subcommand("slcp", "sparse LCP array of the given positions");
    for (auto* sub : {ssa, slcp}) {
        sub->add_option("text", c.input)->required();
        sub->add_option("positions", c.positions)->required();
        sub->add_option("-o,--output", c.output);
        sub->add_flag("--strict", c.strict, "borrow the power table from the positions (no heap)");
        add_build_flags(sub);
        add_format(sub);
    }

    auto* lcp = app.add_subcommand("lcp", "full LCP array (exact); --checker compact selects the small-alphabet variant");
    lcp->add_option("text", c.input)->required();
    lcp->add_option("-o,--output", c.output);
    add_build_flags(lcp);
    add_format(lcp);

    auto* select = app.add_subcommand("select", "position of the suffix with the given rank");
    select->add_option("text", c.input)->required();
    select->add_option("rank", c.rank)->required();
    add_build_flags(select);

    auto* verify = app.add_subcommand("verify", "check fingerprints for collisions on power-of-two windows");
    verify->add_option("text", c.input)->required();
    add_build_flags(verify);

    auto* bench = app.add_subcommand("bench", "emit JSON lines with per-operation step counts and timings");
    bench->add_option("text", c.input)->required();
    bench->add_option("--bench-out", c.bench_out, "write records here instead of stdout");
    bench->add_option("--queries", c.queries, "number of LCE query pairs");
    bench->add_option("--sort-positions", c.sort_positions, "positions in the sparse sort run (0 to skip)");
    bench->add_flag("--strict", c.strict);
    add_build_flags(bench);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int const code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*build) return cmd_build(c);
        if (*lce) return cmd_lce(c);
        if (*extract) return cmd_extract(c);
        if (*restore) return cmd_restore(c);
        if (*ssa) return cmd_ssa(c, false);
        if (*slcp) return cmd_ssa(c, true);
        if (*lcp) return cmd_lcp(c);
        if (*select) return cmd_select(c);
        if (*verify) return cmd_verify(c);
        if (*bench) return cmd_bench(c);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const IndexError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternal;
    }
    return kUsage;
}
