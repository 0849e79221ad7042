#include <sstream>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "implicit_lce/derandomizer.hpp"
#include "implicit_lce/errors.hpp"
#include "implicit_lce/fingerprint_index.hpp"
#include "implicit_lce/suffix_ops.hpp"
#include "implicit_lce/ztable.hpp"

namespace py = pybind11;
using namespace implicit_lce;

namespace {

struct Text {
    std::vector<uint64_t> chars;
    uint64_t sigma;
};

// bytes/str are byte texts (sigma 256); sequences of ints use max+1 unless given
Text to_text(const py::object& data, std::optional<uint64_t> sigma) {
    Text t;
    if (py::isinstance<py::bytes>(data) || py::isinstance<py::str>(data)) {
        std::string const s = py::isinstance<py::bytes>(data) ? std::string(data.cast<py::bytes>())
                                                              : data.cast<std::string>();
        t.chars.assign(s.begin(), s.end());
        for (auto& c : t.chars) c &= 0xff;
        t.sigma = sigma.value_or(256);
        return t;
    }
    t.chars = data.cast<std::vector<uint64_t>>();
    uint64_t max = 0;
    for (uint64_t c : t.chars) max = std::max(max, c);
    t.sigma = sigma.value_or(std::max<uint64_t>(2, max + 1));
    return t;
}

Checker to_checker(const std::string& s) {
    if (s == "hash") return Checker::Hash;
    if (s == "sort") return Checker::Sort;
    if (s == "compact") return Checker::Compact;
    throw InputError("checker must be hash, sort or compact");
}

class PyIndex {
public:
    explicit PyIndex(FingerprintIndex idx) : idx_(std::move(idx)) {}

    static PyIndex build(const py::object& data, std::optional<uint64_t> sigma, unsigned tau, uint64_t seed,
                         bool deterministic, const std::string& checker, bool test_mode) {
        Text const t = to_text(data, sigma);
        Rng rng(seed);
        BuildOptions opt;
        opt.test_mode = test_mode;
        if (test_mode) opt.max_retries = 100000;
        auto text = BitText::pack(t.chars, t.sigma, tau);
        if (deterministic) return PyIndex(build_deterministic(std::move(text), rng, to_checker(checker), opt));
        return PyIndex(FingerprintIndex::build_in_place(std::move(text), rng, opt));
    }

    uint64_t lce(uint64_t i, uint64_t j, bool fast) {
        if (!fast) return idx_.lce_slow(i, j).length;
        if (!zt_) zt_ = std::make_unique<ZTable>(ZTable::build_heap(idx_));
        return idx_.lce_fast(*zt_, i, j).length;
    }

    std::vector<uint64_t> extract(uint64_t i, uint64_t m) const { return idx_.extract(i, m); }

    std::vector<uint64_t> restore() {
        zt_.reset();
        return idx_.restore_in_place().chars();
    }

    std::vector<uint64_t> sort(std::vector<uint64_t> positions, bool strict) const {
        sparse_suffix_sort(idx_, positions, strict);
        return positions;
    }

    std::vector<uint64_t> slcp(std::vector<uint64_t> sorted) const {
        sparse_lcp(idx_, sorted);
        return sorted;
    }

    uint64_t select(uint64_t rank, uint64_t seed) const {
        Rng rng(seed);
        return suffix_select(idx_, rank, rng);
    }

    py::dict check(const std::string& checker) const {
        auto const r = check_collisions(idx_, to_checker(checker));
        py::dict d;
        d["ok"] = r.ok;
        d["levels_passed"] = r.levels_passed;
        d["failing_level"] = r.failing_level ? py::cast(*r.failing_level) : py::none();
        d["witness"] = r.witness ? py::cast(*r.witness) : py::none();
        return d;
    }

    py::bytes serialize() const {
        std::ostringstream out;
        idx_.serialize(out);
        return py::bytes(out.str());
    }

    static PyIndex deserialize(const py::bytes& data) {
        std::istringstream in{std::string(data)};
        return PyIndex(FingerprintIndex::deserialize(in));
    }

    const FingerprintIndex& index() const { return idx_; }

private:
    FingerprintIndex idx_;
    std::unique_ptr<ZTable> zt_;
};

std::vector<uint64_t> py_lcp_array(const py::object& data, std::optional<uint64_t> sigma, const std::string& variant,
                                   uint64_t seed, unsigned tau) {
    Text const t = to_text(data, sigma);
    auto text = BitText::pack(t.chars, t.sigma, tau);
    Rng rng(seed);
    LcpVariant v;
    if (variant == "general")
        v = LcpVariant::General;
    else if (variant == "small_alphabet")
        v = LcpVariant::SmallAlphabet;
    else
        throw InputError("variant must be general or small_alphabet");
    return lcp_array(text, rng, v);
}

std::string u128_str(u128 v) {
    return to_string(v);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Implicit Karp-Rabin LCE index";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<IndexError>(m, "IndexError", PyExc_IndexError);
    py::register_exception<StateError>(m, "StateError", base.ptr());
    py::register_exception<BuildError>(m, "BuildError", base.ptr());
    py::register_exception<CapacityError>(m, "CapacityError", base.ptr());
    py::register_exception<ContractError>(m, "ContractError", base.ptr());

    py::class_<PyIndex>(m, "Index")
        .def_static("build", &PyIndex::build, py::arg("data"), py::arg("sigma") = py::none(),
                    py::arg("tau") = kDefaultTau, py::arg("seed") = 0, py::arg("deterministic") = false,
                    py::arg("checker") = "sort", py::arg("test_mode") = false)
        .def_static("deserialize", &PyIndex::deserialize, py::arg("data"))
        .def("lce", &PyIndex::lce, py::arg("i"), py::arg("j"), py::arg("fast") = true)
        .def("extract", &PyIndex::extract, py::arg("i"), py::arg("m"))
        .def("restore", &PyIndex::restore)
        .def("sparse_suffix_sort", &PyIndex::sort, py::arg("positions"), py::arg("strict") = false)
        .def("sparse_lcp", &PyIndex::slcp, py::arg("sorted_positions"))
        .def("select", &PyIndex::select, py::arg("rank"), py::arg("seed") = 0)
        .def("check_collisions", &PyIndex::check, py::arg("checker") = "sort")
        .def("serialize", &PyIndex::serialize)
        .def("__len__", [](const PyIndex& p) { return p.index().size(); })
        .def_property_readonly("q", [](const PyIndex& p) { return py::int_(py::str(u128_str(p.index().modulus().q()))); })
        .def_property_readonly("seed", [](const PyIndex& p) { return py::int_(py::str(u128_str(p.index().seed().value))); })
        .def_property_readonly("tau", [](const PyIndex& p) { return p.index().tau(); })
        .def_property_readonly("char_bits", [](const PyIndex& p) { return p.index().char_bits(); })
        .def_property_readonly("retries", [](const PyIndex& p) { return p.index().retries(); })
        .def_property_readonly("bit_length", [](const PyIndex& p) { return p.index().bit_length(); });

    m.def("lcp_array", &py_lcp_array, py::arg("data"), py::arg("sigma") = py::none(), py::arg("variant") = "general",
          py::arg("seed") = 0, py::arg("tau") = kDefaultTau);
}
