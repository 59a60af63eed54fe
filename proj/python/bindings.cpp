// Python bindings for the main operations. Words cross the boundary in the
// text syntax ("<a a>", "eps"); matrices and blocks as nested lists.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <sstream>

#include "wvpa/automaton.hpp"
#include "wvpa/hankel.hpp"
#include "wvpa/nested_words.hpp"
#include "wvpa/oracle.hpp"
#include "wvpa/synthesis.hpp"

namespace py = pybind11;

namespace {

wvpa::Alphabet make_alphabet(const std::vector<std::string>& symbols) {
    return wvpa::Alphabet(symbols);
}

std::vector<std::vector<double>> matrix_to_lists(const wvpa::Matrix& m) {
    std::vector<std::vector<double>> out(m.rows, std::vector<double>(m.cols));
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) out[i][j] = m(i, j);
    return out;
}

std::vector<std::string> words_to_text(const std::vector<wvpa::TaggedWord>& words) {
    std::vector<std::string> out;
    out.reserve(words.size());
    for (const auto& w : words) out.push_back(wvpa::format_tagged_word(w));
    return out;
}

std::vector<wvpa::TaggedWord> words_from_text(const std::vector<std::string>& texts) {
    std::vector<wvpa::TaggedWord> out;
    out.reserve(texts.size());
    for (const auto& t : texts) out.push_back(wvpa::parse_tagged_word(t));
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Weighted visibly pushdown automata: evaluation, Hankel blocks, synthesis";

    py::register_exception<wvpa::SynthesisError>(m, "SynthesisError");
    py::register_exception<wvpa::InputError>(m, "InputError");

    py::class_<wvpa::Wvpa>(m, "Automaton")
        .def_property_readonly("n", [](const wvpa::Wvpa& a) { return a.n; })
        .def_property_readonly("gamma", [](const wvpa::Wvpa& a) { return a.gamma_size; })
        .def_property_readonly("alphabet",
                               [](const wvpa::Wvpa& a) { return a.alphabet.symbols(); })
        .def("eval",
             [](const wvpa::Wvpa& a, const std::string& word) {
                 return a.behavior(wvpa::parse_tagged_word(word));
             },
             py::arg("word"))
        .def("to_json", [](const wvpa::Wvpa& a) { return wvpa::wvpa_to_json(a); })
        .def("save", [](const wvpa::Wvpa& a, const std::string& path) { wvpa::save_wvpa(a, path); },
             py::arg("path"))
        .def_static("from_json",
                    [](const std::string& text) { return wvpa::wvpa_from_json(text); },
                    py::arg("text"))
        .def_static("load", [](const std::string& path) { return wvpa::load_wvpa(path); },
                    py::arg("path"))
        .def_static(
            "random",
            [](std::size_t n, const std::vector<std::string>& alphabet, std::size_t gamma,
               std::uint64_t seed) {
                return wvpa::random_wvpa(n, make_alphabet(alphabet), gamma, seed);
            },
            py::arg("n"), py::arg("alphabet"), py::arg("gamma"), py::arg("seed"));

    py::class_<wvpa::FunctionOracle, std::shared_ptr<wvpa::FunctionOracle>>(m, "Oracle")
        .def("value",
             [](const wvpa::FunctionOracle& f, const std::string& word) {
                 const auto w = wvpa::parse_tagged_word(word);
                 if (!wvpa::is_well_matched(w))
                     throw wvpa::InputError("oracle arguments must be well-matched");
                 return f.value(w);
             },
             py::arg("word"))
        .def_property_readonly("id", [](const wvpa::FunctionOracle& f) { return f.id(); })
        .def_static("builtin", &wvpa::make_builtin_oracle, py::arg("name"))
        .def_static("from_automaton",
                    [](const wvpa::Wvpa& a) { return wvpa::make_automaton_oracle(a); },
                    py::arg("automaton"));

    py::class_<wvpa::HankelBlock>(m, "HankelBlock")
        .def_property_readonly(
            "row_labels", [](const wvpa::HankelBlock& b) { return words_to_text(b.row_labels); })
        .def_property_readonly(
            "col_labels", [](const wvpa::HankelBlock& b) { return words_to_text(b.col_labels); })
        .def_property_readonly("entries",
                               [](const wvpa::HankelBlock& b) { return matrix_to_lists(b.entries); })
        .def_property_readonly("oracle_id",
                               [](const wvpa::HankelBlock& b) { return b.oracle_id; })
        .def("rank", [](const wvpa::HankelBlock& b, double tol) { return wvpa::block_rank(b, tol); },
             py::arg("tol") = 1e-9)
        .def("to_csv", [](const wvpa::HankelBlock& b) {
            std::ostringstream out;
            wvpa::write_block_csv(b, out);
            return out.str();
        });

    py::class_<wvpa::SynthesisReport>(m, "SynthesisReport")
        .def_property_readonly("automaton",
                               [](const wvpa::SynthesisReport& r) { return r.automaton; })
        .def_property_readonly("states", [](const wvpa::SynthesisReport& r) { return r.states; })
        .def_property_readonly("rank", [](const wvpa::SynthesisReport& r) { return r.rank; })
        .def_property_readonly("stabilized",
                               [](const wvpa::SynthesisReport& r) { return r.stabilized; })
        .def_property_readonly(
            "grid_words", [](const wvpa::SynthesisReport& r) { return words_to_text(r.grid.words); })
        .def_property_readonly(
            "max_abs_error",
            [](const wvpa::SynthesisReport& r) { return r.roundtrip.max_abs_error; })
        .def_property_readonly(
            "max_rel_error",
            [](const wvpa::SynthesisReport& r) { return r.roundtrip.max_rel_error; })
        .def("to_text", [](const wvpa::SynthesisReport& r) {
            std::ostringstream out;
            wvpa::print_report(r, out);
            return out.str();
        });

    m.def("is_well_matched",
          [](const std::string& word) { return wvpa::is_well_matched(wvpa::parse_tagged_word(word)); },
          py::arg("word"));
    m.def(
        "encode",
        [](const std::vector<std::string>& word,
           const std::vector<std::pair<std::size_t, std::size_t>>& nu) {
            wvpa::NestedWord nw{word, nu};
            std::sort(nw.nu.begin(), nw.nu.end());
            return wvpa::format_tagged_word(wvpa::encode(nw));
        },
        py::arg("word"), py::arg("nu"),
        "Tagged-word encoding of a nested word given as (symbols, matching pairs).");
    m.def(
        "decode",
        [](const std::string& word) {
            const wvpa::NestedWord nw = wvpa::decode(wvpa::parse_tagged_word(word));
            return py::make_tuple(nw.word, nw.nu);
        },
        py::arg("word"), "Inverse of encode: returns (symbols, matching pairs).");
    m.def(
        "enumerate_well_matched",
        [](const std::vector<std::string>& alphabet, std::size_t max_len) {
            return words_to_text(wvpa::enumerate_well_matched(make_alphabet(alphabet), max_len));
        },
        py::arg("alphabet"), py::arg("max_len"));
    m.def(
        "build_block",
        [](const wvpa::OraclePtr& f, const std::vector<std::string>& rows,
           const std::vector<std::string>& cols) {
            return wvpa::build_block(*f, words_from_text(rows), words_from_text(cols));
        },
        py::arg("oracle"), py::arg("rows"), py::arg("cols"));
    m.def(
        "stabilized_rank",
        [](const wvpa::OraclePtr& f, const std::vector<std::string>& alphabet,
           std::size_t start_len, std::size_t max_len, double tol) {
            const auto sb =
                wvpa::stabilized_block(*f, make_alphabet(alphabet), start_len, max_len, tol);
            return py::make_tuple(sb.rank, sb.stabilized, sb.final_len);
        },
        py::arg("oracle"), py::arg("alphabet"), py::arg("start_len") = 2,
        py::arg("max_len") = 6, py::arg("tol") = 1e-9);
    m.def(
        "word_hankel_rank_growth",
        [](const wvpa::OraclePtr& f, const std::vector<std::string>& alphabet,
           const std::vector<std::size_t>& lengths, double tol) {
            return wvpa::word_hankel_rank_growth(*f, make_alphabet(alphabet), lengths, tol);
        },
        py::arg("oracle"), py::arg("alphabet"), py::arg("lengths"), py::arg("tol") = 1e-9);
    m.def(
        "synthesize",
        [](const wvpa::OraclePtr& f, const std::vector<std::string>& alphabet,
           std::size_t start_len, std::size_t max_len, double rank_tol, double solve_tol,
           std::size_t verify_len, std::uint64_t seed) {
            wvpa::SynthesisOptions opts;
            opts.start_len = start_len;
            opts.max_len = max_len;
            opts.rank_tol = rank_tol;
            opts.solve_tol = solve_tol;
            opts.verify_len = verify_len;
            opts.seed = seed;
            return wvpa::synthesize(*f, make_alphabet(alphabet), opts);
        },
        py::arg("oracle"), py::arg("alphabet"), py::arg("start_len") = 2,
        py::arg("max_len") = 8, py::arg("rank_tol") = 1e-9, py::arg("solve_tol") = 1e-8,
        py::arg("verify_len") = 8, py::arg("seed") = 12345);
    m.def(
        "verify_equivalence",
        [](const wvpa::Wvpa& a, const wvpa::OraclePtr& f,
           const std::vector<std::string>& alphabet, std::size_t max_len) {
            const auto eq = wvpa::verify_equivalence(a, *f, make_alphabet(alphabet), max_len);
            return py::make_tuple(eq.max_abs_error, eq.max_rel_error,
                                  wvpa::format_tagged_word(eq.worst_word));
        },
        py::arg("automaton"), py::arg("oracle"), py::arg("alphabet"), py::arg("max_len") = 8);
}
