#ifndef WVPA_SYNTHESIS_HPP_
#define WVPA_SYNTHESIS_HPP_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "wvpa/automaton.hpp"
#include "wvpa/hankel.hpp"
#include "wvpa/oracle.hpp"
#include "wvpa/spanning_grid.hpp"

namespace wvpa {

struct SynthesisOptions {
    std::size_t start_len = 2;   // first truncation length
    std::size_t max_len = 8;     // truncation growth limit
    double rank_tol = 1e-9;      // relative rank / pivot tolerance
    double solve_tol = 1e-8;     // residual tolerance for coordinate solves
    std::size_t verify_len = 8;  // round-trip verification length
    std::uint64_t seed = 12345;  // seed for the generic elements used internally
};

struct Equivalence {
    double max_abs_error = 0.0;
    double max_rel_error = 0.0;  // |diff| / max(1, |f(w)|)
    TaggedWord worst_word;       // argmax of the absolute error
    std::size_t words_checked = 0;
};

/// Everything the pipeline produced, including the residual diagnostics
/// that certify the construction on this run. max_roundtrip stays recorded
/// even when it is tiny.
struct SynthesisReport {
    Wvpa automaton;
    SpanningGrid grid;
    std::size_t rank = 0;
    std::size_t states = 0;
    bool stabilized = false;
    std::size_t block_len = 0;
    std::map<Symbol, double> internal_residuals;  // coordinate-solve residual per letter
    double max_solve_residual = 0.0;
    std::vector<Matrix> grid_matrices;  // n*n row-major: state-space matrix of each grid word
    double identity_basis_max = 0.0;     // |alpha^T M_w eta - f(w)| over grid words
    double identity_internal_max = 0.0;  // |alpha^T M_a eta - f(a)| over internal letters
    double identity_wrap_max = 0.0;      // wrap identity residual over pairs and grid words
    Equivalence roundtrip;
};

/// Builds an automaton with one state per spanning row and an equally large
/// stack alphabet from a function oracle:
///   stabilized truncation -> spanning grid -> shift operators (the matrix
///   a word induces on the row space, multiplicative under concatenation)
///   -> call/return pairs from an SVD expansion of the wrap action's
///   rearrangement, refined by alternating least squares when needed.
/// Failures (zero basis, rows outside the span, unsettled rank, no usable
/// factorization) surface as SynthesisError subclasses with diagnostics.
SynthesisReport synthesize(const FunctionOracle& f, const Alphabet& alphabet,
                           const SynthesisOptions& opts = {});

/// Exhaustive comparison of an automaton against an oracle over every
/// well-matched word of length <= max_len.
Equivalence verify_equivalence(const Wvpa& a, const FunctionOracle& f, const Alphabet& alphabet,
                               std::size_t max_len);

/// Diagnostic table for one call/return pair: N(i, j) = f(<c w_ij r>) / beta_ij.
Matrix wrap_value_matrix(const SpanningGrid& g, const FunctionOracle& f, const Symbol& c,
                         const Symbol& r);

void print_report(const SynthesisReport& report, std::ostream& out);

}  // namespace wvpa

#endif  // WVPA_SYNTHESIS_HPP_
