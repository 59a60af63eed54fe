#ifndef WVPA_AUTOMATON_HPP_
#define WVPA_AUTOMATON_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "wvpa/linalg.hpp"
#include "wvpa/nested_words.hpp"

namespace wvpa {

/// A weighted visibly pushdown automaton: n states, initial and final
/// weight vectors, and one n x n transition matrix per tagged letter (call
/// and return matrices additionally indexed by a stack symbol in
/// 1..gamma_size). A single base letter carries call, return and internal
/// matrices at once, so the automaton can read any well-matched tagged word
/// over its alphabet.
///
/// Immutable after construction; evaluation keeps its own stack, so sharing
/// one automaton across threads is safe.
struct Wvpa {
    std::size_t n = 0;
    Alphabet alphabet;
    std::size_t gamma_size = 0;
    Vector alpha;  // dim n
    Vector eta;    // dim n
    std::map<Symbol, Matrix> m_int;
    std::map<std::pair<Symbol, std::size_t>, Matrix> m_call;  // (letter, stack symbol)
    std::map<std::pair<Symbol, std::size_t>, Matrix> m_ret;

    /// Throws ValidationError unless every letter has a full set of matrices
    /// of the right shape with finite entries.
    void validate() const;

    /// Optional evaluation statistics.
    struct EvalStats {
        std::size_t max_stack_depth = 0;
    };

    /// The matrix the automaton computes for a well-matched word, by a
    /// single left-to-right scan: internals multiply on the right, a call
    /// pushes the current matrix and restarts from the identity, a return r
    /// pops (saved, c) and sets
    ///   current := saved * sum_gamma M_call(c, g) * current * M_ret(r, g).
    Matrix word_matrix(const TaggedWord& w, EvalStats* stats = nullptr) const;

    /// alpha^T * word_matrix(w) * eta.
    double behavior(const TaggedWord& w) const;
};

/// Deterministic test-fixture generator: all weights drawn uniformly from
/// [-1, 1) using a fixed-seed generator, identical output for identical
/// arguments on any platform.
Wvpa random_wvpa(std::size_t n, const Alphabet& alphabet, std::size_t gamma_size,
                 std::uint64_t seed);

/// JSON format:
/// {"n": int, "alphabet": [symbols], "gamma": int, "alpha": [...],
///  "eta": [...], "m_int": {"s": [[...]]}, "m_call": {"s/g": [[...]]},
///  "m_ret": {"s/g": [[...]]}}
/// where "s/g" joins the base letter and the 1-based stack symbol index.
/// Loading re-validates all invariants.
std::string wvpa_to_json(const Wvpa& a);
Wvpa wvpa_from_json(const std::string& text);
void save_wvpa(const Wvpa& a, const std::string& path);
Wvpa load_wvpa(const std::string& path);

}  // namespace wvpa

#endif  // WVPA_AUTOMATON_HPP_
