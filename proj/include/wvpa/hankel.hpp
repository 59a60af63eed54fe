#ifndef WVPA_HANKEL_HPP_
#define WVPA_HANKEL_HPP_

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "wvpa/linalg.hpp"
#include "wvpa/nested_words.hpp"
#include "wvpa/oracle.hpp"
#include "wvpa/spanning_grid.hpp"

namespace wvpa {

/// A finite truncation of the Hankel matrix of a function on well-matched
/// words: entries(u, v) = f(uv). Concatenations of well-matched words stay
/// well-matched, so f is defined on every entry.
struct HankelBlock {
    std::vector<TaggedWord> row_labels;
    std::vector<TaggedWord> col_labels;
    Matrix entries;
    std::string oracle_id;

    std::size_t col_index(const TaggedWord& label) const;  // throws InputError if absent
};

/// Fills a block from the oracle. Throws NotWellMatched if any label is not
/// well-matched.
HankelBlock build_block(const FunctionOracle& f, const std::vector<TaggedWord>& rows,
                        const std::vector<TaggedWord>& cols);

std::size_t block_rank(const HankelBlock& b, double rel_tol);

struct StabilizedBlock {
    HankelBlock block;
    std::size_t rank = 0;
    bool stabilized = false;
    std::size_t final_len = 0;
};

/// Grows square truncations over all well-matched words of length <= L,
/// raising L from start_len until the rank is unchanged for two consecutive
/// increments or max_len is reached. `stabilized` is false when the limit
/// was hit first.
StabilizedBlock stabilized_block(const FunctionOracle& f, const Alphabet& alphabet,
                                 std::size_t start_len, std::size_t max_len, double rel_tol);

/// Picks block_rank(b) independent rows by greedy pivoted elimination,
/// restricted to rows whose own value f(u) is nonzero (|f(u)| > rel_tol),
/// then pads cyclically to an n x n grid. Throws NoNonzeroBasis when no such
/// row exists or when the nonzero-valued rows fail to span the block.
SpanningGrid select_spanning(const HankelBlock& b, std::size_t n, double rel_tol);

/// Rank growth of the classical word Hankel matrix of f extended by zero:
/// indexed by ALL tagged words (matched or not) of length <= L, with
/// H(u, v) = f(uv) when uv is well-matched and 0 otherwise. Exact duplicate
/// rows and columns are collapsed before the rank computation (they cannot
/// change it); the label count still grows as (3|Sigma|)^L, so keep L small.
std::vector<std::pair<std::size_t, std::size_t>> word_hankel_rank_growth(
    const FunctionOracle& f, const Alphabet& alphabet, const std::vector<std::size_t>& lengths,
    double rel_tol);

/// CSV dump: first row holds the column labels, first column the row labels.
void write_block_csv(const HankelBlock& b, std::ostream& out);

}  // namespace wvpa

#endif  // WVPA_HANKEL_HPP_
