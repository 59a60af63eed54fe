#ifndef WVPA_SPANNING_GRID_HPP_
#define WVPA_SPANNING_GRID_HPP_

#include <cstddef>
#include <vector>

#include "wvpa/nested_words.hpp"

namespace wvpa {

/// An n x n arrangement of spanning words for a Hankel block. `basis` holds
/// the `rank` distinct pivot words in selection order; the grid repeats them
/// cyclically to fill all n^2 cells. Every grid value is nonzero, and
/// betas[i][j] = values[i][j] / values[0][j] by construction.
struct SpanningGrid {
    std::size_t n = 0;
    std::size_t rank = 0;
    std::vector<TaggedWord> words;   // n*n, row-major
    std::vector<double> values;      // f(words[k])
    std::vector<double> betas;       // values[k] / values[column of k in row 0]
    std::vector<TaggedWord> basis;   // rank distinct words, pivot order

    const TaggedWord& word(std::size_t i, std::size_t j) const { return words[i * n + j]; }
    double value(std::size_t i, std::size_t j) const { return values[i * n + j]; }
    double beta(std::size_t i, std::size_t j) const { return betas[i * n + j]; }
};

}  // namespace wvpa

#endif  // WVPA_SPANNING_GRID_HPP_
