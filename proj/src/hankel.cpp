#include "wvpa/hankel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <ostream>

namespace wvpa {

std::size_t HankelBlock::col_index(const TaggedWord& label) const {
    auto it = std::find(col_labels.begin(), col_labels.end(), label);
    if (it == col_labels.end())
        throw InputError("block has no column labeled " + format_tagged_word(label));
    return static_cast<std::size_t>(it - col_labels.begin());
}

HankelBlock build_block(const FunctionOracle& f, const std::vector<TaggedWord>& rows,
                        const std::vector<TaggedWord>& cols) {
    for (const auto* labels : {&rows, &cols})
        for (const auto& w : *labels)
            if (!is_well_matched(w))
                throw NotWellMatched("block label is not well-matched: " + format_tagged_word(w),
                                     0);
    HankelBlock b;
    b.row_labels = rows;
    b.col_labels = cols;
    b.oracle_id = f.id();
    b.entries = Matrix(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            b.entries(i, j) = f.value(concat(rows[i], cols[j]));
    if (!b.entries.all_finite()) throw LinalgError("oracle produced a non-finite value");
    return b;
}

std::size_t block_rank(const HankelBlock& b, double rel_tol) {
    return numerical_rank(b.entries, rel_tol);
}

StabilizedBlock stabilized_block(const FunctionOracle& f, const Alphabet& alphabet,
                                 std::size_t start_len, std::size_t max_len, double rel_tol) {
    if (start_len > max_len) throw InputError("stabilized_block: start_len exceeds max_len");
    StabilizedBlock out;
    std::size_t len = start_len;
    auto labels = enumerate_well_matched(alphabet, len);
    out.block = build_block(f, labels, labels);
    out.rank = block_rank(out.block, rel_tol);
    std::size_t unchanged = 0;
    while (len < max_len && unchanged < 2) {
        ++len;
        labels = enumerate_well_matched(alphabet, len);
        HankelBlock next = build_block(f, labels, labels);
        const std::size_t rank = block_rank(next, rel_tol);
        unchanged = (rank == out.rank) ? unchanged + 1 : 0;
        out.block = std::move(next);
        out.rank = rank;
    }
    out.stabilized = unchanged >= 2;
    out.final_len = len;
    return out;
}

SpanningGrid select_spanning(const HankelBlock& b, std::size_t n, double rel_tol) {
    const std::size_t n_rows = b.row_labels.size();
    const std::size_t eps_col = b.col_index(TaggedWord{});
    const std::size_t target = block_rank(b, rel_tol);
    if (target == 0 || n == 0)
        throw NoNonzeroBasis("the block is zero: no spanning row with a nonzero value exists");
    if (target > n * n)
        throw InputError("select_spanning: block rank exceeds n^2");

    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < n_rows; ++i)
        if (std::fabs(b.entries(i, eps_col)) > rel_tol) candidates.push_back(i);
    if (candidates.empty())
        throw NoNonzeroBasis("no row with a nonzero value: every candidate has |f(u)| <= tol");

    // Greedy pivoted elimination over the nonzero-valued rows: repeatedly
    // take the row with the largest residual after projecting out the rows
    // already chosen.
    std::map<std::size_t, Vector> work;
    double scale = 0.0;
    for (std::size_t i : candidates) {
        work[i] = b.entries.row(i);
        scale = std::max(scale, two_norm(work[i]));
    }
    std::vector<std::size_t> selected;
    std::vector<Vector> ortho;
    while (selected.size() < target) {
        std::size_t best = n_rows;
        double best_norm = -1.0;
        for (std::size_t i : candidates) {
            if (std::find(selected.begin(), selected.end(), i) != selected.end()) continue;
            const double nrm = two_norm(work[i]);
            if (nrm > best_norm + 1e-15 * scale) {
                best_norm = nrm;
                best = i;
            }
        }
        if (best == n_rows || best_norm <= rel_tol * scale) break;
        Vector q = work[best];
        for (double& x : q) x /= best_norm;
        // One re-orthogonalization pass keeps the pivots numerically sound.
        for (const auto& u : ortho) {
            const double proj = dot(u, q);
            for (std::size_t k = 0; k < q.size(); ++k) q[k] -= proj * u[k];
        }
        const double qn = two_norm(q);
        for (double& x : q) x /= qn;
        ortho.push_back(q);
        selected.push_back(best);
        for (std::size_t i : candidates) {
            if (std::find(selected.begin(), selected.end(), i) != selected.end()) continue;
            const double proj = dot(q, work[i]);
            for (std::size_t k = 0; k < q.size(); ++k) work[i][k] -= proj * q[k];
        }
    }
    if (selected.size() < target)
        throw NoNonzeroBasis("rows with nonzero values span only " +
                             std::to_string(selected.size()) + " of the block's rank " +
                             std::to_string(target));

    // The chosen rows must span every block row, including the zero-valued
    // ones that were excluded from the pivot pool.
    for (std::size_t i = 0; i < n_rows; ++i) {
        Vector r = b.entries.row(i);
        const double norm_inf = inf_norm(r);
        for (const auto& u : ortho) {
            const double proj = dot(u, r);
            for (std::size_t k = 0; k < r.size(); ++k) r[k] -= proj * u[k];
        }
        if (inf_norm(r) > rel_tol * (1.0 + norm_inf) * 10.0)
            throw NoNonzeroBasis("nonzero-valued spanning rows do not span row " +
                                 format_tagged_word(b.row_labels[i]));
    }

    SpanningGrid g;
    g.n = n;
    g.rank = target;
    for (std::size_t i : selected) g.basis.push_back(b.row_labels[i]);
    g.words.resize(n * n);
    g.values.resize(n * n);
    g.betas.resize(n * n);
    for (std::size_t k = 0; k < n * n; ++k) {
        const std::size_t src = selected[k % selected.size()];
        g.words[k] = b.row_labels[src];
        g.values[k] = b.entries(src, eps_col);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g.betas[i * n + j] = g.values[i * n + j] / g.values[j];
    return g;
}

namespace {

struct WordInfo {
    TaggedWord word;
    MatchProfile profile;
};

// Collapses exact duplicate columns of a column-major collection.
std::vector<Vector> dedup(const std::vector<Vector>& vecs) {
    std::map<Vector, bool> seen;
    std::vector<Vector> out;
    for (const auto& v : vecs) {
        if (seen.emplace(v, true).second) out.push_back(v);
    }
    return out;
}

}  // namespace

std::vector<std::pair<std::size_t, std::size_t>> word_hankel_rank_growth(
    const FunctionOracle& f, const Alphabet& alphabet, const std::vector<std::size_t>& lengths,
    double rel_tol) {
    for (std::size_t i = 1; i < lengths.size(); ++i)
        if (lengths[i] <= lengths[i - 1]) throw InputError("lengths must be ascending");

    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t len : lengths) {
        const auto labels = enumerate_all_tagged(alphabet, len);
        std::vector<WordInfo> info(labels.size());
        for (std::size_t i = 0; i < labels.size(); ++i)
            info[i] = {labels[i], match_profile(labels[i])};

        // uv is well-matched iff u has no unmatched returns, v no unmatched
        // calls, and u's open calls equal v's pending returns; all other
        // entries are zero. Group the usable rows by open-call count so each
        // column only touches its compatible rows.
        std::map<std::size_t, std::vector<std::size_t>> rows_by_open;
        for (std::size_t i = 0; i < info.size(); ++i)
            if (info[i].profile.unmatched_returns == 0)
                rows_by_open[info[i].profile.unmatched_calls].push_back(i);

        // Stream columns, keeping only distinct ones; duplicates never touch
        // more than one column buffer at a time.
        std::vector<Vector> columns;
        std::set<Vector> seen;
        Vector column(info.size(), 0.0);
        for (const auto& v : info) {
            std::fill(column.begin(), column.end(), 0.0);
            if (v.profile.unmatched_calls == 0) {
                const auto it = rows_by_open.find(v.profile.unmatched_returns);
                if (it != rows_by_open.end())
                    for (std::size_t i : it->second)
                        column[i] = f.value(concat(info[i].word, v.word));
            }
            if (seen.insert(column).second) columns.push_back(column);
        }
        seen.clear();

        std::vector<Vector> rows(info.size(), Vector(columns.size()));
        for (std::size_t j = 0; j < columns.size(); ++j)
            for (std::size_t i = 0; i < info.size(); ++i) rows[i][j] = columns[j][i];
        rows = dedup(rows);

        Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < m.cols; ++j) m(i, j) = rows[i][j];
        out.emplace_back(len, numerical_rank(m, rel_tol));
    }
    return out;
}

void write_block_csv(const HankelBlock& b, std::ostream& out) {
    auto fmt = [](double x) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.12g", x);
        return std::string(buf);
    };
    for (const auto& c : b.col_labels) out << ',' << format_tagged_word(c);
    out << '\n';
    for (std::size_t i = 0; i < b.row_labels.size(); ++i) {
        out << format_tagged_word(b.row_labels[i]);
        for (std::size_t j = 0; j < b.col_labels.size(); ++j)
            out << ',' << fmt(b.entries(i, j));
        out << '\n';
    }
}

}  // namespace wvpa
