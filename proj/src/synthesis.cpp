#include "wvpa/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <ostream>
#include <random>

namespace wvpa {

namespace {

double uniform_pm1(std::mt19937_64& eng) {
    return 2.0 * (static_cast<double>(eng() >> 11) * 0x1.0p-53) - 1.0;
}

/// Oracle rows expressed in the coordinates of a fixed spanning basis. A row
/// is queried over the block's column labels and decomposed by least
/// squares; a residual above tolerance means the basis does not explain the
/// word, so it surfaces as NotInSpan.
class RowSpace {
public:
    RowSpace(const FunctionOracle& f, std::vector<TaggedWord> basis,
             std::vector<TaggedWord> columns, double solve_tol)
        : f_(f), basis_(std::move(basis)), columns_(std::move(columns)), tol_(solve_tol) {
        std::vector<Vector> basis_rows;
        basis_rows.reserve(basis_.size());
        for (const auto& b : basis_) basis_rows.push_back(row_of(b));
        solver_ = std::make_unique<LeastSquares>(basis_rows);
    }

    Vector row_of(const TaggedWord& w) const {
        Vector r(columns_.size());
        for (std::size_t i = 0; i < columns_.size(); ++i)
            r[i] = f_.value(concat(w, columns_[i]));
        return r;
    }

    Vector coords(const TaggedWord& w, double* residual = nullptr) {
        const Vector target = row_of(w);
        const auto sol = solver_->solve(target);
        max_residual_ = std::max(max_residual_, sol.residual_inf);
        if (sol.residual_inf > tol_ * (1.0 + inf_norm(target)))
            throw NotInSpan("row of " + format_tagged_word(w) +
                                " is not in the span of the basis rows (residual " +
                                std::to_string(sol.residual_inf) +
                                "); the truncation may be too small",
                            sol.residual_inf);
        if (residual) *residual = sol.residual_inf;
        return sol.coefficients;
    }

    /// The shift operator of a word: concatenating u on the right maps each
    /// basis row to another row, which this expresses in the basis again.
    /// Shifts are multiplicative by construction: T(uv) = T(u) T(v).
    Matrix shift_op(const TaggedWord& u, double* residual = nullptr) {
        const std::size_t r = basis_.size();
        Matrix t(r, r);
        double worst = 0.0;
        for (std::size_t k = 0; k < r; ++k) {
            double res = 0.0;
            const Vector row = coords(concat(basis_[k], u), &res);
            worst = std::max(worst, res);
            for (std::size_t j = 0; j < r; ++j) t(k, j) = row[j];
        }
        if (residual) *residual = worst;
        return t;
    }

    double max_residual() const { return max_residual_; }
    std::size_t rank() const { return basis_.size(); }
    const std::vector<TaggedWord>& basis() const { return basis_; }

private:
    const FunctionOracle& f_;
    std::vector<TaggedWord> basis_;
    std::vector<TaggedWord> columns_;
    double tol_;
    double max_residual_ = 0.0;
    std::unique_ptr<LeastSquares> solver_;
};

/// Everything the call/return fit needs: shift operators of words spanning
/// the observable operator space, together with their wrapped images
/// T(<c u r>) for every letter pair.
struct WrapData {
    std::vector<TaggedWord> span_words;
    std::vector<Matrix> span_ops;
    std::map<std::pair<Symbol, Symbol>, std::vector<Matrix>> wrapped;
};

Vector vec_of(const Matrix& m) { return m.a; }

/// Greedy selection of words whose shift operators span the operator space
/// observed on the truncation. Returns at most r^2 words.
WrapData collect_wrap_data(RowSpace& rows, const std::vector<TaggedWord>& candidates,
                           const Alphabet& alphabet, double rel_tol) {
    const std::size_t r = rows.rank();
    WrapData data;
    std::vector<std::pair<TaggedWord, Matrix>> ops;
    ops.reserve(candidates.size());
    for (const auto& w : candidates) ops.emplace_back(w, rows.shift_op(w));

    std::vector<Vector> work;
    double scale = 0.0;
    for (const auto& [w, t] : ops) {
        work.push_back(vec_of(t));
        scale = std::max(scale, two_norm(work.back()));
    }
    std::vector<bool> taken(ops.size(), false);
    std::vector<Vector> ortho;
    while (data.span_words.size() < r * r) {
        std::size_t best = ops.size();
        double best_norm = -1.0;
        for (std::size_t i = 0; i < ops.size(); ++i) {
            if (taken[i]) continue;
            const double nrm = two_norm(work[i]);
            if (nrm > best_norm + 1e-15 * scale) {
                best_norm = nrm;
                best = i;
            }
        }
        if (best == ops.size() || best_norm <= rel_tol * scale) break;
        taken[best] = true;
        Vector q = work[best];
        for (const auto& u : ortho) {
            const double proj = dot(u, q);
            for (std::size_t t = 0; t < q.size(); ++t) q[t] -= proj * u[t];
        }
        const double qn = two_norm(q);
        for (double& x : q) x /= qn;
        ortho.push_back(q);
        data.span_words.push_back(ops[best].first);
        data.span_ops.push_back(ops[best].second);
        for (std::size_t i = 0; i < ops.size(); ++i) {
            if (taken[i]) continue;
            const double proj = dot(q, work[i]);
            for (std::size_t t = 0; t < work[i].size(); ++t) work[i][t] -= proj * q[t];
        }
    }

    for (const auto& c : alphabet.symbols())
        for (const auto& ret_letter : alphabet.symbols()) {
            std::vector<Matrix> wrapped;
            wrapped.reserve(data.span_words.size());
            for (const auto& u : data.span_words)
                wrapped.push_back(rows.shift_op(wrap(c, u, ret_letter)));
            data.wrapped[{c, ret_letter}] = std::move(wrapped);
        }
    return data;
}

/// One call matrix and one return matrix per letter and stack symbol,
/// flattened as vec(M) blocks per letter.
struct KrausFamily {
    std::size_t n = 0;
    std::size_t letters = 0;
    std::size_t gamma = 0;
    std::vector<Vector> call;  // gamma entries, each letters*n*n long
    std::vector<Vector> ret;
};

Matrix slice(const Vector& flat, std::size_t letter, std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = flat[letter * n * n + i * n + j];
    return m;
}

double wrap_fit_residual(const KrausFamily& fam, const WrapData& data,
                         const Alphabet& alphabet) {
    double worst = 0.0;
    const std::size_t n = fam.n;
    for (std::size_t ci = 0; ci < fam.letters; ++ci)
        for (std::size_t ri = 0; ri < fam.letters; ++ri) {
            const auto& wrapped =
                data.wrapped.at({alphabet.at(ci), alphabet.at(ri)});
            for (std::size_t t = 0; t < data.span_ops.size(); ++t) {
                Matrix acc(n, n);
                for (std::size_t g = 0; g < fam.gamma; ++g)
                    acc = add(acc, mul(mul(slice(fam.call[g], ci, n), data.span_ops[t]),
                                       slice(fam.ret[g], ri, n)));
                for (std::size_t e = 0; e < acc.a.size(); ++e)
                    worst = std::max(worst,
                                     std::fabs(acc.a[e] - wrapped[t].a[e]) /
                                         (1.0 + std::fabs(wrapped[t].a[e])));
            }
        }
    return worst;
}

/// Minimal-norm linear extension of the wrap action, written as the joint
/// rearrangement matrix big[(c,(i,j)), (r,(k,l))] so that a rank-g
/// decomposition yields g stack symbols.
Matrix minimal_wrap_extension(const WrapData& data, const Alphabet& alphabet, std::size_t n) {
    const std::size_t letters = alphabet.size();
    const std::size_t nn = n * n;
    const std::size_t dim = letters * nn;
    // Unknown x = vec(big), row-major over (row, col). Constraints: for each
    // letter pair and each spanning operator T,
    //   sum_{j,k} big[(c,(p,j)),(r,(k,q))] T(j,k) = W(p,q).
    std::vector<Vector> columns(dim * dim);
    const std::size_t span = data.span_ops.size();
    const std::size_t n_constraints = letters * letters * span * nn;
    for (auto& col : columns) col.assign(n_constraints, 0.0);
    Vector rhs(n_constraints, 0.0);
    std::size_t eq = 0;
    for (std::size_t ci = 0; ci < letters; ++ci)
        for (std::size_t ri = 0; ri < letters; ++ri) {
            const auto& wrapped = data.wrapped.at({alphabet.at(ci), alphabet.at(ri)});
            for (std::size_t t = 0; t < span; ++t) {
                const Matrix& op = data.span_ops[t];
                for (std::size_t p = 0; p < n; ++p)
                    for (std::size_t q = 0; q < n; ++q) {
                        rhs[eq] = wrapped[t](p, q);
                        for (std::size_t j = 0; j < n; ++j)
                            for (std::size_t k = 0; k < n; ++k) {
                                if (op(j, k) == 0.0) continue;
                                const std::size_t row = ci * nn + p * n + j;
                                const std::size_t col = ri * nn + k * n + q;
                                columns[row * dim + col][eq] += op(j, k);
                            }
                        ++eq;
                    }
            }
        }
    LeastSquares ls(columns);
    const auto sol = ls.solve(rhs);
    Matrix big(dim, dim);
    big.a = sol.coefficients;
    return big;
}

KrausFamily family_from_expansion(const Matrix& big, std::size_t n, std::size_t letters,
                                  std::size_t gamma) {
    const auto terms = svd_expansion(big, gamma);
    KrausFamily fam;
    fam.n = n;
    fam.letters = letters;
    fam.gamma = gamma;
    for (const auto& [p, q] : terms) {
        fam.call.push_back(p);
        fam.ret.push_back(q);
    }
    return fam;
}

/// Alternating least squares for a Kraus family of fixed size `gamma` when
/// the minimal-norm extension has too high a rank: solve all return
/// matrices given the call side (a linear fit), then the call side given the
/// returns, and repeat.
// TODO: stop the rounds early once the fit residual stops improving.
void als_refine(KrausFamily& fam, const WrapData& data, const Alphabet& alphabet,
                std::size_t iterations) {
    const std::size_t n = fam.n;
    const std::size_t nn = n * n;
    const std::size_t letters = fam.letters;
    const std::size_t span = data.span_ops.size();
    const std::size_t gamma = fam.gamma;

    for (std::size_t round = 0; round < iterations; ++round) {
        // Fix calls, solve returns: unknowns per return letter are the
        // stacked vec(Mr^(r, g)).
        for (std::size_t ri = 0; ri < letters; ++ri) {
            std::vector<Vector> cols(gamma * nn);
            const std::size_t n_eq = letters * span * nn;
            for (auto& c : cols) c.assign(n_eq, 0.0);
            Vector rhs(n_eq, 0.0);
            std::size_t eq = 0;
            for (std::size_t ci = 0; ci < letters; ++ci) {
                const auto& wrapped = data.wrapped.at({alphabet.at(ci), alphabet.at(ri)});
                for (std::size_t t = 0; t < span; ++t) {
                    std::vector<Matrix> left(gamma);
                    for (std::size_t g = 0; g < gamma; ++g)
                        left[g] = mul(slice(fam.call[g], ci, n), data.span_ops[t]);
                    for (std::size_t p = 0; p < n; ++p)
                        for (std::size_t q = 0; q < n; ++q) {
                            rhs[eq] = wrapped[t](p, q);
                            for (std::size_t g = 0; g < gamma; ++g)
                                for (std::size_t k = 0; k < n; ++k)
                                    cols[g * nn + k * n + q][eq] += left[g](p, k);
                            ++eq;
                        }
                }
            }
            const auto sol = LeastSquares(cols).solve(rhs);
            for (std::size_t g = 0; g < gamma; ++g)
                for (std::size_t e = 0; e < nn; ++e)
                    fam.ret[g][ri * nn + e] = sol.coefficients[g * nn + e];
        }
        // Fix returns, solve calls.
        for (std::size_t ci = 0; ci < letters; ++ci) {
            std::vector<Vector> cols(gamma * nn);
            const std::size_t n_eq = letters * span * nn;
            for (auto& c : cols) c.assign(n_eq, 0.0);
            Vector rhs(n_eq, 0.0);
            std::size_t eq = 0;
            for (std::size_t ri = 0; ri < letters; ++ri) {
                const auto& wrapped = data.wrapped.at({alphabet.at(ci), alphabet.at(ri)});
                for (std::size_t t = 0; t < span; ++t) {
                    std::vector<Matrix> right(gamma);
                    for (std::size_t g = 0; g < gamma; ++g)
                        right[g] = mul(data.span_ops[t], slice(fam.ret[g], ri, n));
                    for (std::size_t p = 0; p < n; ++p)
                        for (std::size_t q = 0; q < n; ++q) {
                            rhs[eq] = wrapped[t](p, q);
                            for (std::size_t g = 0; g < gamma; ++g)
                                for (std::size_t j = 0; j < n; ++j)
                                    cols[g * nn + p * n + j][eq] += right[g](j, q);
                            ++eq;
                        }
                }
            }
            const auto sol = LeastSquares(cols).solve(rhs);
            for (std::size_t g = 0; g < gamma; ++g)
                for (std::size_t e = 0; e < nn; ++e)
                    fam.call[g][ci * nn + e] = sol.coefficients[g * nn + e];
        }
    }
}

KrausFamily fit_call_return(const WrapData& data, const Alphabet& alphabet, std::size_t n,
                            double tol, std::uint64_t seed) {
    const std::size_t letters = alphabet.size();
    const std::size_t nn = n * n;

    const Matrix big = minimal_wrap_extension(data, alphabet, n);
    if (big.max_abs() == 0.0 || numerical_rank(big, 1e-9) <= n) {
        KrausFamily fam = family_from_expansion(big, n, letters, n);
        if (wrap_fit_residual(fam, data, alphabet) <= tol) return fam;
    }

    // The unconstrained extension needs more than n stack symbols; look for
    // a size-n family directly by alternating least squares from a few
    // deterministic starting points.
    std::mt19937_64 eng(seed);
    KrausFamily best;
    double best_residual = std::numeric_limits<double>::infinity();
    for (int attempt = 0; attempt < 6; ++attempt) {
        KrausFamily fam;
        fam.n = n;
        fam.letters = letters;
        fam.gamma = n;
        fam.call.assign(n, Vector(letters * nn, 0.0));
        fam.ret.assign(n, Vector(letters * nn, 0.0));
        if (attempt == 0) {
            // Identity start: one stack symbol active, call side the identity.
            for (std::size_t ci = 0; ci < letters; ++ci)
                for (std::size_t i = 0; i < n; ++i) fam.call[0][ci * nn + i * n + i] = 1.0;
        } else {
            for (auto& v : fam.call)
                for (double& x : v) x = uniform_pm1(eng);
        }
        als_refine(fam, data, alphabet, 60);
        const double res = wrap_fit_residual(fam, data, alphabet);
        if (res < best_residual) {
            best_residual = res;
            best = fam;
        }
        if (best_residual <= tol) break;
    }
    if (best_residual > tol)
        throw RepresentationError(
            "call/return factorization with " + std::to_string(n) +
            " stack symbols did not reach tolerance (residual " +
            std::to_string(best_residual) + ")");
    return best;
}

}  // namespace

Matrix wrap_value_matrix(const SpanningGrid& g, const FunctionOracle& f, const Symbol& c,
                         const Symbol& r) {
    Matrix out(g.n, g.n);
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = 0; j < g.n; ++j)
            out(i, j) = f.value(wrap(c, g.word(i, j), r)) / g.beta(i, j);
    return out;
}

Equivalence verify_equivalence(const Wvpa& a, const FunctionOracle& f, const Alphabet& alphabet,
                               std::size_t max_len) {
    Equivalence eq;
    enumerate_well_matched(alphabet, max_len, [&](const TaggedWord& w) {
        const double got = a.behavior(w);
        const double want = f.value(w);
        const double abs_err = std::fabs(got - want);
        const double rel_err = abs_err / std::max(1.0, std::fabs(want));
        if (abs_err > eq.max_abs_error) {
            eq.max_abs_error = abs_err;
            eq.worst_word = w;
        }
        eq.max_rel_error = std::max(eq.max_rel_error, rel_err);
        ++eq.words_checked;
    });
    return eq;
}

SynthesisReport synthesize(const FunctionOracle& f, const Alphabet& alphabet,
                           const SynthesisOptions& opts) {
    SynthesisReport report;
    const StabilizedBlock sb =
        stabilized_block(f, alphabet, opts.start_len, opts.max_len, opts.rank_tol);
    report.rank = sb.rank;
    report.stabilized = sb.stabilized;
    report.block_len = sb.final_len;
    if (!sb.stabilized)
        throw NotStabilized("rank still changing at truncation length " +
                            std::to_string(sb.final_len) + "; raise the length limit");
    if (sb.rank == 0)
        throw NoNonzeroBasis("the function vanishes on the whole truncation");

    // One state per spanning row: concatenation acts on rows from the right,
    // so the shift operators give a multiplicative matrix assignment.
    const std::size_t n = sb.rank;
    report.states = n;
    report.grid = select_spanning(sb.block, n, opts.rank_tol);

    try {
        RowSpace rows(f, report.grid.basis, sb.block.col_labels, opts.solve_tol);

        Wvpa a;
        a.n = n;
        a.alphabet = alphabet;
        a.gamma_size = n;
        a.alpha = rows.coords(TaggedWord{});
        a.eta.resize(n);
        for (std::size_t k = 0; k < n; ++k) a.eta[k] = f.value(report.grid.basis[k]);
        std::map<Symbol, double> internal_residuals;
        for (const auto& s : alphabet.symbols()) {
            double residual = 0.0;
            a.m_int[s] = rows.shift_op(TaggedWord{internal(s)}, &residual);
            internal_residuals[s] = residual;
        }

        const WrapData data =
            collect_wrap_data(rows, sb.block.row_labels, alphabet, opts.rank_tol);
        const KrausFamily fam = fit_call_return(data, alphabet, n, opts.solve_tol, opts.seed);
        for (std::size_t g = 0; g < n; ++g)
            for (std::size_t li = 0; li < alphabet.size(); ++li) {
                a.m_call[{alphabet.at(li), g + 1}] = slice(fam.call[g], li, n);
                a.m_ret[{alphabet.at(li), g + 1}] = slice(fam.ret[g], li, n);
            }
        a.validate();
        report.automaton = std::move(a);
        report.internal_residuals = std::move(internal_residuals);
        report.max_solve_residual = rows.max_residual();

        report.grid_matrices.resize(report.grid.words.size());
        std::vector<Matrix> basis_ops(n);
        for (std::size_t k = 0; k < n; ++k) basis_ops[k] = rows.shift_op(report.grid.basis[k]);
        for (std::size_t k = 0; k < report.grid.words.size(); ++k)
            report.grid_matrices[k] = basis_ops[k % n];
    } catch (const LinalgError& e) {
        throw RepresentationError(std::string("numeric kernel failure during synthesis: ") +
                                  e.what());
    }

    // Residuals of the construction's defining identities.
    const Wvpa& a = report.automaton;
    for (std::size_t k = 0; k < report.grid.words.size(); ++k) {
        const double got = dot(a.alpha, mul(report.grid_matrices[k], a.eta));
        report.identity_basis_max =
            std::max(report.identity_basis_max, std::fabs(got - report.grid.values[k]));
    }
    for (const auto& s : alphabet.symbols()) {
        const double got = dot(a.alpha, mul(a.m_int.at(s), a.eta));
        const double want = f.value(TaggedWord{internal(s)});
        report.identity_internal_max = std::max(report.identity_internal_max, std::fabs(got - want));
    }
    for (const auto& c : alphabet.symbols())
        for (const auto& r : alphabet.symbols())
            for (std::size_t k = 0; k < report.grid.words.size(); ++k) {
                Matrix closed(a.n, a.n);
                for (std::size_t g = 1; g <= a.gamma_size; ++g)
                    closed = add(closed, mul(mul(a.m_call.at({c, g}), report.grid_matrices[k]),
                                             a.m_ret.at({r, g})));
                const double got = dot(a.alpha, mul(closed, a.eta));
                const double want = f.value(wrap(c, report.grid.words[k], r));
                report.identity_wrap_max = std::max(report.identity_wrap_max, std::fabs(got - want));
            }

    report.roundtrip = verify_equivalence(report.automaton, f, alphabet, opts.verify_len);
    return report;
}

void print_report(const SynthesisReport& report, std::ostream& out) {
    auto fmt = [](double x) {
        char buf[48];
        std::snprintf(buf, sizeof buf, "%.12g", x);
        return std::string(buf);
    };
    out << "rank=" << report.rank << " states=" << report.states
        << " gamma=" << report.automaton.gamma_size
        << " stabilized=" << (report.stabilized ? "true" : "false")
        << " block_len=" << report.block_len << "\n";
    for (std::size_t i = 0; i < report.grid.n; ++i)
        for (std::size_t j = 0; j < report.grid.n; ++j)
            out << "grid[" << (i + 1) << "," << (j + 1)
                << "]=" << format_tagged_word(report.grid.word(i, j))
                << " value=" << fmt(report.grid.value(i, j))
                << " beta=" << fmt(report.grid.beta(i, j)) << "\n";
    for (const auto& [s, res] : report.internal_residuals)
        out << "residual[internal " << s << "]=" << fmt(res) << "\n";
    out << "max_solve_residual=" << fmt(report.max_solve_residual) << "\n";
    out << "identity_residuals basis=" << fmt(report.identity_basis_max)
        << " internal=" << fmt(report.identity_internal_max)
        << " wrap=" << fmt(report.identity_wrap_max) << "\n";
    out << "roundtrip words=" << report.roundtrip.words_checked
        << " max_abs_error=" << fmt(report.roundtrip.max_abs_error)
        << " max_rel_error=" << fmt(report.roundtrip.max_rel_error)
        << " worst_word=" << format_tagged_word(report.roundtrip.worst_word) << "\n";
}

}  // namespace wvpa
