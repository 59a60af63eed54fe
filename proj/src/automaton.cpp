#include "wvpa/automaton.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"

namespace wvpa {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw ValidationError("invalid automaton: " + msg);
}

bool finite(const Vector& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

}  // namespace

void Wvpa::validate() const {
    require(n >= 1, "state count must be positive");
    require(gamma_size >= 1, "stack alphabet must be non-empty");
    require(alphabet.size() >= 1, "alphabet must be non-empty");
    require(alpha.size() == n && eta.size() == n, "alpha/eta must have dimension n");
    require(finite(alpha) && finite(eta), "alpha/eta entries must be finite");
    for (const auto& s : alphabet.symbols()) {
        auto it = m_int.find(s);
        require(it != m_int.end(), "missing internal matrix for letter " + s);
        require(it->second.rows == n && it->second.cols == n,
                "internal matrix for " + s + " must be n x n");
        require(it->second.all_finite(), "internal matrix for " + s + " has non-finite entries");
        for (std::size_t g = 1; g <= gamma_size; ++g) {
            for (const auto* table : {&m_call, &m_ret}) {
                auto jt = table->find({s, g});
                require(jt != table->end(), "missing call/return matrix for letter " + s +
                                                " and stack symbol " + std::to_string(g));
                require(jt->second.rows == n && jt->second.cols == n,
                        "call/return matrices must be n x n");
                require(jt->second.all_finite(), "call/return matrix has non-finite entries");
            }
        }
    }
    require(m_int.size() == alphabet.size(), "internal matrix for unknown letter present");
    require(m_call.size() == alphabet.size() * gamma_size &&
                m_ret.size() == alphabet.size() * gamma_size,
            "call/return matrix for unknown letter or stack symbol present");
}

Matrix Wvpa::word_matrix(const TaggedWord& w, EvalStats* stats) const {
    Matrix current = Matrix::identity(n);
    struct Frame {
        Matrix saved;
        Symbol call_letter;
        std::size_t position;
    };
    std::vector<Frame> stack;
    if (stats) stats->max_stack_depth = 0;

    for (std::size_t p = 0; p < w.size(); ++p) {
        const TaggedLetter& l = w[p];
        if (!alphabet.contains(l.base))
            throw UnknownLetter("letter not in automaton alphabet: " + l.base);
        switch (l.tag) {
            case Tag::Internal:
                current = mul(current, m_int.at(l.base));
                break;
            case Tag::Call:
                stack.push_back({std::move(current), l.base, p + 1});
                current = Matrix::identity(n);
                if (stats) stats->max_stack_depth = std::max(stats->max_stack_depth, stack.size());
                break;
            case Tag::Return: {
                if (stack.empty())
                    throw NotWellMatched("unmatched return at position " + std::to_string(p + 1),
                                         p + 1);
                Frame frame = std::move(stack.back());
                stack.pop_back();
                Matrix closed(n, n);
                for (std::size_t g = 1; g <= gamma_size; ++g) {
                    closed = add(closed, mul(mul(m_call.at({frame.call_letter, g}), current),
                                             m_ret.at({l.base, g})));
                }
                current = mul(frame.saved, closed);
                break;
            }
        }
    }
    if (!stack.empty())
        throw NotWellMatched(
            "unmatched call at position " + std::to_string(stack.front().position),
            stack.front().position);
    return current;
}

double Wvpa::behavior(const TaggedWord& w) const { return dot(alpha, mul(word_matrix(w), eta)); }

namespace {

// Platform-independent uniform doubles: the top 53 bits of the standard
// mt19937_64 stream mapped into [-1, 1).
class WeightStream {
public:
    explicit WeightStream(std::uint64_t seed) : eng_(seed) {}
    double next() {
        const double u = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
        return 2.0 * u - 1.0;
    }
    Vector vec(std::size_t d) {
        Vector v(d);
        for (double& x : v) x = next();
        return v;
    }
    Matrix mat(std::size_t r, std::size_t c) {
        Matrix m(r, c);
        for (double& x : m.a) x = next();
        return m;
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace

Wvpa random_wvpa(std::size_t n, const Alphabet& alphabet, std::size_t gamma_size,
                 std::uint64_t seed) {
    if (n < 1 || gamma_size < 1) throw InputError("random_wvpa: n and gamma must be >= 1");
    WeightStream rng(seed);
    Wvpa a;
    a.n = n;
    a.alphabet = alphabet;
    a.gamma_size = gamma_size;
    a.alpha = rng.vec(n);
    a.eta = rng.vec(n);
    for (const auto& s : alphabet.symbols()) a.m_int[s] = rng.mat(n, n);
    for (const auto& s : alphabet.symbols())
        for (std::size_t g = 1; g <= gamma_size; ++g) a.m_call[{s, g}] = rng.mat(n, n);
    for (const auto& s : alphabet.symbols())
        for (std::size_t g = 1; g <= gamma_size; ++g) a.m_ret[{s, g}] = rng.mat(n, n);
    a.validate();
    return a;
}

namespace {

nlohmann::json matrix_to_json(const Matrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols; ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.empty()) throw InputError("matrix must be a non-empty array of rows");
    Matrix m(j.size(), j[0].size());
    for (std::size_t i = 0; i < m.rows; ++i) {
        if (!j[i].is_array() || j[i].size() != m.cols)
            throw InputError("matrix rows must all have the same length");
        for (std::size_t k = 0; k < m.cols; ++k) m(i, k) = j[i][k].get<double>();
    }
    return m;
}

std::pair<Symbol, std::size_t> split_stacked_key(const std::string& key) {
    const auto slash = key.rfind('/');
    if (slash == std::string::npos || slash + 1 >= key.size())
        throw InputError("call/return key must look like \"letter/stack\": " + key);
    const Symbol base = key.substr(0, slash);
    std::size_t g = 0;
    try {
        g = static_cast<std::size_t>(std::stoul(key.substr(slash + 1)));
    } catch (const std::exception&) {
        throw InputError("bad stack symbol index in key: " + key);
    }
    return {base, g};
}

}  // namespace

std::string wvpa_to_json(const Wvpa& a) {
    nlohmann::json j;
    j["n"] = a.n;
    j["alphabet"] = a.alphabet.symbols();
    j["gamma"] = a.gamma_size;
    j["alpha"] = a.alpha;
    j["eta"] = a.eta;
    nlohmann::json mi = nlohmann::json::object();
    for (const auto& [s, m] : a.m_int) mi[s] = matrix_to_json(m);
    j["m_int"] = std::move(mi);
    nlohmann::json mc = nlohmann::json::object(), mr = nlohmann::json::object();
    for (const auto& [key, m] : a.m_call) mc[key.first + "/" + std::to_string(key.second)] =
        matrix_to_json(m);
    for (const auto& [key, m] : a.m_ret) mr[key.first + "/" + std::to_string(key.second)] =
        matrix_to_json(m);
    j["m_call"] = std::move(mc);
    j["m_ret"] = std::move(mr);
    return j.dump(2);
}

Wvpa wvpa_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("bad automaton JSON: ") + e.what());
    }
    Wvpa a;
    try {
        a.n = j.at("n").get<std::size_t>();
        a.alphabet = Alphabet(j.at("alphabet").get<std::vector<Symbol>>());
        a.gamma_size = j.at("gamma").get<std::size_t>();
        a.alpha = j.at("alpha").get<Vector>();
        a.eta = j.at("eta").get<Vector>();
        for (const auto& [key, val] : j.at("m_int").items()) a.m_int[key] = matrix_from_json(val);
        for (const auto& [key, val] : j.at("m_call").items())
            a.m_call[split_stacked_key(key)] = matrix_from_json(val);
        for (const auto& [key, val] : j.at("m_ret").items())
            a.m_ret[split_stacked_key(key)] = matrix_from_json(val);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("bad automaton JSON: ") + e.what());
    }
    a.validate();
    return a;
}

void save_wvpa(const Wvpa& a, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write file: " + path);
    out << wvpa_to_json(a) << "\n";
}

Wvpa load_wvpa(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return wvpa_from_json(buf.str());
}

}  // namespace wvpa
