#ifndef WVPA_ORACLE_HPP_
#define WVPA_ORACLE_HPP_

#include <memory>
#include <string>

#include "wvpa/automaton.hpp"
#include "wvpa/nested_words.hpp"

namespace wvpa {

/// A total, deterministic map from well-matched tagged words to scalars.
/// Callers guarantee well-matched arguments; implementations must be pure
/// and safe to query from several threads at once.
class FunctionOracle {
public:
    virtual ~FunctionOracle() = default;
    virtual double value(const TaggedWord& w) const = 0;
    virtual std::string id() const = 0;
};

using OraclePtr = std::shared_ptr<FunctionOracle>;

/// Number of matched call/return pairs in the word.
OraclePtr make_paren_count();

/// Constantly 1 on well-matched words: the characteristic function of the
/// balanced-bracket language restricted to its own domain.
OraclePtr make_dyck_one();

OraclePtr make_constant(double c);

/// Wraps an automaton's behavior.
OraclePtr make_automaton_oracle(Wvpa automaton);

/// Builtin registry used by the CLI: "paren_count", "dyck_one", "constant0",
/// or "constant:<value>". Throws InputError on unknown names.
OraclePtr make_builtin_oracle(const std::string& name);

}  // namespace wvpa

#endif  // WVPA_ORACLE_HPP_
