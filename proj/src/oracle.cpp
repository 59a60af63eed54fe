#include "wvpa/oracle.hpp"

#include <cstdio>
#include <utility>

namespace wvpa {

namespace {

class ParenCount final : public FunctionOracle {
public:
    double value(const TaggedWord& w) const override {
        std::size_t pairs = 0;
        for (const auto& l : w)
            if (l.tag == Tag::Call) ++pairs;
        return static_cast<double>(pairs);
    }
    std::string id() const override { return "paren_count"; }
};

class DyckOne final : public FunctionOracle {
public:
    double value(const TaggedWord&) const override { return 1.0; }
    std::string id() const override { return "dyck_one"; }
};

class Constant final : public FunctionOracle {
public:
    explicit Constant(double c) : c_(c) {}
    double value(const TaggedWord&) const override { return c_; }
    std::string id() const override {
        char buf[48];
        std::snprintf(buf, sizeof buf, "constant(%.12g)", c_);
        return buf;
    }

private:
    double c_;
};

class AutomatonBehavior final : public FunctionOracle {
public:
    explicit AutomatonBehavior(Wvpa a) : automaton_(std::move(a)) {}
    double value(const TaggedWord& w) const override { return automaton_.behavior(w); }
    std::string id() const override {
        return "automaton(n=" + std::to_string(automaton_.n) + ")";
    }

private:
    Wvpa automaton_;
};

}  // namespace

OraclePtr make_paren_count() { return std::make_shared<ParenCount>(); }
OraclePtr make_dyck_one() { return std::make_shared<DyckOne>(); }
OraclePtr make_constant(double c) { return std::make_shared<Constant>(c); }
OraclePtr make_automaton_oracle(Wvpa automaton) {
    automaton.validate();
    return std::make_shared<AutomatonBehavior>(std::move(automaton));
}

OraclePtr make_builtin_oracle(const std::string& name) {
    if (name == "paren_count") return make_paren_count();
    if (name == "dyck_one") return make_dyck_one();
    if (name == "constant0") return make_constant(0.0);
    const std::string prefix = "constant:";
    if (name.rfind(prefix, 0) == 0) {
        try {
            return make_constant(std::stod(name.substr(prefix.size())));
        } catch (const std::exception&) {
            throw InputError("bad constant value in function name: " + name);
        }
    }
    throw InputError("unknown function: " + name +
                     " (known: paren_count, dyck_one, constant0, constant:<value>)");
}

}  // namespace wvpa
