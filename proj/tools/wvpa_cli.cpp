// Command-line front end: evaluate automata, analyze Hankel truncations,
// synthesize automata from builtin functions or other automata, and run
// batch round-trip experiments. Exit codes: 0 success, 2 input error,
// 3 synthesis failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wvpa/automaton.hpp"
#include "wvpa/hankel.hpp"
#include "wvpa/nested_words.hpp"
#include "wvpa/oracle.hpp"
#include "wvpa/synthesis.hpp"

namespace {

std::string fmt12(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

struct OracleChoice {
    std::string function;
    std::string automaton_path;
    std::string alphabet_text = "a";

    void add_flags(CLI::App* cmd) {
        cmd->add_option("--function", function,
                        "builtin function: paren_count, dyck_one, constant0, constant:<v>");
        cmd->add_option("--automaton", automaton_path, "automaton JSON file to use as oracle");
        cmd->add_option("--alphabet", alphabet_text, "comma-separated base alphabet")
            ->capture_default_str();
    }

    std::pair<wvpa::OraclePtr, wvpa::Alphabet> resolve() const {
        if (function.empty() == automaton_path.empty())
            throw wvpa::InputError("exactly one of --function / --automaton is required");
        if (!function.empty())
            return {wvpa::make_builtin_oracle(function), wvpa::Alphabet::parse(alphabet_text)};
        wvpa::Wvpa a = wvpa::load_wvpa(automaton_path);
        wvpa::Alphabet alphabet = a.alphabet;
        return {wvpa::make_automaton_oracle(std::move(a)), alphabet};
    }
};

int run_eval(const std::string& path, const std::string& word_text) {
    const wvpa::Wvpa a = wvpa::load_wvpa(path);
    const wvpa::TaggedWord w = wvpa::parse_tagged_word(word_text);
    std::cout << fmt12(a.behavior(w)) << "\n";
    return 0;
}

int run_rank(const OracleChoice& choice, std::size_t start_len, std::size_t max_len, double tol,
             const std::string& dump_path) {
    auto [oracle, alphabet] = choice.resolve();
    const auto sb = wvpa::stabilized_block(*oracle, alphabet, start_len, max_len, tol);
    std::size_t n = 0;
    while (n * n < sb.rank) ++n;
    std::cout << "rank=" << sb.rank << " n=" << n
              << " stabilized=" << (sb.stabilized ? "true" : "false")
              << " rows=" << sb.block.row_labels.size() << " cols=" << sb.block.col_labels.size()
              << "\n";
    if (!dump_path.empty()) {
        std::ofstream out(dump_path);
        if (!out) throw wvpa::InputError("cannot write file: " + dump_path);
        wvpa::write_block_csv(sb.block, out);
    }
    return 0;
}

int run_synth(const OracleChoice& choice, const wvpa::SynthesisOptions& opts, double verify_tol,
              const std::string& out_path) {
    auto [oracle, alphabet] = choice.resolve();
    const wvpa::SynthesisReport report = wvpa::synthesize(*oracle, alphabet, opts);
    wvpa::print_report(report, std::cout);
    if (!out_path.empty()) wvpa::save_wvpa(report.automaton, out_path);
    return report.roundtrip.max_abs_error < verify_tol ? 0 : 3;
}

int run_roundtrip(std::size_t n, std::size_t seeds, std::size_t gamma,
                  const std::string& alphabet_text, const wvpa::SynthesisOptions& opts,
                  double verify_tol) {
    if (n < 1 || seeds < 1) throw wvpa::InputError("--n and --seeds must be >= 1");
    const wvpa::Alphabet alphabet = wvpa::Alphabet::parse(alphabet_text);
    bool all_pass = true;
    std::size_t passed = 0;
    for (std::size_t seed = 0; seed < seeds; ++seed) {
        const wvpa::Wvpa target = wvpa::random_wvpa(n, alphabet, gamma, seed);
        const auto oracle = wvpa::make_automaton_oracle(target);
        const auto sb =
            wvpa::stabilized_block(*oracle, alphabet, opts.start_len, opts.max_len, opts.rank_tol);
        const bool bound_ok = sb.stabilized && sb.rank <= n * n;
        std::string status;
        std::string detail;
        if (!bound_ok) {
            status = "FAIL(rank-bound)";
        } else {
            try {
                const auto report = wvpa::synthesize(*oracle, alphabet, opts);
                const bool eq_ok = report.roundtrip.max_rel_error < verify_tol;
                detail = " states=" + std::to_string(report.states) +
                         " err=" + fmt12(report.roundtrip.max_rel_error);
                status = eq_ok ? "pass" : "FAIL(equivalence)";
            } catch (const wvpa::SynthesisError& e) {
                status = "FAIL(synthesis)";
                detail = std::string(" diagnostic=") + e.what();
            }
        }
        if (status == "pass") ++passed;
        all_pass = all_pass && status == "pass";
        std::cout << "seed=" << seed << " rank=" << sb.rank << " bound=" << (bound_ok ? "ok" : "VIOLATED")
                  << detail << " status=" << status << "\n";
    }
    std::cout << passed << "/" << seeds << " pass\n";
    return all_pass ? 0 : 1;
}

int run_dyck_demo(std::size_t max_len, double tol) {
    if (max_len > 10) throw wvpa::InputError("--max-len is capped at 10 for this demo");
    const wvpa::Alphabet alphabet({"a"});
    const auto oracle = wvpa::make_dyck_one();
    std::vector<std::size_t> lengths;
    if (max_len < 2)
        lengths.push_back(max_len);
    else
        for (std::size_t l = 2; l <= max_len; l += 2) lengths.push_back(l);
    const auto growth = wvpa::word_hankel_rank_growth(*oracle, alphabet, lengths, tol);
    for (const auto& [len, word_rank] : growth) {
        const auto labels = wvpa::enumerate_well_matched(alphabet, len);
        const auto block = wvpa::build_block(*oracle, labels, labels);
        std::cout << "L=" << len << " word_rank=" << word_rank
                  << " nested_rank=" << wvpa::block_rank(block, tol) << "\n";
    }
    return 0;
}

int run_enum(const std::string& alphabet_text, std::size_t max_len) {
    if (max_len > 12) throw wvpa::InputError("--max-len is capped at 12");
    const wvpa::Alphabet alphabet = wvpa::Alphabet::parse(alphabet_text);
    std::vector<std::size_t> counts(max_len + 1, 0);
    wvpa::enumerate_well_matched(alphabet, max_len, [&](const wvpa::TaggedWord& w) {
        ++counts[w.size()];
        std::cout << wvpa::format_tagged_word(w) << "\n";
    });
    std::cout << "counts:";
    for (std::size_t l = 0; l <= max_len; ++l) std::cout << (l ? "," : " ") << counts[l];
    std::cout << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weighted visibly pushdown automata toolkit"};
    app.require_subcommand(1);

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "evaluate an automaton on one word");
    std::string eval_path, eval_word;
    eval_cmd->add_option("--automaton", eval_path, "automaton JSON file")->required();
    eval_cmd->add_option("--word", eval_word, "tagged word, e.g. \"<a a>\" or \"eps\"")
        ->required();

    // rank
    auto* rank_cmd = app.add_subcommand("rank", "stabilized Hankel-block rank of a function");
    OracleChoice rank_choice;
    rank_choice.add_flags(rank_cmd);
    std::size_t rank_start = 2, rank_max = 6;
    double rank_tol = 1e-9;
    std::string rank_dump;
    rank_cmd->add_option("--start-len", rank_start, "first truncation length")
        ->capture_default_str();
    rank_cmd->add_option("--max-len", rank_max, "truncation length limit")->capture_default_str();
    rank_cmd->add_option("--tol", rank_tol, "relative rank tolerance")->capture_default_str();
    rank_cmd->add_option("--dump", rank_dump, "write the final block as CSV to this file");

    // synth
    auto* synth_cmd = app.add_subcommand("synth", "synthesize an automaton from a function");
    OracleChoice synth_choice;
    synth_choice.add_flags(synth_cmd);
    wvpa::SynthesisOptions synth_opts;
    double synth_verify_tol = 1e-6;
    std::string synth_out;
    synth_cmd->add_option("--start-len", synth_opts.start_len, "first truncation length")
        ->capture_default_str();
    synth_cmd->add_option("--max-len", synth_opts.max_len, "truncation length limit")
        ->capture_default_str();
    synth_cmd->add_option("--tol", synth_opts.rank_tol, "relative rank tolerance")
        ->capture_default_str();
    synth_cmd->add_option("--solve-tol", synth_opts.solve_tol, "coordinate solve tolerance")
        ->capture_default_str();
    synth_cmd->add_option("--verify-len", synth_opts.verify_len, "round-trip word length")
        ->capture_default_str();
    synth_cmd->add_option("--verify-tol", synth_verify_tol, "round-trip error gate")
        ->capture_default_str();
    synth_cmd->add_option("--seed", synth_opts.seed, "seed for internal generic elements")
        ->capture_default_str();
    synth_cmd->add_option("--out", synth_out, "write the synthesized automaton JSON here");

    // roundtrip
    auto* rt_cmd = app.add_subcommand("roundtrip",
                                      "batch check: random automata, rank bound, re-synthesis");
    std::size_t rt_n = 2, rt_seeds = 10, rt_gamma = 1;
    std::string rt_alphabet = "a";
    wvpa::SynthesisOptions rt_opts;
    double rt_verify_tol = 1e-6;
    rt_cmd->add_option("--n", rt_n, "state count of the random targets")->capture_default_str();
    rt_cmd->add_option("--seeds", rt_seeds, "number of seeds (0..K-1)")->capture_default_str();
    rt_cmd->add_option("--gamma", rt_gamma, "stack alphabet size of the targets")
        ->capture_default_str();
    rt_cmd->add_option("--alphabet", rt_alphabet, "comma-separated base alphabet")
        ->capture_default_str();
    rt_cmd->add_option("--max-len", rt_opts.max_len, "truncation length limit")
        ->capture_default_str();
    rt_cmd->add_option("--verify-len", rt_opts.verify_len, "round-trip word length")
        ->capture_default_str();
    rt_cmd->add_option("--verify-tol", rt_verify_tol, "round-trip relative error gate")
        ->capture_default_str();

    // dyck-demo
    auto* dyck_cmd = app.add_subcommand(
        "dyck-demo", "word-Hankel rank growth vs nested-Hankel rank for dyck_one");
    std::size_t dyck_max = 6;
    double dyck_tol = 1e-9;
    dyck_cmd->add_option("--max-len", dyck_max, "largest truncation length (<= 10)")
        ->capture_default_str();
    dyck_cmd->add_option("--tol", dyck_tol, "relative rank tolerance")->capture_default_str();

    // enum
    auto* enum_cmd = app.add_subcommand("enum", "well-matched words in shortlex order");
    std::string enum_alphabet = "a";
    std::size_t enum_max = 3;
    enum_cmd->add_option("--alphabet", enum_alphabet, "comma-separated base alphabet")
        ->capture_default_str();
    enum_cmd->add_option("--max-len", enum_max, "length limit (<= 12)")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (eval_cmd->parsed()) return run_eval(eval_path, eval_word);
        if (rank_cmd->parsed())
            return run_rank(rank_choice, rank_start, rank_max, rank_tol, rank_dump);
        if (synth_cmd->parsed())
            return run_synth(synth_choice, synth_opts, synth_verify_tol, synth_out);
        if (rt_cmd->parsed())
            return run_roundtrip(rt_n, rt_seeds, rt_gamma, rt_alphabet, rt_opts, rt_verify_tol);
        if (dyck_cmd->parsed()) return run_dyck_demo(dyck_max, dyck_tol);
        if (enum_cmd->parsed()) return run_enum(enum_alphabet, enum_max);
    } catch (const wvpa::SynthesisError& e) {
        std::cerr << "synthesis failure: " << e.what() << "\n";
        return 3;
    } catch (const wvpa::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
