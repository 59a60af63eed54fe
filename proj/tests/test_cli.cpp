#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "wvpa/automaton.hpp"
#include "wvpa/linalg.hpp"

#ifndef WVPA_CLI_PATH
#error "WVPA_CLI_PATH must point at the CLI binary"
#endif

using namespace wvpa;

namespace {

struct RunResult {
    int exit_code;
    std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(WVPA_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    std::array<char, 512> buf;
    while (std::fgets(buf.data(), buf.size(), pipe)) output += buf.data();
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), output};
}

// The two-state pair counter, written once per process into a temp file.
std::string pair_counter_path() {
    static std::string path = [] {
        Wvpa a;
        a.n = 2;
        a.alphabet = Alphabet({"a"});
        a.gamma_size = 1;
        a.alpha = {1, 0};
        a.eta = {0, 1};
        a.m_int["a"] = Matrix::identity(2);
        Matrix shift = Matrix::identity(2);
        shift(0, 1) = 1.0;
        a.m_call[{"a", 1}] = shift;
        a.m_ret[{"a", 1}] = Matrix::identity(2);
        std::string p = "cli_paren_fixture.json";
        save_wvpa(a, p);
        return p;
    }();
    return path;
}

}  // namespace

TEST_CASE("eval prints the behavior with 12 significant digits") {
    const auto one = run_cli("eval --automaton " + pair_counter_path() + " --word \"<a a>\"");
    CHECK(one.exit_code == 0);
    CHECK(one.output == "1\n");

    const auto zero = run_cli("eval --automaton " + pair_counter_path() + " --word eps");
    CHECK(zero.exit_code == 0);
    CHECK(zero.output == "0\n");

    const auto two = run_cli("eval --automaton " + pair_counter_path() +
                             " --word \"<a <a a> a>\"");
    CHECK(two.output == "2\n");
}

TEST_CASE("eval rejects bad input with exit code 2") {
    const auto unmatched = run_cli("eval --automaton " + pair_counter_path() + " --word \"<a\"");
    CHECK(unmatched.exit_code == 2);
    CHECK(unmatched.output.find("unmatched") != std::string::npos);

    const auto missing = run_cli("eval --automaton no_such_file.json --word eps");
    CHECK(missing.exit_code == 2);

    const auto unknown = run_cli("eval --automaton " + pair_counter_path() + " --word b");
    CHECK(unknown.exit_code == 2);
}

TEST_CASE("rank reports the stabilized rank line") {
    const auto paren = run_cli("rank --function paren_count --max-len 6");
    CHECK(paren.exit_code == 0);
    CHECK(paren.output.find("rank=2 n=2 stabilized=true") == 0);

    const auto dyck = run_cli("rank --function dyck_one --max-len 6");
    CHECK(dyck.output.find("rank=1 n=1 stabilized=true") == 0);

    const auto zero = run_cli("rank --function constant0");
    CHECK(zero.output.find("rank=0") == 0);

    const auto scaled = run_cli("rank --function constant:2.5");
    CHECK(scaled.output.find("rank=1 n=1") == 0);

    const auto unknown = run_cli("rank --function no_such_function");
    CHECK(unknown.exit_code == 2);
}

TEST_CASE("rank --dump writes the block as CSV") {
    const auto r = run_cli("rank --function paren_count --max-len 6 --dump cli_block.csv");
    CHECK(r.exit_code == 0);
    std::ifstream in("cli_block.csv");
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header.find(",eps,a,") == 0);
    std::remove("cli_block.csv");
}

TEST_CASE("synth writes an equivalent automaton and reports") {
    const auto r = run_cli("synth --function paren_count --out cli_synth.json");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("rank=2 states=2 gamma=2") == 0);

    const Wvpa reloaded = load_wvpa("cli_synth.json");
    CHECK(reloaded.n == 2);
    CHECK(reloaded.behavior(parse_tagged_word("<a <a a> a>")) == doctest::Approx(2.0));
    std::remove("cli_synth.json");
}

TEST_CASE("synth on the zero function exits 3") {
    const auto r = run_cli("synth --function constant0");
    CHECK(r.exit_code == 3);
    CHECK(r.output.find("synthesis failure") != std::string::npos);
}

TEST_CASE("synth accepts an automaton as the oracle") {
    const auto r = run_cli("synth --automaton " + pair_counter_path());
    CHECK(r.exit_code == 0);
}

TEST_CASE("rank accepts an automaton oracle") {
    const auto r = run_cli("rank --automaton " + pair_counter_path() + " --max-len 6");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("rank=2 n=2 stabilized=true") == 0);
}

TEST_CASE("roundtrip batch passes on small cases") {
    const auto r = run_cli("roundtrip --n 1 --seeds 3");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("3/3 pass") != std::string::npos);

    const auto two = run_cli("roundtrip --n 2 --seeds 3");
    CHECK(two.exit_code == 0);
    CHECK(two.output.find("3/3 pass") != std::string::npos);
}

TEST_CASE("dyck-demo prints the contrast table") {
    const auto r = run_cli("dyck-demo --max-len 4");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("L=2 word_rank=3 nested_rank=1\n") == 0);
    CHECK(r.output.find("L=4 word_rank=5 nested_rank=1\n") != std::string::npos);

    const auto tiny = run_cli("dyck-demo --max-len 0");
    CHECK(tiny.output == "L=0 word_rank=1 nested_rank=1\n");

    const auto guarded = run_cli("dyck-demo --max-len 11");
    CHECK(guarded.exit_code == 2);
}

TEST_CASE("enum lists words and counts") {
    const auto r = run_cli("enum --alphabet a --max-len 3");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("eps\na\na a\n<a a>\n") == 0);
    CHECK(r.output.find("counts: 1,1,2,4\n") != std::string::npos);

    const auto two = run_cli("enum --alphabet a,b --max-len 2");
    CHECK(two.output.find("counts: 1,2,8\n") != std::string::npos);

    const auto only_eps = run_cli("enum --alphabet a --max-len 0");
    CHECK(only_eps.output == "eps\ncounts: 1\n");

    const auto guarded = run_cli("enum --alphabet a --max-len 13");
    CHECK(guarded.exit_code == 2);
}

TEST_CASE("identical invocations produce identical bytes") {
    const auto a = run_cli("synth --function paren_count");
    const auto b = run_cli("synth --function paren_count");
    CHECK(a.output == b.output);
    const auto c = run_cli("rank --function dyck_one --max-len 5");
    const auto d = run_cli("rank --function dyck_one --max-len 5");
    CHECK(c.output == d.output);
}
