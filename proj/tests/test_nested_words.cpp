#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>

#include "wvpa/nested_words.hpp"

using namespace wvpa;

namespace {

// Independent well-matchedness check used to cross-validate the library
// scan: explicit stack of open calls.
bool oracle_well_matched(const TaggedWord& w) {
    int depth = 0;
    for (const auto& l : w) {
        if (l.tag == Tag::Call) ++depth;
        if (l.tag == Tag::Return) {
            if (depth == 0) return false;
            --depth;
        }
    }
    return depth == 0;
}

TaggedWord tw(const std::string& text) { return parse_tagged_word(text); }

}  // namespace

TEST_CASE("text syntax round trip") {
    CHECK(format_tagged_word(tw("eps")) == "eps");
    CHECK(format_tagged_word(tw("b <a <a b> b>")) == "b <a <a b> b>");
    CHECK(tw("") == TaggedWord{});
    CHECK(tw("  <a   a>  ") == TaggedWord{call("a"), ret("a")});
    CHECK_THROWS_AS(tw("<"), InputError);
    CHECK_THROWS_AS(tw("a<b"), InputError);
}

TEST_CASE("validate reports each violated condition") {
    NestedWord good{{"b", "a", "a", "b", "b"}, {{2, 5}, {3, 4}}};
    CHECK(validate(good).empty());

    NestedWord reversed{{"a", "a"}, {{2, 1}}};
    const auto v1 = validate(reversed);
    REQUIRE(v1.size() == 1);
    CHECK(v1[0].find("condition 1") != std::string::npos);

    NestedWord crossing{{"a", "a", "a", "a"}, {{1, 3}, {2, 4}}};
    const auto v2 = validate(crossing);
    REQUIRE(v2.size() == 1);
    CHECK(v2[0].find("condition 3") != std::string::npos);

    NestedWord reused{{"a", "a", "a"}, {{1, 2}, {1, 3}}};
    const auto v3 = validate(reused);
    REQUIRE(v3.size() == 1);
    CHECK(v3[0].find("condition 2") != std::string::npos);
}

TEST_CASE("encode tags calls and returns") {
    NestedWord nw{{"b", "a", "a", "b", "b"}, {{2, 5}, {3, 4}}};
    CHECK(encode(nw) == tw("b <a <a b> b>"));
    CHECK(encode(NestedWord{}) == TaggedWord{});
    CHECK(encode(NestedWord{{"a", "b", "a"}, {}}) == tw("a b a"));
    CHECK_THROWS_AS(encode(NestedWord{{"a", "a"}, {{2, 1}}}), ValidationError);
}

TEST_CASE("decode recovers the matching relation") {
    const NestedWord nw = decode(tw("b <a <a b> b>"));
    CHECK(nw.word == std::vector<Symbol>{"b", "a", "a", "b", "b"});
    CHECK(nw.nu == std::vector<std::pair<std::size_t, std::size_t>>{{2, 5}, {3, 4}});
    CHECK(decode(TaggedWord{}) == NestedWord{});

    try {
        decode(tw("a>"));
        FAIL("expected NotWellMatched");
    } catch (const NotWellMatched& e) {
        CHECK(e.position() == 1);
    }
    try {
        decode(tw("a <a"));
        FAIL("expected NotWellMatched");
    } catch (const NotWellMatched& e) {
        CHECK(e.position() == 2);
    }
}

TEST_CASE("encode and decode are mutually inverse up to length 8") {
    const Alphabet sigma({"a", "b"});
    for (std::size_t len = 0; len <= 8; ++len) {
        // sample: single-letter alphabet exhaustively, two letters spot-wise
        for (const auto& w : enumerate_well_matched(Alphabet({"a"}), len)) {
            if (w.size() != len) continue;
            CHECK(encode(decode(w)) == w);
        }
    }
    for (const auto& w : enumerate_well_matched(sigma, 4)) {
        CHECK(encode(decode(w)) == w);
        const NestedWord nw = decode(w);
        CHECK(decode(encode(nw)) == nw);
    }
}

TEST_CASE("is_well_matched matches the scan definition") {
    CHECK(is_well_matched(tw("<a a a>")));
    CHECK_FALSE(is_well_matched(tw("<a")));
    CHECK_FALSE(is_well_matched(tw("a> <a")));
    for (const auto& w : enumerate_all_tagged(Alphabet({"a", "b"}), 4))
        CHECK(is_well_matched(w) == oracle_well_matched(w));
}

TEST_CASE("concatenation and wrapping preserve well-matchedness") {
    const auto words = enumerate_well_matched(Alphabet({"a", "b"}), 4);
    for (std::size_t i = 0; i < words.size(); i += 7)
        for (std::size_t j = 0; j < words.size(); j += 11)
            CHECK(is_well_matched(concat(words[i], words[j])));
    for (std::size_t i = 0; i < words.size(); i += 5)
        CHECK(is_well_matched(wrap("a", words[i], "b")));
}

TEST_CASE("enumeration is exactly the brute-force filter in shortlex order") {
    const Alphabet sigma({"a"});
    const auto got = enumerate_well_matched(sigma, 2);
    const std::vector<TaggedWord> want = {tw("eps"), tw("a"), tw("a a"), tw("<a a>")};
    CHECK(got == want);

    CHECK(enumerate_well_matched(sigma, 0) == std::vector<TaggedWord>{TaggedWord{}});

    for (const Alphabet& alphabet : {Alphabet({"a"}), Alphabet({"a", "b"})}) {
        std::vector<TaggedWord> filtered;
        for (const auto& w : enumerate_all_tagged(alphabet, 4))
            if (is_well_matched(w)) filtered.push_back(w);
        CHECK(enumerate_well_matched(alphabet, 4) == filtered);
    }
}

TEST_CASE("shortlex order is strict") {
    const auto words = enumerate_well_matched(Alphabet({"a", "b"}), 4);
    auto shortlex_less = [](const TaggedWord& x, const TaggedWord& y) {
        if (x.size() != y.size()) return x.size() < y.size();
        return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
    };
    for (std::size_t i = 1; i < words.size(); ++i) CHECK(shortlex_less(words[i - 1], words[i]));
}

TEST_CASE("per-length counts follow the recurrence") {
    const auto motzkin = well_matched_counts(1, 6);
    CHECK(motzkin ==
          std::vector<unsigned long long>{1, 1, 2, 4, 9, 21, 51});

    for (std::size_t k : {std::size_t{1}, std::size_t{2}}) {
        std::vector<Symbol> syms;
        for (std::size_t i = 0; i < k; ++i) syms.push_back(std::string(1, char('a' + i)));
        const Alphabet alphabet(syms);
        const std::size_t max_len = k == 1 ? 6 : 4;
        std::map<std::size_t, unsigned long long> counts;
        enumerate_well_matched(alphabet, max_len,
                               [&](const TaggedWord& w) { ++counts[w.size()]; });
        const auto predicted = well_matched_counts(k, max_len);
        for (std::size_t l = 0; l <= max_len; ++l) CHECK(counts[l] == predicted[l]);
    }
    CHECK(well_matched_counts(2, 2) == std::vector<unsigned long long>{1, 2, 8});
}

TEST_CASE("nested word JSON round trip revalidates") {
    const NestedWord nw = decode(tw("b <a <a b> b>"));
    CHECK(nested_word_from_json(nested_word_to_json(nw)) == nw);
    CHECK_THROWS_AS(nested_word_from_json("{\"word\": [\"a\"], \"nu\": [[1, 1]]}"),
                    ValidationError);
    CHECK_THROWS_AS(nested_word_from_json("not json"), InputError);
}
