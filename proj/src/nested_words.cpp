#include "wvpa/nested_words.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "json.hpp"

namespace wvpa {

Alphabet::Alphabet(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) throw InputError("alphabet must be non-empty");
    std::set<Symbol> seen;
    for (const auto& s : symbols_) {
        check_symbol(s);
        if (!seen.insert(s).second) throw InputError("duplicate alphabet symbol: " + s);
    }
}

Alphabet Alphabet::parse(const std::string& text) {
    std::vector<Symbol> out;
    std::string cur;
    for (char ch : text) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return Alphabet(std::move(out));
}

bool Alphabet::contains(const Symbol& s) const {
    return std::find(symbols_.begin(), symbols_.end(), s) != symbols_.end();
}

std::size_t Alphabet::index_of(const Symbol& s) const {
    auto it = std::find(symbols_.begin(), symbols_.end(), s);
    if (it == symbols_.end()) throw UnknownLetter("letter not in alphabet: " + s);
    return static_cast<std::size_t>(it - symbols_.begin());
}

void check_symbol(const Symbol& s) {
    if (s.empty()) throw InputError("empty alphabet symbol");
    for (char ch : s) {
        if (ch == '<' || ch == '>' || std::isspace(static_cast<unsigned char>(ch)))
            throw InputError("symbol may not contain '<', '>' or whitespace: \"" + s + "\"");
    }
}

TaggedWord concat(const TaggedWord& u, const TaggedWord& v) {
    TaggedWord out = u;
    out.insert(out.end(), v.begin(), v.end());
    return out;
}

TaggedWord wrap(const Symbol& c, const TaggedWord& u, const Symbol& r) {
    TaggedWord out;
    out.reserve(u.size() + 2);
    out.push_back(call(c));
    out.insert(out.end(), u.begin(), u.end());
    out.push_back(ret(r));
    return out;
}

TaggedWord parse_tagged_word(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::string> tokens;
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    if (tokens.empty() || (tokens.size() == 1 && tokens[0] == "eps")) return {};

    TaggedWord out;
    for (const auto& t : tokens) {
        if (t.size() > 1 && t.front() == '<') {
            Symbol base = t.substr(1);
            check_symbol(base);
            out.push_back(call(base));
        } else if (t.size() > 1 && t.back() == '>') {
            Symbol base = t.substr(0, t.size() - 1);
            check_symbol(base);
            out.push_back(ret(base));
        } else {
            check_symbol(t);
            out.push_back(internal(t));
        }
    }
    return out;
}

std::string format_letter(const TaggedLetter& l) {
    switch (l.tag) {
        case Tag::Call:
            return "<" + l.base;
        case Tag::Return:
            return l.base + ">";
        default:
            return l.base;
    }
}

std::string format_tagged_word(const TaggedWord& w) {
    if (w.empty()) return "eps";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ' ';
        out += format_letter(w[i]);
    }
    return out;
}

std::vector<std::string> validate(const NestedWord& nw) {
    std::vector<std::string> violations;
    const std::size_t len = nw.word.size();

    bool order_ok = true, bounds_ok = true;
    for (const auto& [i, j] : nw.nu) {
        if (i < 1 || j < 1 || i > len || j > len) bounds_ok = false;
        if (i >= j) order_ok = false;
    }
    if (!bounds_ok) violations.push_back("edge endpoint outside [1, length]");
    if (!order_ok) violations.push_back("condition 1: every edge (i, j) must satisfy i < j");

    std::set<std::size_t> used;
    bool unique_ok = true;
    for (const auto& [i, j] : nw.nu) {
        if (!used.insert(i).second) unique_ok = false;
        if (!used.insert(j).second) unique_ok = false;
    }
    if (!unique_ok)
        violations.push_back("condition 2: a position may appear in at most one edge");

    bool crossing = false;
    for (const auto& [i, j] : nw.nu) {
        for (const auto& [i2, j2] : nw.nu) {
            if (i < i2 && i2 <= j && j < j2) crossing = true;
        }
    }
    if (crossing) violations.push_back("condition 3: edges must not cross");

    // Well-matchedness (no dangling edges) is automatic here: nu stores
    // complete (call, return) pairs, so a half edge is not representable.
    return violations;
}

TaggedWord encode(const NestedWord& nw) {
    auto violations = validate(nw);
    if (!violations.empty())
        throw ValidationError("invalid nested word: " + violations.front());

    const std::size_t len = nw.word.size();
    std::vector<Tag> tags(len, Tag::Internal);
    for (const auto& [i, j] : nw.nu) {
        tags[i - 1] = Tag::Call;
        tags[j - 1] = Tag::Return;
    }
    TaggedWord out;
    out.reserve(len);
    for (std::size_t p = 0; p < len; ++p) out.push_back({tags[p], nw.word[p]});
    return out;
}

NestedWord decode(const TaggedWord& w) {
    NestedWord out;
    out.word.reserve(w.size());
    std::vector<std::size_t> stack;  // positions of open calls, 1-based
    for (std::size_t p = 0; p < w.size(); ++p) {
        out.word.push_back(w[p].base);
        switch (w[p].tag) {
            case Tag::Call:
                stack.push_back(p + 1);
                break;
            case Tag::Return:
                if (stack.empty())
                    throw NotWellMatched(
                        "unmatched return at position " + std::to_string(p + 1), p + 1);
                out.nu.emplace_back(stack.back(), p + 1);
                stack.pop_back();
                break;
            case Tag::Internal:
                break;
        }
    }
    if (!stack.empty())
        throw NotWellMatched("unmatched call at position " + std::to_string(stack.front()),
                             stack.front());
    std::sort(out.nu.begin(), out.nu.end());
    return out;
}

bool is_well_matched(const TaggedWord& w) {
    long open = 0;
    for (const auto& l : w) {
        if (l.tag == Tag::Call) ++open;
        if (l.tag == Tag::Return && --open < 0) return false;
    }
    return open == 0;
}

MatchProfile match_profile(const TaggedWord& w) {
    MatchProfile p;
    std::size_t open = 0;
    for (const auto& l : w) {
        if (l.tag == Tag::Call) {
            ++open;
        } else if (l.tag == Tag::Return) {
            if (open > 0)
                --open;
            else
                ++p.unmatched_returns;
        }
    }
    p.unmatched_calls = open;
    return p;
}

namespace {

// Depth-first generation of length-exact words in lexicographic letter
// order. `need_matched` prunes branches that cannot close their calls.
void generate(const std::vector<TaggedLetter>& letters, std::size_t len, bool need_matched,
              TaggedWord& prefix, std::size_t open,
              const std::function<void(const TaggedWord&)>& sink) {
    if (prefix.size() == len) {
        if (!need_matched || open == 0) sink(prefix);
        return;
    }
    const std::size_t rem = len - prefix.size();
    for (const auto& l : letters) {
        if (need_matched) {
            if (l.tag == Tag::Internal && rem - 1 < open) continue;
            if (l.tag == Tag::Call && rem - 1 < open + 1) continue;
            if (l.tag == Tag::Return && open == 0) continue;
        }
        prefix.push_back(l);
        std::size_t next_open = open;
        if (l.tag == Tag::Call) ++next_open;
        if (l.tag == Tag::Return && next_open > 0) --next_open;
        generate(letters, len, need_matched, prefix, next_open, sink);
        prefix.pop_back();
    }
}

std::vector<TaggedLetter> letter_order(const Alphabet& alphabet) {
    std::vector<TaggedLetter> letters;
    for (const auto& s : alphabet.symbols()) letters.push_back(internal(s));
    for (const auto& s : alphabet.symbols()) letters.push_back(call(s));
    for (const auto& s : alphabet.symbols()) letters.push_back(ret(s));
    return letters;
}

}  // namespace

void enumerate_well_matched(const Alphabet& alphabet, std::size_t max_len,
                            const std::function<void(const TaggedWord&)>& sink) {
    const auto letters = letter_order(alphabet);
    TaggedWord prefix;
    for (std::size_t len = 0; len <= max_len; ++len)
        generate(letters, len, /*need_matched=*/true, prefix, 0, sink);
}

std::vector<TaggedWord> enumerate_well_matched(const Alphabet& alphabet, std::size_t max_len) {
    std::vector<TaggedWord> out;
    enumerate_well_matched(alphabet, max_len, [&](const TaggedWord& w) { out.push_back(w); });
    return out;
}

std::vector<TaggedWord> enumerate_all_tagged(const Alphabet& alphabet, std::size_t max_len) {
    const auto letters = letter_order(alphabet);
    std::vector<TaggedWord> out;
    TaggedWord prefix;
    for (std::size_t len = 0; len <= max_len; ++len)
        generate(letters, len, /*need_matched=*/false, prefix, 0,
                 [&](const TaggedWord& w) { out.push_back(w); });
    return out;
}

std::vector<unsigned long long> well_matched_counts(std::size_t k, std::size_t max_len) {
    std::vector<unsigned long long> m(max_len + 1, 0);
    m[0] = 1;
    for (std::size_t n = 1; n <= max_len; ++n) {
        unsigned long long total = k * m[n - 1];
        if (n >= 2)
            for (std::size_t i = 0; i + 2 <= n; ++i) total += k * k * m[i] * m[n - 2 - i];
        m[n] = total;
    }
    return m;
}

std::string nested_word_to_json(const NestedWord& nw) {
    nlohmann::json j;
    j["word"] = nw.word;
    j["nu"] = nlohmann::json::array();
    for (const auto& [i, k] : nw.nu) j["nu"].push_back({i, k});
    return j.dump();
}

NestedWord nested_word_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("bad nested-word JSON: ") + e.what());
    }
    NestedWord nw;
    try {
        nw.word = j.at("word").get<std::vector<Symbol>>();
        for (const auto& pair : j.at("nu")) {
            if (!pair.is_array() || pair.size() != 2)
                throw InputError("nu entries must be [i, j] pairs");
            nw.nu.emplace_back(pair[0].get<std::size_t>(), pair[1].get<std::size_t>());
        }
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("bad nested-word JSON: ") + e.what());
    }
    std::sort(nw.nu.begin(), nw.nu.end());
    auto violations = validate(nw);
    if (!violations.empty())
        throw ValidationError("invalid nested word: " + violations.front());
    return nw;
}

}  // namespace wvpa
