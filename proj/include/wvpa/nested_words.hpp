#ifndef WVPA_NESTED_WORDS_HPP_
#define WVPA_NESTED_WORDS_HPP_

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "wvpa/errors.hpp"

namespace wvpa {

/// A base letter is a token drawn from a finite alphabet.
using Symbol = std::string;

/// Finite, ordered base alphabet. The declaration order fixes the letter
/// order used everywhere (enumeration, tie-breaking, generation).
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<Symbol> symbols);

    /// Parses a comma-separated list, e.g. "a,b".
    static Alphabet parse(const std::string& text);

    std::size_t size() const { return symbols_.size(); }
    const std::vector<Symbol>& symbols() const { return symbols_; }
    const Symbol& at(std::size_t i) const { return symbols_[i]; }
    bool contains(const Symbol& s) const;
    std::size_t index_of(const Symbol& s) const;  // throws UnknownLetter

    bool operator==(const Alphabet& other) const { return symbols_ == other.symbols_; }

private:
    std::vector<Symbol> symbols_;
};

/// Checks that a token is usable as a base letter: nonempty, no whitespace,
/// no '<' or '>' (those are reserved by the text syntax).
void check_symbol(const Symbol& s);

/// Position kind in the tagged alphabet. The declaration order (internal,
/// call, return) is the letter order used for shortlex enumeration.
enum class Tag { Internal = 0, Call = 1, Return = 2 };

struct TaggedLetter {
    Tag tag;
    Symbol base;

    bool operator==(const TaggedLetter& o) const { return tag == o.tag && base == o.base; }
    bool operator!=(const TaggedLetter& o) const { return !(*this == o); }
    bool operator<(const TaggedLetter& o) const {
        if (tag != o.tag) return tag < o.tag;
        return base < o.base;
    }
};

/// A word over the tagged alphabet. May be unmatched; the empty vector is
/// the empty word.
using TaggedWord = std::vector<TaggedLetter>;

inline TaggedLetter internal(Symbol s) { return {Tag::Internal, std::move(s)}; }
inline TaggedLetter call(Symbol s) { return {Tag::Call, std::move(s)}; }
inline TaggedLetter ret(Symbol s) { return {Tag::Return, std::move(s)}; }

TaggedWord concat(const TaggedWord& u, const TaggedWord& v);
/// Builds the word  <c u r>  (u wrapped in one call/return pair).
TaggedWord wrap(const Symbol& c, const TaggedWord& u, const Symbol& r);

/// Text syntax: whitespace-separated tokens, "<s" = call, "s>" = return,
/// "s" = internal; the empty word is spelled "eps".
TaggedWord parse_tagged_word(const std::string& text);
std::string format_tagged_word(const TaggedWord& w);
std::string format_letter(const TaggedLetter& l);

/// A word together with a matching relation nu of call/return edges.
/// Positions are 1-based.
struct NestedWord {
    std::vector<Symbol> word;
    std::vector<std::pair<std::size_t, std::size_t>> nu;  // kept sorted

    bool operator==(const NestedWord& o) const { return word == o.word && nu == o.nu; }
};

/// Returns the list of violated well-formedness conditions, empty iff the
/// nested word is valid. Violations are data, not failures.
std::vector<std::string> validate(const NestedWord& nw);

/// Tags each position of a valid nested word: call positions become <s,
/// return positions s>, the rest stay internal.
TaggedWord encode(const NestedWord& nw);  // throws ValidationError

/// Inverse of encode, defined on well-matched tagged words only.
NestedWord decode(const TaggedWord& w);  // throws NotWellMatched

/// Single left-to-right scan: true iff the open-call counter never goes
/// negative and ends at zero.
bool is_well_matched(const TaggedWord& w);

/// Scan profile of an arbitrary tagged word: the number of unmatched
/// returns and unmatched calls it leaves behind. A word is well-matched iff
/// both are zero, and  uv  is well-matched iff  u  has no unmatched returns,
/// v  no unmatched calls, and the open calls of  u  equal the pending
/// returns of  v.
struct MatchProfile {
    std::size_t unmatched_returns = 0;
    std::size_t unmatched_calls = 0;
};
MatchProfile match_profile(const TaggedWord& w);

/// All well-matched words of length <= max_len in shortlex order: length
/// first, then lexicographic by letter order (internals, then calls, then
/// returns, each by base-letter order).
std::vector<TaggedWord> enumerate_well_matched(const Alphabet& alphabet, std::size_t max_len);

/// Streaming variant; words are emitted in the same order.
void enumerate_well_matched(const Alphabet& alphabet, std::size_t max_len,
                            const std::function<void(const TaggedWord&)>& sink);

/// Every tagged word of length <= max_len (matched or not), same order.
/// Grows as (3|Sigma|)^len; intended for small truncations.
std::vector<TaggedWord> enumerate_all_tagged(const Alphabet& alphabet, std::size_t max_len);

/// Per-length counts of well-matched words predicted by the recurrence
/// M(0) = 1,  M(n) = k M(n-1) + k^2 sum_{i=0}^{n-2} M(i) M(n-2-i)
/// for an alphabet of k letters.
std::vector<unsigned long long> well_matched_counts(std::size_t k, std::size_t max_len);

/// JSON form {"word": [symbols...], "nu": [[i, j], ...]}. Loading
/// re-validates all conditions.
std::string nested_word_to_json(const NestedWord& nw);
NestedWord nested_word_from_json(const std::string& text);

}  // namespace wvpa

#endif  // WVPA_NESTED_WORDS_HPP_
