#ifndef ENTROSCOPE_ALPHABET_HPP
#define ENTROSCOPE_ALPHABET_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace entroscope {

using Symbol = std::uint8_t;
using Word = std::vector<Symbol>;

enum class LengthMode { UpTo, Exact };

/// An ordered alphabet of distinct single-codepoint tokens. The position of a
/// token in the list is its rank; all words are stored as rank sequences.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<char32_t> tokens);

    /// Builds an alphabet from a UTF-8 string, one codepoint per token.
    static Alphabet from_utf8(const std::string& tokens);

    std::size_t size() const { return tokens_.size(); }
    char32_t token(Symbol rank) const { return tokens_.at(rank); }
    bool has_token(char32_t t) const;
    Symbol rank_of(char32_t t) const;

    /// Decodes a UTF-8 string into a word; rejects unknown tokens.
    Word parse_word(const std::string& text) const;
    std::string render(const Word& w) const;
    std::string render_token(Symbol rank) const;

    bool operator==(const Alphabet& other) const { return tokens_ == other.tokens_; }
    bool operator!=(const Alphabet& other) const { return tokens_ != other.tokens_; }

private:
    std::vector<char32_t> tokens_;
};

Word concat(const Word& a, const Word& b);

/// Number of words of length <= n (UpTo) or == n (Exact) over k symbols.
std::uint64_t word_count(std::size_t k, int n, LengthMode mode);

/// All words over [0,k) in length-lexicographic order: shorter first, then
/// lexicographic by rank.
std::vector<Word> enumerate_words(std::size_t k, int n, LengthMode mode);

/// Length-lex index of w among all words over k symbols (up-to enumeration).
std::uint64_t length_lex_index(std::size_t k, const Word& w);

std::vector<char32_t> decode_utf8(const std::string& text);
std::string encode_utf8(char32_t cp);

} // namespace entroscope

#endif
