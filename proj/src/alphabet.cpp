#include "entroscope/alphabet.hpp"
#include "entroscope/errors.hpp"

#include <algorithm>
#include <unordered_set>

namespace entroscope {

std::vector<char32_t> decode_utf8(const std::string& text) {
    std::vector<char32_t> out;
    std::size_t i = 0;
    while (i < text.size()) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        char32_t cp = 0;
        int extra = 0;
        if (c < 0x80) {
            cp = c;
        } else if ((c >> 5) == 0x6) {
            cp = c & 0x1f;
            extra = 1;
        } else if ((c >> 4) == 0xe) {
            cp = c & 0x0f;
            extra = 2;
        } else if ((c >> 3) == 0x1e) {
            cp = c & 0x07;
            extra = 3;
        } else {
            throw InputError("invalid UTF-8 byte in \"" + text + "\"");
        }
        if (i + extra >= text.size()) throw InputError("truncated UTF-8 sequence in \"" + text + "\"");
        for (int j = 1; j <= extra; ++j) {
            unsigned char cc = static_cast<unsigned char>(text[i + j]);
            if ((cc >> 6) != 0x2) throw InputError("invalid UTF-8 continuation in \"" + text + "\"");
            cp = (cp << 6) | (cc & 0x3f);
        }
        out.push_back(cp);
        i += extra + 1;
    }
    return out;
}

std::string encode_utf8(char32_t cp) {
    std::string out;
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else {
        out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    }
    return out;
}

Alphabet::Alphabet(std::vector<char32_t> tokens) : tokens_(std::move(tokens)) {
    if (tokens_.empty()) throw InputError("alphabet must have at least one token");
    if (tokens_.size() > 255) throw InputError("alphabet too large");
    std::unordered_set<char32_t> seen;
    for (char32_t t : tokens_) {
        if (!seen.insert(t).second)
            throw InputError("duplicate alphabet token '" + encode_utf8(t) + "'");
    }
}

Alphabet Alphabet::from_utf8(const std::string& tokens) {
    return Alphabet(decode_utf8(tokens));
}

bool Alphabet::has_token(char32_t t) const {
    return std::find(tokens_.begin(), tokens_.end(), t) != tokens_.end();
}

Symbol Alphabet::rank_of(char32_t t) const {
    auto it = std::find(tokens_.begin(), tokens_.end(), t);
    if (it == tokens_.end())
        throw InputError("symbol '" + encode_utf8(t) + "' is not in the alphabet");
    return static_cast<Symbol>(it - tokens_.begin());
}

Word Alphabet::parse_word(const std::string& text) const {
    Word w;
    for (char32_t cp : decode_utf8(text)) w.push_back(rank_of(cp));
    return w;
}

std::string Alphabet::render(const Word& w) const {
    std::string out;
    for (Symbol s : w) out += encode_utf8(token(s));
    return out;
}

std::string Alphabet::render_token(Symbol rank) const { return encode_utf8(token(rank)); }

Word concat(const Word& a, const Word& b) {
    Word out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

std::uint64_t word_count(std::size_t k, int n, LengthMode mode) {
    // saturates instead of wrapping, so budget checks stay meaningful
    const std::uint64_t cap = UINT64_MAX / 2;
    std::uint64_t exact = 1;
    std::uint64_t total = 1;
    for (int j = 1; j <= n; ++j) {
        if (exact > cap / k) return UINT64_MAX;
        exact *= k;
        if (total > cap) return UINT64_MAX;
        total += exact;
    }
    return mode == LengthMode::Exact ? exact : total;
}

std::vector<Word> enumerate_words(std::size_t k, int n, LengthMode mode) {
    std::vector<Word> out;
    out.reserve(word_count(k, n, mode));
    int first_len = mode == LengthMode::Exact ? n : 0;
    for (int len = first_len; len <= n; ++len) {
        Word w(len, 0);
        while (true) {
            out.push_back(w);
            int pos = len - 1;
            while (pos >= 0 && w[pos] == k - 1) w[pos--] = 0;
            if (pos < 0) break;
            ++w[pos];
        }
    }
    return out;
}

std::uint64_t length_lex_index(std::size_t k, const Word& w) {
    std::uint64_t offset = 0;
    std::uint64_t pow = 1;
    for (std::size_t j = 0; j < w.size(); ++j) {
        offset += pow;
        pow *= k;
    }
    std::uint64_t value = 0;
    for (Symbol s : w) value = value * k + s;
    return offset + value;
}

} // namespace entroscope
