#include "entroscope/language.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace entroscope {

namespace {

Alphabet default_dyck_alphabet(int sorts) {
    static const char32_t pairs[4][2] = {{U'(', U')'}, {U'[', U']'}, {U'{', U'}'}, {U'<', U'>'}};
    if (sorts < 1) throw InputError("dyck needs at least one sort");
    if (sorts > 4) throw InputError("dyck with more than 4 sorts needs an explicit alphabet");
    std::vector<char32_t> tokens;
    for (int i = 0; i < sorts; ++i) {
        tokens.push_back(pairs[i][0]);
        tokens.push_back(pairs[i][1]);
    }
    return Alphabet(std::move(tokens));
}

std::shared_ptr<LangNode> make_node(LangKind kind, Alphabet a, std::string desc) {
    auto n = std::make_shared<LangNode>();
    n->kind = kind;
    n->alphabet = std::move(a);
    n->description = std::move(desc);
    return n;
}

// Dyck membership: the word maps to the identity of the free group on the
// sorts (opening rank 2i -> generator i, closing rank 2i+1 -> its inverse)
// and every prefix has per-sort count dominance |u|_open >= |u|_close.
bool dyck_member(int sorts, const Word& w) {
    std::vector<std::int32_t> stack;
    std::vector<long long> net(sorts, 0);
    for (Symbol s : w) {
        int sort = s / 2;
        if ((s & 1) == 0) {
            ++net[sort];
            std::int32_t letter = sort + 1;
            if (!stack.empty() && stack.back() == -letter)
                stack.pop_back();
            else
                stack.push_back(letter);
        } else {
            if (--net[sort] < 0) return false;
            std::int32_t letter = -(sort + 1);
            if (!stack.empty() && stack.back() == -letter)
                stack.pop_back();
            else
                stack.push_back(letter);
        }
    }
    return stack.empty();
}

bool commutative_dyck_member(int sorts, const Word& w) {
    std::vector<long long> net(sorts, 0);
    for (Symbol s : w) {
        int sort = s / 2;
        if ((s & 1) == 0) {
            ++net[sort];
        } else if (--net[sort] < 0) {
            return false;
        }
    }
    return std::all_of(net.begin(), net.end(), [](long long v) { return v == 0; });
}

bool anbncn_member(const Word& w) {
    std::size_t i = 0;
    std::size_t a = 0, b = 0, c = 0;
    while (i < w.size() && w[i] == 0) ++i, ++a;
    while (i < w.size() && w[i] == 1) ++i, ++b;
    while (i < w.size() && w[i] == 2) ++i, ++c;
    return i == w.size() && a == b && b == c;
}

// Member words have length 2^j + j; the first 2^j symbols form a lookup
// table indexed by the rank of the trailing j symbols.
bool infinite_entropy_member(const Word& w) {
    std::size_t m = w.size();
    std::uint64_t block = 1;
    for (std::size_t j = 0;; ++j, block <<= 1) {
        std::size_t total = block + j;
        if (total > m) return false;
        if (total == m) {
            std::uint64_t rank = 0;
            for (std::size_t i = block; i < m; ++i) rank = rank * 2 + w[i];
            return w[rank] == 1;
        }
    }
}

bool group_language_member(const GroupLanguageDesc& d, const Word& w) {
    GroupElement g = d.group.identity();
    if (!d.prefix_ok(g)) return false;
    for (Symbol s : w) {
        g = d.group.multiply(g, d.images.at(s));
        if (!d.prefix_ok(g)) return false;
    }
    return std::find(d.targets.begin(), d.targets.end(), g) != d.targets.end();
}

} // namespace

Lang Lang::empty(Alphabet a) {
    return Lang(make_node(LangKind::Empty, std::move(a), "empty"));
}

Lang Lang::universal(Alphabet a) {
    return Lang(make_node(LangKind::Universal, std::move(a), "universal"));
}

Lang Lang::dfa(DfaDesc d) {
    if (d.n_states < 1) throw FormatError("dfa needs at least one state");
    if (d.initial < 0 || d.initial >= d.n_states) throw FormatError("dfa initial state out of range");
    if (d.accepting.size() != static_cast<std::size_t>(d.n_states))
        throw FormatError("dfa accepting vector size mismatch");
    if (d.transitions.size() != static_cast<std::size_t>(d.n_states))
        throw FormatError("dfa transition table must have one row per state");
    for (int s = 0; s < d.n_states; ++s) {
        if (d.transitions[s].size() != d.alphabet.size())
            throw FormatError("dfa state " + std::to_string(s) + ": row must have one entry per symbol");
        for (int t : d.transitions[s])
            if (t < 0 || t >= d.n_states)
                throw FormatError("dfa state " + std::to_string(s) + ": transition target out of range");
    }
    auto n = make_node(LangKind::Dfa, d.alphabet, "dfa");
    n->dfa = std::make_shared<DfaDesc>(std::move(d));
    return Lang(std::move(n));
}

Lang Lang::dyck(int sorts) { return dyck(sorts, default_dyck_alphabet(sorts)); }

Lang Lang::dyck(int sorts, Alphabet a) {
    if (sorts < 1) throw InputError("dyck needs at least one sort");
    if (a.size() != static_cast<std::size_t>(2 * sorts))
        throw InputError("dyck alphabet must have exactly 2*sorts symbols");
    auto n = make_node(LangKind::Dyck, std::move(a), "dyck:" + std::to_string(sorts));
    n->sorts = sorts;
    return Lang(std::move(n));
}

Lang Lang::commutative_dyck(int sorts) { return commutative_dyck(sorts, default_dyck_alphabet(sorts)); }

Lang Lang::commutative_dyck(int sorts, Alphabet a) {
    if (sorts < 1) throw InputError("cdyck needs at least one sort");
    if (a.size() != static_cast<std::size_t>(2 * sorts))
        throw InputError("cdyck alphabet must have exactly 2*sorts symbols");
    auto n = make_node(LangKind::CommutativeDyck, std::move(a), "cdyck:" + std::to_string(sorts));
    n->sorts = sorts;
    return Lang(std::move(n));
}

Lang Lang::palindromes(Alphabet a) {
    return Lang(make_node(LangKind::Palindromes, std::move(a), "palin"));
}

Lang Lang::anbncn() {
    return Lang(make_node(LangKind::AnBnCn, Alphabet::from_utf8("abc"), "anbncn"));
}

Lang Lang::count_diff(char32_t a, char32_t b, long long m) {
    if (a == b) throw InputError("countdiff needs two distinct symbols");
    if (m < 0) throw InputError("countdiff offset must be >= 0");
    auto n = make_node(LangKind::CountDiff, Alphabet({a, b}),
                       "countdiff:" + encode_utf8(a) + "," + encode_utf8(b) + "," + std::to_string(m));
    n->diff = m;
    return Lang(std::move(n));
}

Lang Lang::group_language(GroupLanguageDesc d) {
    if (d.images.size() != d.alphabet.size())
        throw InputError("group language needs one image per alphabet symbol");
    if (d.targets.empty()) throw InputError("group language needs a nonempty finite target set");
    if (!d.prefix_ok) throw InputError("group language needs a prefix predicate");
    auto n = make_node(LangKind::GroupLanguage, d.alphabet, "grouplang(" + d.group.describe() + ")");
    n->group_lang = std::make_shared<GroupLanguageDesc>(std::move(d));
    return Lang(std::move(n));
}

Lang Lang::infinite_entropy() {
    return Lang(make_node(LangKind::InfiniteEntropy, Alphabet::from_utf8("ab"), "infent"));
}

Lang complement(const Lang& l) {
    auto n = make_node(LangKind::Complement, l.alphabet(), "not(" + l.describe() + ")");
    n->children = {l};
    return Lang(std::move(n));
}

Lang unite(const Lang& a, const Lang& b) {
    if (a.alphabet() != b.alphabet()) throw InputError("or(...) operands must share one alphabet");
    auto n = make_node(LangKind::Union, a.alphabet(), "or(" + a.describe() + "," + b.describe() + ")");
    n->children = {a, b};
    return Lang(std::move(n));
}

Lang intersect(const Lang& a, const Lang& b) {
    if (a.alphabet() != b.alphabet()) throw InputError("and(...) operands must share one alphabet");
    auto n = make_node(LangKind::Intersection, a.alphabet(), "and(" + a.describe() + "," + b.describe() + ")");
    n->children = {a, b};
    return Lang(std::move(n));
}

const Alphabet& Lang::alphabet() const { return node_->alphabet; }
LangKind Lang::kind() const { return node_->kind; }
std::string Lang::describe() const { return node_->description; }

bool Lang::member(const Word& w) const {
    const LangNode& n = *node_;
    for (Symbol s : w)
        if (s >= n.alphabet.size()) throw InputError("word symbol rank out of alphabet range");
    switch (n.kind) {
        case LangKind::Empty: return false;
        case LangKind::Universal: return true;
        case LangKind::Dfa: {
            const DfaDesc& d = *n.dfa;
            int state = d.initial;
            for (Symbol s : w) state = d.transitions[state][s];
            return d.accepting[state];
        }
        case LangKind::Dyck: return dyck_member(n.sorts, w);
        case LangKind::CommutativeDyck: return commutative_dyck_member(n.sorts, w);
        case LangKind::Palindromes: {
            if (w.size() % 2 != 0) return false;
            for (std::size_t i = 0; i < w.size() / 2; ++i)
                if (w[i] != w[w.size() - 1 - i]) return false;
            return true;
        }
        case LangKind::AnBnCn: return anbncn_member(w);
        case LangKind::CountDiff: {
            long long d = 0;
            for (Symbol s : w) d += (s == 0) ? 1 : -1;
            return d == n.diff;
        }
        case LangKind::GroupLanguage: return group_language_member(*n.group_lang, w);
        case LangKind::InfiniteEntropy: return infinite_entropy_member(w);
        case LangKind::Complement: return !n.children[0].member(w);
        case LangKind::Union: return n.children[0].member(w) || n.children[1].member(w);
        case LangKind::Intersection: return n.children[0].member(w) && n.children[1].member(w);
    }
    throw InputError("unreachable language kind");
}

Lang load_dfa(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(std::string("dfa file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw FormatError("dfa file must be a JSON object");
    for (const char* key : {"alphabet", "states", "initial", "accepting", "transitions"})
        if (!j.contains(key)) throw FormatError(std::string("dfa file is missing \"") + key + "\"");

    std::vector<char32_t> tokens;
    for (const auto& t : j.at("alphabet")) {
        if (!t.is_string()) throw FormatError("dfa alphabet entries must be strings");
        auto cps = decode_utf8(t.get<std::string>());
        if (cps.size() != 1) throw FormatError("dfa alphabet tokens must be single codepoints");
        tokens.push_back(cps[0]);
    }

    DfaDesc d;
    d.alphabet = Alphabet(std::move(tokens));
    d.n_states = j.at("states").get<int>();
    d.initial = j.at("initial").get<int>();
    if (d.n_states < 1) throw FormatError("dfa needs at least one state");
    d.accepting.assign(d.n_states, false);
    for (const auto& a : j.at("accepting")) {
        int s = a.get<int>();
        if (s < 0 || s >= d.n_states)
            throw FormatError("dfa accepting state " + std::to_string(s) + " is unknown");
        if (d.accepting[s])
            throw FormatError("dfa accepting state " + std::to_string(s) + " listed twice");
        d.accepting[s] = true;
    }
    const auto& rows = j.at("transitions");
    if (!rows.is_array() || rows.size() != static_cast<std::size_t>(d.n_states))
        throw FormatError("dfa transitions must have exactly one row per state (state count " +
                          std::to_string(d.n_states) + ", rows " + std::to_string(rows.size()) + ")");
    for (int s = 0; s < d.n_states; ++s) {
        const auto& row = rows.at(s);
        if (!row.is_array() || row.size() < d.alphabet.size())
            throw FormatError("dfa state " + std::to_string(s) + ": missing transition for some symbol");
        if (row.size() > d.alphabet.size())
            throw FormatError("dfa state " + std::to_string(s) + ": duplicate transition entry");
        std::vector<int> targets;
        for (const auto& t : row) {
            int v = t.get<int>();
            if (v < 0 || v >= d.n_states)
                throw FormatError("dfa state " + std::to_string(s) + ": transition to unknown state " +
                                  std::to_string(v));
            targets.push_back(v);
        }
        d.transitions.push_back(std::move(targets));
    }
    return Lang::dfa(std::move(d));
}

namespace {

// recursive-descent parser for the CLI language grammar
struct SpecParser {
    const std::string& text;
    std::size_t pos = 0;

    explicit SpecParser(const std::string& t) : text(t) {}

    bool starts_with(const std::string& s) const { return text.compare(pos, s.size(), s) == 0; }

    std::string take_until_balanced_comma_or_close() {
        std::string out;
        int depth = 0;
        while (pos < text.size()) {
            char c = text[pos];
            if (c == '(') ++depth;
            if (c == ')') {
                if (depth == 0) break;
                --depth;
            }
            if (c == ',' && depth == 0) break;
            out.push_back(c);
            ++pos;
        }
        return out;
    }

    void expect(char c) {
        if (pos >= text.size() || text[pos] != c)
            throw InputError("bad language spec \"" + text + "\": expected '" + std::string(1, c) +
                             "' at position " + std::to_string(pos));
        ++pos;
    }

    Lang parse() {
        Lang l = parse_expr();
        if (pos != text.size())
            throw InputError("bad language spec \"" + text + "\": trailing characters at position " +
                             std::to_string(pos));
        return l;
    }

    Lang parse_expr() {
        if (starts_with("not(")) {
            pos += 4;
            Lang inner = parse_expr();
            expect(')');
            return complement(inner);
        }
        if (starts_with("and(") || starts_with("or(")) {
            bool is_and = starts_with("and(");
            pos += is_and ? 4 : 3;
            Lang lhs = parse_expr();
            expect(',');
            Lang rhs = parse_expr();
            expect(')');
            return is_and ? intersect(lhs, rhs) : unite(lhs, rhs);
        }
        std::string atom = take_until_balanced_comma_or_close();
        // countdiff's own arguments are comma-separated
        if (atom.rfind("countdiff:", 0) == 0) {
            for (int field = 0; field < 2 && pos < text.size() && text[pos] == ','; ++field) {
                atom.push_back(text[pos++]);
                atom += take_until_balanced_comma_or_close();
            }
        }
        return parse_atom(atom);
    }

    static Lang parse_atom(const std::string& atom) {
        auto colon = atom.find(':');
        std::string head = atom.substr(0, colon);
        std::string arg = colon == std::string::npos ? "" : atom.substr(colon + 1);
        auto want_int = [&](const std::string& s) {
            try {
                std::size_t used = 0;
                int v = std::stoi(s, &used);
                if (used != s.size()) throw std::invalid_argument("");
                return v;
            } catch (...) {
                throw InputError("bad language spec argument \"" + s + "\" in \"" + atom + "\"");
            }
        };
        if (head == "dyck") return Lang::dyck(want_int(arg));
        if (head == "cdyck") return Lang::commutative_dyck(want_int(arg));
        if (head == "palin") {
            if (arg.empty()) throw InputError("palin needs an alphabet, e.g. palin:ab");
            return Lang::palindromes(Alphabet::from_utf8(arg));
        }
        if (head == "anbncn") return Lang::anbncn();
        if (head == "infent") return Lang::infinite_entropy();
        if (head == "empty") return Lang::empty(Alphabet::from_utf8(arg.empty() ? "ab" : arg));
        if (head == "universal") return Lang::universal(Alphabet::from_utf8(arg.empty() ? "ab" : arg));
        if (head == "countdiff") {
            auto c1 = arg.find(',');
            auto c2 = arg.rfind(',');
            if (c1 == std::string::npos || c2 == c1)
                throw InputError("countdiff needs three arguments, e.g. countdiff:a,b,3");
            auto a = decode_utf8(arg.substr(0, c1));
            auto b = decode_utf8(arg.substr(c1 + 1, c2 - c1 - 1));
            if (a.size() != 1 || b.size() != 1)
                throw InputError("countdiff symbols must be single codepoints");
            return Lang::count_diff(a[0], b[0], want_int(arg.substr(c2 + 1)));
        }
        if (head == "dfa") {
            std::ifstream in(arg, std::ios::binary);
            if (!in) throw InputError("cannot open dfa file \"" + arg + "\"");
            std::ostringstream ss;
            ss << in.rdbuf();
            return load_dfa(ss.str());
        }
        throw InputError("unknown language spec \"" + atom + "\"");
    }
};

} // namespace

Lang parse_lang(const std::string& spec) {
    if (spec.empty()) throw InputError("empty language spec");
    return SpecParser(spec).parse();
}

} // namespace entroscope
