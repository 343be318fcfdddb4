#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "entroscope/certificate.hpp"
#include "entroscope/language.hpp"

using namespace entroscope;

namespace {

Word w(const Lang& lang, const std::string& text) { return lang.alphabet().parse_word(text); }

// independent evaluator of the dyck predicate: quadratic prefix count checks
// plus repeated deletion of adjacent inverse pairs
bool dyck_reference(int sorts, const Word& word) {
    for (std::size_t i = 0; i < word.size(); ++i) {
        for (int sort = 0; sort < sorts; ++sort) {
            long long open = 0, close = 0;
            for (std::size_t j = 0; j <= i; ++j) {
                if (word[j] == 2 * sort) ++open;
                if (word[j] == 2 * sort + 1) ++close;
            }
            if (close > open) return false;
        }
    }
    std::vector<int> letters;
    for (Symbol s : word) letters.push_back((s & 1) ? -(s / 2 + 1) : (s / 2 + 1));
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < letters.size(); ++i) {
            if (letters[i] == -letters[i + 1]) {
                letters.erase(letters.begin() + i, letters.begin() + i + 2);
                changed = true;
                break;
            }
        }
    }
    return letters.empty();
}

const std::string kMod3Json = R"({
  "alphabet": ["a", "b"],
  "states": 3,
  "initial": 0,
  "accepting": [0],
  "transitions": [[1, 0], [2, 1], [0, 2]]
})";

} // namespace

TEST_CASE("alphabet basics") {
    Alphabet a = Alphabet::from_utf8("ab");
    CHECK(a.size() == 2);
    CHECK(a.rank_of(U'b') == 1);
    CHECK(a.render(a.parse_word("abba")) == "abba");
    CHECK_THROWS_AS(a.parse_word("abc"), InputError);
    CHECK_THROWS_AS(Alphabet::from_utf8("aa"), InputError);
}

TEST_CASE("word enumeration is length-lex") {
    Alphabet ab = Alphabet::from_utf8("ab");
    auto upto1 = enumerate_words(2, 1, LengthMode::UpTo);
    REQUIRE(upto1.size() == 3);
    CHECK(ab.render(upto1[0]) == "");
    CHECK(ab.render(upto1[1]) == "a");
    CHECK(ab.render(upto1[2]) == "b");

    auto exact2 = enumerate_words(2, 2, LengthMode::Exact);
    REQUIRE(exact2.size() == 4);
    CHECK(ab.render(exact2[0]) == "aa");
    CHECK(ab.render(exact2[1]) == "ab");
    CHECK(ab.render(exact2[2]) == "ba");
    CHECK(ab.render(exact2[3]) == "bb");

    CHECK(enumerate_words(3, 2, LengthMode::UpTo).size() == 13);
    CHECK(word_count(3, 2, LengthMode::UpTo) == 13);

    SECTION("length_lex_index inverts the enumeration") {
        auto all = enumerate_words(3, 4, LengthMode::UpTo);
        for (std::size_t i = 0; i < all.size(); ++i) CHECK(length_lex_index(3, all[i]) == i);
    }
}

TEST_CASE("dyck membership follows the group predicate") {
    Lang d1 = Lang::dyck(1);
    CHECK(d1.member(w(d1, "(()())")));
    CHECK(d1.member(w(d1, "((()))")));
    CHECK(!d1.member(w(d1, "(()")));
    CHECK(!d1.member(w(d1, "(()))")));
    CHECK(d1.member(w(d1, "")));
    CHECK(!d1.member(w(d1, ")(")));

    SECTION("free cancellation admits words a matched-stack evaluator rejects") {
        Lang d2 = Lang::dyck(2);
        // ([)(]) reduces to the identity letter by letter and keeps per-sort
        // prefix dominance, although the sorts do not nest
        CHECK(d2.member(w(d2, "([)(])")));
        CHECK(!d2.member(w(d2, "([)]")));
        CHECK(d2.member(w(d2, "([])")));
    }

    SECTION("agrees with the rewrite-based reference evaluator") {
        for (const Word& word : enumerate_words(2, 12, LengthMode::UpTo))
            REQUIRE(d1.member(word) == dyck_reference(1, word));
        Lang d2 = Lang::dyck(2);
        for (const Word& word : enumerate_words(4, 9, LengthMode::UpTo))
            REQUIRE(d2.member(word) == dyck_reference(2, word));
        std::mt19937_64 rng(20240817);
        std::uniform_int_distribution<int> sym(0, 3);
        for (int t = 0; t < 20000; ++t) {
            Word word(10 + t % 3);
            for (auto& s : word) s = static_cast<Symbol>(sym(rng));
            REQUIRE(d2.member(word) == dyck_reference(2, word));
        }
    }
}

TEST_CASE("commutative dyck counts per sort only") {
    Lang cd2 = Lang::commutative_dyck(2);
    CHECK(cd2.member(w(cd2, "([)]")));  // sorts balance without nesting
    CHECK(cd2.member(w(cd2, "()[]")));
    CHECK(!cd2.member(w(cd2, "(][")));
    CHECK(!cd2.member(w(cd2, "(")));
    CHECK(cd2.member(w(cd2, "")));
}

TEST_CASE("palindrome membership") {
    Lang p = Lang::palindromes(Alphabet::from_utf8("ab"));
    CHECK(p.member(w(p, "abba")));
    CHECK(!p.member(w(p, "aba")));  // odd length never splits as x x-reversed
    CHECK(p.member(w(p, "")));
    CHECK(!p.member(w(p, "ab")));
}

TEST_CASE("anbncn membership") {
    Lang l = Lang::anbncn();
    CHECK(l.member(w(l, "aabbcc")));
    CHECK(!l.member(w(l, "aabbc")));
    CHECK(l.member(w(l, "")));
    CHECK(l.member(w(l, "abc")));
    CHECK(!l.member(w(l, "b")));
    CHECK(!l.member(w(l, "acb")));
}

TEST_CASE("count-diff membership") {
    Lang cd = Lang::count_diff(U'a', U'b', 3);
    CHECK(cd.member(w(cd, "aaa")));
    CHECK(cd.member(w(cd, "aabaaab")));  // 5 a's, 2 b's
    CHECK(!cd.member(w(cd, "ab")));
    CHECK(!cd.member(w(cd, "")));
    Lang cd0 = Lang::count_diff(U'a', U'b', 0);
    CHECK(cd0.member(w(cd0, "")));
    CHECK(cd0.member(w(cd0, "ba")));
}

TEST_CASE("infinite entropy membership under the canonical table maps") {
    Lang l = Lang::infinite_entropy();
    CHECK(l.member(w(l, "baa")));
    CHECK(!l.member(w(l, "bab")));
    CHECK(l.member(w(l, "b")));
    CHECK(!l.member(w(l, "a")));
    CHECK(!l.member(w(l, "")));

    SECTION("members exist only at block lengths 2^j + j") {
        for (const Word& word : enumerate_words(2, 7, LengthMode::UpTo)) {
            if (l.member(word)) {
                std::size_t m = word.size();
                CHECK((m == 1 || m == 3 || m == 6));
            }
        }
    }
    SECTION("the table map hits all subsets at j=2") {
        // 16 words of length 4 index the 16 subsets of the 4 rank-2 suffixes
        std::set<std::string> patterns;
        for (const Word& u : enumerate_words(2, 4, LengthMode::Exact)) {
            std::string pattern;
            for (const Word& v : enumerate_words(2, 2, LengthMode::Exact))
                pattern += l.member(concat(u, v)) ? '1' : '0';
            patterns.insert(pattern);
        }
        CHECK(patterns.size() == 16);
    }
}

TEST_CASE("group language gives a second route to the catalog predicates") {
    SECTION("dyck as prefix-constrained free-group kernel") {
        int sorts = GENERATE(1, 2);
        Group g(GroupKind::Free, sorts);
        GroupLanguageDesc desc{Lang::dyck(sorts).alphabet(), g, {}, {}, {g.identity()}};
        for (int i = 0; i < sorts; ++i) {
            desc.images.push_back(g.generator(i));
            desc.images.push_back(g.inverse_generator(i));
        }
        desc.prefix_ok = [g](const GroupElement& e) {
            for (auto v : g.abelianization(e))
                if (v < 0) return false;
            return true;
        };
        Lang via_group = Lang::group_language(desc);
        Lang direct = Lang::dyck(sorts);
        int max_len = sorts == 1 ? 10 : 7;
        for (const Word& word : enumerate_words(2 * sorts, max_len, LengthMode::UpTo))
            REQUIRE(via_group.member(word) == direct.member(word));
    }

    SECTION("count-diff as abelian preimage") {
        Group z(GroupKind::FreeAbelian, 1);
        GroupElement target{{3}};
        GroupLanguageDesc desc{Alphabet::from_utf8("ab"),
                               z,
                               {z.generator(0), z.inverse_generator(0)},
                               [](const GroupElement&) { return true; },
                               {target}};
        Lang via_group = Lang::group_language(desc);
        Lang direct = Lang::count_diff(U'a', U'b', 3);
        for (const Word& word : enumerate_words(2, 10, LengthMode::UpTo))
            REQUIRE(via_group.member(word) == direct.member(word));
    }
}

TEST_CASE("dfa loader") {
    SECTION("mod-3 counter accepts multiples of three") {
        Lang m3 = load_dfa(kMod3Json);
        CHECK(m3.member(w(m3, "aaa")));
        CHECK(!m3.member(w(m3, "aa")));
        CHECK(m3.member(w(m3, "babaab")));
        CHECK(!m3.member(w(m3, "babab")));
    }
    SECTION("empty accepting set behaves as the empty language") {
        Lang none = load_dfa(R"({"alphabet":["a"],"states":1,"initial":0,"accepting":[],
                                 "transitions":[[0]]})");
        for (const Word& word : enumerate_words(1, 6, LengthMode::UpTo))
            CHECK(!none.member(word));
    }
    SECTION("one all-accepting state behaves as the universal language") {
        Lang all = load_dfa(R"({"alphabet":["a","b"],"states":1,"initial":0,"accepting":[0],
                                "transitions":[[0,0]]})");
        for (const Word& word : enumerate_words(2, 5, LengthMode::UpTo))
            CHECK(all.member(word));
    }
    SECTION("format errors carry context") {
        CHECK_THROWS_AS(load_dfa("{"), FormatError);
        // missing transition entry for symbol b in state 1
        CHECK_THROWS_AS(load_dfa(R"({"alphabet":["a","b"],"states":2,"initial":0,
            "accepting":[0],"transitions":[[1,1],[0]]})"),
                        FormatError);
        // transition to unknown state
        CHECK_THROWS_AS(load_dfa(R"({"alphabet":["a"],"states":1,"initial":0,
            "accepting":[0],"transitions":[[4]]})"),
                        FormatError);
        // duplicate transition entry
        CHECK_THROWS_AS(load_dfa(R"({"alphabet":["a"],"states":1,"initial":0,
            "accepting":[0],"transitions":[[0,0]]})"),
                        FormatError);
        // duplicate accepting state
        CHECK_THROWS_AS(load_dfa(R"({"alphabet":["a"],"states":2,"initial":0,
            "accepting":[0,0],"transitions":[[1],[0]]})"),
                        FormatError);
    }
}

TEST_CASE("boolean combinators work pointwise") {
    Lang d1 = Lang::dyck(1, Alphabet::from_utf8("ab"));
    Lang p = Lang::palindromes(Alphabet::from_utf8("ab"));

    SECTION("complement involution") {
        Lang cc = complement(complement(d1));
        for (const Word& word : enumerate_words(2, 8, LengthMode::UpTo))
            REQUIRE(cc.member(word) == d1.member(word));
    }
    SECTION("truth tables") {
        Lang u = unite(d1, p);
        Lang i = intersect(d1, p);
        Lang n = complement(d1);
        for (const Word& word : enumerate_words(2, 8, LengthMode::UpTo)) {
            bool a = d1.member(word), b = p.member(word);
            REQUIRE(u.member(word) == (a || b));
            REQUIRE(i.member(word) == (a && b));
            REQUIRE(n.member(word) == !a);
        }
    }
    SECTION("mixed alphabets are rejected") {
        CHECK_THROWS_AS(unite(Lang::dyck(1), p), InputError);
    }
}

TEST_CASE("spec string grammar") {
    CHECK(parse_lang("dyck:2").kind() == LangKind::Dyck);
    CHECK(parse_lang("cdyck:2").kind() == LangKind::CommutativeDyck);
    CHECK(parse_lang("palin:ab").alphabet().size() == 2);
    CHECK(parse_lang("anbncn").kind() == LangKind::AnBnCn);
    CHECK(parse_lang("infent").kind() == LangKind::InfiniteEntropy);
    CHECK(parse_lang("countdiff:a,b,3").kind() == LangKind::CountDiff);
    CHECK(parse_lang("universal:ab").kind() == LangKind::Universal);
    CHECK(parse_lang("not(dyck:1)").kind() == LangKind::Complement);
    CHECK(parse_lang("and(palin:ab,not(universal:ab))").kind() == LangKind::Intersection);
    CHECK(parse_lang("or(empty:ab,universal:ab)").kind() == LangKind::Union);
    CHECK_THROWS_AS(parse_lang("dyck"), InputError);
    CHECK_THROWS_AS(parse_lang("and(dyck:1)"), InputError);
    CHECK_THROWS_AS(parse_lang("wat:3"), InputError);
    CHECK_THROWS_AS(parse_lang(""), InputError);
}

TEST_CASE("certificates agree with brute-force rows") {
    struct Case {
        Lang lang;
        int prefix_bound;
        int row_horizon;
    };
    std::vector<Case> cases;
    cases.push_back({Lang::dyck(1), 8, 4});
    cases.push_back({Lang::dyck(2), 6, 3});
    cases.push_back({Lang::commutative_dyck(2), 6, 3});
    cases.push_back({Lang::count_diff(U'a', U'b', 0), 8, 3});
    cases.push_back({Lang::count_diff(U'a', U'b', 3), 8, 3});
    cases.push_back({Lang::anbncn(), 8, 4});
    cases.push_back({load_dfa(kMod3Json), 8, 3});
    cases.push_back({complement(Lang::dyck(1)), 8, 4});

    for (const auto& c : cases) {
        INFO(c.lang.describe());
        auto cert = make_certificate(c.lang, 8);
        REQUIRE(cert != nullptr);
        auto graph = explore(*cert, c.lang.alphabet().size());
        Budget budget{200'000'000, 0};
        AuditReport report =
            audit_certificate(c.lang, graph, c.prefix_bound, c.row_horizon, budget);
        INFO("mismatch at prefix: " << report.mismatch);
        CHECK(report.ok);
        CHECK(report.checked ==
              word_count(c.lang.alphabet().size(), c.prefix_bound, LengthMode::UpTo));
    }

    SECTION("languages without certificates report none") {
        CHECK(make_certificate(Lang::palindromes(Alphabet::from_utf8("ab")), 4) == nullptr);
        CHECK(make_certificate(Lang::infinite_entropy(), 4) == nullptr);
    }
}
