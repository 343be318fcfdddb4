#include <catch2/catch_amalgamated.hpp>

#include "entroscope/topo_automaton.hpp"

using namespace entroscope;

namespace {

Lang mod3_dfa() {
    DfaDesc d;
    d.alphabet = Alphabet::from_utf8("ab");
    d.n_states = 3;
    d.initial = 0;
    d.accepting = {true, false, false};
    d.transitions = {{1, 0}, {2, 1}, {0, 2}};
    return Lang::dfa(d);
}

GammaOptions opts(int bound) {
    GammaOptions o;
    o.prefix_bound = bound;
    o.budget = 500'000'000ull;
    return o;
}

Row brute_profile(const Lang& lang, const Word& u, int m) {
    SuffixSet F = SuffixSet::make(lang.alphabet(), m, LengthMode::UpTo);
    Oracle oracle(lang);
    return row(oracle, u, F);
}

} // namespace

TEST_CASE("truncation profiles") {
    SECTION("universal has the all-ones profile only") {
        Lang all = Lang::universal(Alphabet::from_utf8("ab"));
        TruncatedAutomaton a = build_truncated(all, 3, 5, opts(5));
        CHECK(a.profiles.size() == 1);
        CHECK(a.final_profile[0]);
    }
    SECTION("dyck(1) at horizon 1 has three profiles") {
        TruncatedAutomaton a = build_truncated(Lang::dyck(1), 1, 6, opts(6));
        CHECK(a.profiles.size() == 3);
        CHECK(a.saturated);
    }
    SECTION("mod-3 counter at horizon 2 has one profile per residue") {
        TruncatedAutomaton a = build_truncated(mod3_dfa(), 2, 6, opts(6));
        CHECK(a.profiles.size() == 3);
    }
    SECTION("profile count equals gamma at the same horizon and prefix universe") {
        std::vector<Lang> langs{Lang::dyck(1), Lang::dyck(2), Lang::commutative_dyck(2),
                                Lang::anbncn(), mod3_dfa(),
                                Lang::palindromes(Alphabet::from_utf8("ab"))};
        for (const Lang& lang : langs) {
            for (int m = 1; m <= 3; ++m) {
                TruncatedAutomaton a = build_truncated(lang, m, 7, opts(7));
                SuffixSet F = SuffixSet::make(lang.alphabet(), m, LengthMode::UpTo);
                GammaRecord brute = gamma_bruteforce(lang, F, opts(7));
                INFO(lang.describe() << " m=" << m);
                CHECK(a.profiles.size() == brute.gamma);
            }
        }
    }
    SECTION("a profile is final exactly when its epsilon bit is set") {
        TruncatedAutomaton a = build_truncated(Lang::dyck(1), 3, 7, opts(7));
        for (std::size_t i = 0; i < a.profiles.size(); ++i)
            CHECK(a.final_profile[i] == a.profiles[i].get(0));
    }
}

TEST_CASE("transitions are well-defined on profiles") {
    std::vector<Lang> langs{Lang::dyck(1), Lang::anbncn(), mod3_dfa(),
                            Lang::palindromes(Alphabet::from_utf8("ab"))};
    for (const Lang& lang : langs) {
        const int m = 3;
        const int P = 6;
        TruncatedAutomaton a = build_truncated(lang, m, P, opts(P));
        INFO(lang.describe());
        // every prefix carrying a given m-profile must step to the stored
        // (m-1)-profile, recomputed here from scratch
        for (const Word& u : enumerate_words(lang.alphabet().size(), P, LengthMode::UpTo)) {
            Row profile = brute_profile(lang, u, m);
            std::size_t idx = a.profiles.size();
            for (std::size_t i = 0; i < a.profiles.size(); ++i)
                if (a.profiles[i] == profile) {
                    idx = i;
                    break;
                }
            REQUIRE(idx < a.profiles.size());
            for (std::size_t s = 0; s < lang.alphabet().size(); ++s) {
                Word us = u;
                us.push_back(static_cast<Symbol>(s));
                REQUIRE(a.transitions[idx][s] == brute_profile(lang, us, m - 1));
            }
        }
    }
}

TEST_CASE("cover complexity equals gamma") {
    SECTION("the membership split alone has two cells for dyck(1)") {
        TruncatedAutomaton a = build_truncated(Lang::dyck(1), 1, 6, opts(6));
        CHECK(cover_complexity(a, 0, LengthMode::UpTo) == 2);
    }
    SECTION("dyck(1) at horizon 1") {
        TruncatedAutomaton a = build_truncated(Lang::dyck(1), 1, 6, opts(6));
        CHECK(cover_complexity(a, 1, LengthMode::UpTo) == 3);
    }
    SECTION("mod-3 counter at horizon 2") {
        TruncatedAutomaton a = build_truncated(mod3_dfa(), 2, 6, opts(6));
        CHECK(cover_complexity(a, 2, LengthMode::UpTo) == 3);
        CHECK(cover_complexity(a, 2, LengthMode::UpTo) ==
              gamma_exact(mod3_dfa(), 2, LengthMode::UpTo).gamma);
    }
    SECTION("matched prefix universes agree across the catalog") {
        std::vector<Lang> langs{Lang::dyck(1),  Lang::dyck(2),
                                Lang::commutative_dyck(2), Lang::anbncn(),
                                mod3_dfa(),     Lang::palindromes(Alphabet::from_utf8("ab")),
                                Lang::count_diff(U'a', U'b', 1)};
        for (const Lang& lang : langs) {
            const int P = 7;
            TruncatedAutomaton a = build_truncated(lang, 4, P, opts(P));
            for (int n = 0; n <= 4; ++n) {
                SuffixSet F = SuffixSet::make(lang.alphabet(), n, LengthMode::UpTo);
                GammaRecord brute = gamma_bruteforce(lang, F, opts(P));
                INFO(lang.describe() << " n=" << n);
                REQUIRE(cover_complexity(a, n, LengthMode::UpTo) == brute.gamma);
            }
        }
    }
    SECTION("lambda cells group profiles with equal restrictions") {
        TruncatedAutomaton a = build_truncated(Lang::dyck(1), 3, 7, opts(7));
        LambdaPartition part = lambda_partition(a, 1, LengthMode::UpTo);
        std::size_t total = 0;
        for (const auto& cell : part.cells) {
            CHECK(!cell.empty());
            total += cell.size();
        }
        CHECK(total == a.profiles.size());
        CHECK(part.cells.size() == 3);
    }
}

TEST_CASE("cover-based entropy sequence equals the row-based one") {
    std::vector<Lang> langs{mod3_dfa(), Lang::dyck(1),
                            Lang::universal(Alphabet::from_utf8("ab"))};
    for (const Lang& lang : langs) {
        const int n_max = 5;
        const int P = 8;
        CoverEntropySequence seq = entropy_via_covers(lang, n_max, P, opts(P));
        INFO(lang.describe());
        for (int n = 0; n <= n_max; ++n) {
            SuffixSet F = SuffixSet::make(lang.alphabet(), n, LengthMode::UpTo);
            GammaRecord brute = gamma_bruteforce(lang, F, opts(P));
            REQUIRE(seq.counts[n] == brute.gamma);
        }
        if (lang.kind() == LangKind::Universal)
            for (double r : seq.ratios) CHECK(r == 0.0);
    }
}
