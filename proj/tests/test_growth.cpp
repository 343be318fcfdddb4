#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "entroscope/growth.hpp"
#include "entroscope/nerode.hpp"

using namespace entroscope;

TEST_CASE("free group reduction") {
    Group f2(GroupKind::Free, 2);
    SECTION("generator times inverse cancels") {
        GroupElement e = f2.multiply(f2.generator(0), f2.inverse_generator(0));
        CHECK(f2.is_identity(e));
    }
    SECTION("middle pairs cancel: (ab)(b'a) = aa") {
        GroupElement ab = f2.multiply(f2.generator(0), f2.generator(1));
        GroupElement b_inv_a = f2.multiply(f2.inverse_generator(1), f2.generator(0));
        GroupElement prod = f2.multiply(ab, b_inv_a);
        CHECK(prod == f2.multiply(f2.generator(0), f2.generator(0)));
    }
    SECTION("reduce gives canonical forms") {
        // a b b^-1 a a^-1 -> a
        GroupElement r = f2.reduce({1, 2, -2, 1, -1});
        CHECK(r == f2.generator(0));
        CHECK_THROWS_AS(f2.reduce({3}), InputError);
    }
    SECTION("reduction is a congruence for concatenation") {
        std::mt19937_64 rng(99);
        std::uniform_int_distribution<int> letter(0, 3);
        auto random_raw = [&](int len) {
            std::vector<std::int32_t> raw;
            for (int i = 0; i < len; ++i) {
                int v = letter(rng);
                raw.push_back(v < 2 ? v + 1 : -(v - 1));
            }
            return raw;
        };
        for (int t = 0; t < 500; ++t) {
            auto wa = random_raw(t % 7 + 1);
            auto wb = random_raw(t % 5 + 1);
            auto wab = wa;
            wab.insert(wab.end(), wb.begin(), wb.end());
            CHECK(f2.multiply(f2.reduce(wa), f2.reduce(wb)) == f2.reduce(wab));
        }
    }
}

TEST_CASE("free abelian arithmetic") {
    Group z2(GroupKind::FreeAbelian, 2);
    GroupElement a{{1, 2}};
    GroupElement b{{3, -2}};
    CHECK(z2.multiply(a, b) == GroupElement{{4, 0}});
    CHECK(z2.is_identity(z2.multiply(a, z2.inverse(a))));
    CHECK_THROWS_AS(z2.multiply(a, GroupElement{{1}}), InputError);
}

TEST_CASE("ball sizes") {
    SECTION("radius zero is the identity alone") {
        CHECK(Group(GroupKind::Free, 2).ball_size(0) == 1);
        CHECK(Group(GroupKind::FreeAbelian, 3).ball_size(0) == 1);
    }
    SECTION("free rank 2 at radius 2") {
        CHECK(Group(GroupKind::Free, 2).ball_size(2) == 17);
    }
    SECTION("abelian rank 2 at radius 2 counts l1 lattice points") {
        CHECK(Group(GroupKind::FreeAbelian, 2).ball_size(2) == 13);
    }
    SECTION("closure equals the closed form") {
        for (int k = 1; k <= 3; ++k) {
            Group free(GroupKind::Free, k);
            Group ab(GroupKind::FreeAbelian, k);
            for (int n = 0; n <= 8; ++n) {
                INFO("k=" << k << " n=" << n);
                CHECK(free.ball_size(n) == free.ball_closed_form(n));
                CHECK(ab.ball_size(n) == ab.ball_closed_form(n));
            }
        }
    }
    SECTION("budget exhaustion throws") {
        Budget tiny{10, 0};
        CHECK_THROWS_AS(Group(GroupKind::Free, 3).ball_size(6, tiny), BudgetExceeded);
    }
}

TEST_CASE("growth rate estimates") {
    Budget budget{500'000'000, 0};
    SECTION("free rank 2 approaches log2(3)") {
        BallTable t = ball_table(Group(GroupKind::Free, 2), 10, budget);
        GrowthEstimate e = egr_estimate(t);
        CHECK(std::abs(e.estimate - std::log2(3.0)) < 0.15);
        REQUIRE(e.limit);
        CHECK(*e.limit == Catch::Approx(std::log2(3.0)));
    }
    SECTION("abelian rank 2 decays toward zero") {
        BallTable t = ball_table(Group(GroupKind::FreeAbelian, 2), 10, budget);
        GrowthEstimate e = egr_estimate(t);
        CHECK(t.sizes[10] == 221);
        CHECK(e.estimate == Catch::Approx(std::log2(221.0) / 10.0));  // ~0.779
        for (std::size_t i = 1; i < t.log2_ratios.size(); ++i)
            CHECK(t.log2_ratios[i] < t.log2_ratios[i - 1]);
        CHECK(*e.limit == 0.0);
    }
    SECTION("free rank 1 is the odd numbers") {
        Group z(GroupKind::Free, 1);
        for (int n = 0; n <= 8; ++n) CHECK(z.ball_size(n) == 2ull * n + 1);
        CHECK(z.growth_limit() == 0.0);
    }
    SECTION("free rank 2 ratios approach the limit from above for n in [5, 12]") {
        // |S^n| = 2*3^n - 1, so the ratio is log2(3) + 1/n - o(1/n)
        BallTable t = ball_table(Group(GroupKind::Free, 2), 12, budget);
        for (int n = 5; n <= 12; ++n) {
            CHECK(t.log2_ratios[n - 1] >= std::log2(3.0));
            CHECK(t.log2_ratios[n - 1] <= std::log2(3.0) + 0.2);
            if (n > 5) CHECK(t.log2_ratios[n - 1] < t.log2_ratios[n - 2]);
        }
    }
}

TEST_CASE("homomorphism image sizes") {
    CHECK(phi_image_size(Lang::dyck(1), 3) == 7);
    CHECK(phi_image_size(Lang::dyck(2), 2) == 17);
    CHECK(phi_image_size(Lang::commutative_dyck(2), 2) == 13);
    CHECK(phi_image_size(Lang::count_diff(U'a', U'b', 2), 5) == 11);
    CHECK_THROWS_AS(phi_image_size(Lang::anbncn(), 2), InputError);

    SECTION("dyck image equals the free-group ball") {
        for (int n = 0; n <= 6; ++n)
            CHECK(phi_image_size(Lang::dyck(2), n) ==
                  Group(GroupKind::Free, 2).ball_closed_form(n));
    }
}

TEST_CASE("the gamma bound |E| |phi(F)| + 1") {
    CHECK(theorem_bound(Lang::dyck(1), 1) == 4);
    CHECK(theorem_bound(Lang::commutative_dyck(2), 2) == 14);
    CHECK(theorem_bound(Lang::count_diff(U'a', U'b', 3), 5) == 12);

    SECTION("bounds every measured gamma") {
        std::vector<Lang> langs{Lang::dyck(1), Lang::dyck(2), Lang::commutative_dyck(2),
                                Lang::count_diff(U'a', U'b', 0)};
        for (const Lang& lang : langs) {
            for (int n = 0; n <= 6; ++n) {
                INFO(lang.describe() << " n=" << n);
                CHECK(gamma_exact(lang, n, LengthMode::UpTo).gamma <= theorem_bound(lang, n));
            }
        }
    }
}
