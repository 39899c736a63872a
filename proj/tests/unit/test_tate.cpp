#include "doctest.h"
#include "rootcalc/tate.hpp"

#include <random>

using namespace rootcalc;

namespace {

// homogeneous constant of degree 4d in v1, v2 with coefficients that are often divisible by 3
GradedPoly random_constant(std::mt19937& rng, int d) {
    std::uniform_int_distribution<int> c(-30, 30);
    GradedPoly out;
    for (int e2 = 0; 4 * e2 <= d; ++e2)
        out += GradedPoly(static_cast<long>(c(rng))) * GradedPoly::v(2).pow(e2) * GradedPoly::v(1).pow(d - 4 * e2);
    if (out.is_zero())
        out = GradedPoly(9L) * GradedPoly::v(1).pow(d);
    return out;
}

}  // namespace

TEST_CASE("normal form is reduced and idempotent") {
    int p = 3, D = 14;
    auto F = build_fgl(PrimeContext::make(p), Basis::Hazewinkel, D + p + 2);
    std::mt19937 rng(1);
    for (int trial = 0; trial < 20; ++trial) {
        for (Ideal I : {Ideal{0}, Ideal{1}}) {
            auto a = random_constant(rng, trial % 4);
            auto t = tate_normal_form(a, F, D, I);
            CHECK(is_normal(t, p));
            auto again = tate_normal_form(t.series, F, I);
            CHECK(eq_up_to(again.series, t.series, D));
        }
    }
}

TEST_CASE("rewrite confluence under shuffled orders") {
    int p = 3, D = 14;
    auto F = build_fgl(PrimeContext::make(p), Basis::Hazewinkel, D + p + 2);
    std::mt19937 rng(77);
    for (int n = 0; n < 50; ++n) {
        Ideal I{n % 2};
        auto a = random_constant(rng, n % 5);
        auto ref = tate_normal_form(a, F, D, I);
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            TateOptions opt;
            opt.shuffle_seed = seed * 7919 + static_cast<std::uint64_t>(n);
            auto alt = tate_normal_form(a, F, D, I, opt);
            CHECK(eq_up_to(alt.series, ref.series, D));
        }
    }
}

TEST_CASE("root invariants of p powers") {
    int p = 3;
    for (int i = 1; i <= 4; ++i) {
        int D = 2 * i + 4;
        auto F = build_fgl(PrimeContext::make(p), Basis::Hazewinkel, D + p + 2);
        auto r = e_root_invariant(GradedPoly(static_cast<long>(ipow_ll(p, i))), F, D, Ideal{0});
        CHECK(r.N == (p - 1) * i);
        CHECK(r.leading == (-GradedPoly::v(1)).pow(static_cast<unsigned>(i)));
        CHECK(r.indeterminacy == "p BP_*");
    }
}

TEST_CASE("root invariant of 1 is in filtration zero") {
    auto F = build_fgl(PrimeContext::make(3), Basis::Hazewinkel, 10);
    auto r = e_root_invariant(GradedPoly(1L), F, 5, Ideal{0});
    CHECK(r.N == 0);
    CHECK(r.leading == GradedPoly(1L));
}

TEST_CASE("vanishing image asks for more truncation") {
    auto F = build_fgl(PrimeContext::make(3), Basis::Hazewinkel, 12);
    CHECK_THROWS_AS(e_root_invariant(GradedPoly(81L), F, 4, Ideal{0}), SeriesError);
}

TEST_CASE("undersized law is rejected") {
    auto F = build_fgl(PrimeContext::make(3), Basis::Hazewinkel, 6);
    CHECK_THROWS_AS(tate_normal_form(GradedPoly(3L), F, 20, Ideal{0}), SeriesError);
}

TEST_CASE("coordinate change round trip") {
    int D = 8;
    auto F = build_fgl(PrimeContext::make(3), Basis::Araki, D);
    auto x = TruncatedSeries::variable(D, Var::XR).set_prime(3);
    auto s = x.pow(2) + GradedPoly::t(1) * x.pow(4);
    auto there = coordinate_change(s.with_var(Var::XL), F);
    auto back = coordinate_change_inverse(there, F);
    CHECK(eq_up_to(back.with_var(Var::XL), s.with_var(Var::XL), D));
}

TEST_CASE("reduced module helpers") {
    GradedPoly a = GradedPoly::v(1) + GradedPoly::v(1) * GradedPoly::t(1);
    CHECK(reduce_tilde(a) == GradedPoly::v(1) * GradedPoly::t(1));
    CHECK(localize(GradedPoly::v(1).pow(3), 2) == GradedPoly::v(1));
}

TEST_CASE("greek letter derivations") {
    for (auto [i, j] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}}) {
        auto r = verify_alpha_derivation(i, j, 3);
        CAPTURE(r.str());
        CHECK(r.ok());
        CHECK(r.exponent == i * 6 - j * 2);
    }
    CHECK_THROWS_AS(verify_alpha_derivation(1, 2, 3), GreekError);
    CHECK_THROWS_AS(verify_alpha_derivation(1, 1, 3, 4), SeriesError);
}
