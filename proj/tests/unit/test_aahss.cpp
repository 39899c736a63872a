#include "doctest.h"
#include "rootcalc/aahss.hpp"

#include <random>
#include <set>

using namespace rootcalc;

namespace {

const int P = 3, Q = 4;

std::vector<ExtName> sample_names() {
    auto a1 = ExtName::alpha(P, 1), b1 = ExtName::beta(P, 1), b2 = ExtName::beta(P, 2);
    std::vector<ExtName> out{ExtName::one(), b1, b2, b1 * a1, b2 * b1, b1.pow(3), ExtName::beta(P, 3, 3)};
    for (int i = 1; i <= 6; ++i)
        for (int j = 1; j <= nu(i, P) + 1; ++j)
            out.push_back(ExtName::alpha(P, i, j));
    return out;
}

bool lucas_nonzero(long r, long k, int p) {
    // binom(r, k) mod p != 0 via base-p digits
    while (r > 0 || k > 0) {
        if (k % p > r % p)
            return false;
        r /= p;
        k /= p;
    }
    return true;
}

}  // namespace

TEST_CASE("cells") {
    CHECK(Cell(-29, P).str() == "-7q-1");
    CHECK(Cell(-32, P).str() == "-8q");
    CHECK(Cell(3, P).str() == "q-1");
    CHECK(Cell(0, P).str() == "0");
    CHECK(Cell(-1, P).str() == "-1");
    CHECK(Cell(-4, P).str() == "-q");
    CHECK(Cell(4, P).str() == "q");
    CHECK_THROWS(Cell(-2, P));
    CHECK(Cell(-29, P).m() == -7);
    CHECK_FALSE(Cell(-29, P).top());
}

TEST_CASE("tri-grading") {
    auto b1 = ExtName::beta(P, 1);
    CHECK(at(b1, 5 * Q - 1, P).grading() == TriGrading{29, 10, 2});
    CHECK(at(b1, 5 * Q, P).grading() == TriGrading{30, 11, 1});
}

TEST_CASE("every record follows the arrow (k,n,s) -> (k-1, n-r, s+1)") {
    for (auto& name : sample_names())
        for (long n = -40; n <= 40; ++n) {
            long r = Cell::mod(n, Q);
            if (r != 0 && r != Q - 1)
                continue;
            for (auto& d : all_rules(at(name, n, P))) {
                auto s = d.source.grading(), t = d.target.grading();
                CAPTURE(d.str());
                CHECK(t.k == s.k - 1);
                CHECK(t.n == s.n - d.page);
                CHECK(t.s == s.s + 1);
                CHECK(d.page > 0);
            }
        }
}

TEST_CASE("rule engine is deterministic") {
    for (auto& name : sample_names())
        for (long n : {-33L, -32L, -1L, 0L, 7L, 8L}) {
            auto a = all_rules(at(name, n, P)), b = all_rules(at(name, n, P));
            REQUIRE(a.size() == b.size());
            for (size_t i = 0; i < a.size(); ++i)
                CHECK(a[i].str() == b[i].str());
        }
}

TEST_CASE("d2 gate table") {
    auto b1 = ExtName::beta(P, 1);
    for (long k = -20; k <= 20; ++k) {
        // bottom cell: coefficient (k-1)(p-1)-1 = -k mod p
        auto bot = rule_d2(b1, k * Q - 1, P);
        CHECK(bot.fires() == (Cell::mod(k, P) != 0));
        if (bot.fires()) {
            CHECK(bot.record->target == at(ExtName::alpha(P, 1) * b1, (k - 1) * Q - 1, P));
            CHECK(bot.record->valid_mod.n == 0);
        }
        auto top = rule_d2(b1, k * Q, P);
        CHECK(top.fires() == (Cell::mod(k, P) != 1));
        if (top.fires())
            CHECK(top.record->valid_mod.n == 1);
    }
    CHECK(rule_d2(b1, 5 * Q - 1, P).fires());
    CHECK(rule_d2(b1, 3 * Q - 1, P).kind == RuleResult::Kind::Vanishes);
    // top cell at k = 4 is 1 mod 3
    CHECK(rule_d2(b1, 4 * Q, P).kind == RuleResult::Kind::Vanishes);
    CHECK(rule_d2(b1, 5 * Q, P).fires());
}

TEST_CASE("binomial gate") {
    for (long r = 0; r <= 100; ++r)
        CHECK(lucas_nonzero(r, P - 1, P) == (Cell::mod(r, P) == P - 1));
    for (long r = 0; r <= 30; ++r)
        CHECK((binomial(r, P - 1) % P != 0) == (Cell::mod(r, P) == P - 1));
}

TEST_CASE("dq gate table") {
    auto a = ExtName::beta(P, 2);
    for (long k = -20; k <= 20; ++k) {
        auto bot = rule_dq(a, k * Q - 1, P);
        CHECK(bot.fires() == lucas_nonzero(k + 30 * P, P - 1, P));
        auto top = rule_dq(a, k * Q, P);
        CHECK(top.fires() == (Cell::mod(k, P) == 0));
        if (bot.fires()) {
            CHECK(bot.record->target.cell.n() == k * Q - 1 - (P - 1) * Q);
            CHECK(bot.record->valid_mod.n == 2);
            CHECK(bot.record->target.name.kind() == ExtName::Kind::Bracket);
        }
    }
    auto a1 = ExtName::alpha(P, 1);
    auto r = rule_dq(a1, 2 * Q - 1, P);
    REQUIRE(r.fires());
    CHECK(r.record->target.name == ExtName::beta(P, 1));
    CHECK(r.record->target.cell.n() == -1);
    CHECK_FALSE(rule_dq(a1, Q - 1, P).fires());
}

TEST_CASE("d2 and dq congruence classes do not conflict") {
    auto g = ExtName::beta(P, 2) * ExtName::beta(P, 1);
    for (long n = -80; n <= 80; ++n) {
        long r = Cell::mod(n, Q);
        if (r != 0 && r != Q - 1)
            continue;
        bool d2_vanishes = rule_d2(g, n, P).kind == RuleResult::Kind::Vanishes;
        bool dq_fires = rule_dq(g, n, P).fires();
        CHECK_FALSE((d2_vanishes && dq_fires));
    }
}

TEST_CASE("v_n differentials") {
    auto b1 = ExtName::beta(P, 1);
    auto r = rule_d_odd_vn(b1, 3 * Q, 1, P);
    REQUIRE(r.fires());
    CHECK(r.record->label == 5);
    CHECK(r.record->target.cell.n() == 3 * Q - 5);
    CHECK(r.record->target.name == ExtName::v(P, 1) * b1);
    CHECK(r.record->valid_mod.n == 1);
    auto r0 = rule_d_odd_vn(ExtName::one(), 2 * Q, 0, P);
    CHECK(r0.record->label == 1);
    CHECK(r0.record->target.cell.n() == 2 * Q - 1);
    CHECK(r0.record->target.name.str() == "p");
    CHECK_THROWS(rule_d_odd_vn(b1, 3 * Q - 1, 1, P));
    auto r2 = rule_d_odd_vn(b1, 8 * Q, 2, P);
    CHECK(r2.record->label == 17);
    CHECK(r2.record->page == 9);
}

TEST_CASE("image of J rules") {
    auto one = ExtName::one();
    auto r = rule_imJ(at(one, 3 * Q - 1, P));
    REQUIRE(r.fires());
    CHECK(r.record->label == 4);
    CHECK(r.record->target == at(ExtName::alpha_tilde(P, 2), Q - 1, P));
    auto d1 = rule_imJ(at(one, 2 * Q, P));
    CHECK(d1.record->label == 1);
    auto a1 = rule_imJ(at(ExtName::alpha(P, 1), 2 * Q, P));
    REQUIRE(a1.fires());
    CHECK(a1.record->label == 5);
    CHECK(a1.record->target == at(ExtName::alpha_tilde(P, 3), 0 * Q - 1, P));
    auto a32 = rule_imJ(at(ExtName::alpha(P, 3, 2), 5 * Q, P));
    CHECK(a32.record->label == 1);
    CHECK(a32.record->target == at(ExtName::alpha(P, 3, 1), 5 * Q - 1, P));
    CHECK(rule_imJ(at(ExtName::beta(P, 1), 0, P)).kind == RuleResult::Kind::NotApplicable);
}

TEST_CASE("imJ survivors are the divisibility set") {
    std::set<std::string> want;
    for (long k = -20; k <= 20; ++k)
        for (int i = 1; i <= 4; ++i)
            if ((k + i) % ipow_ll(P, i) == 0)
                want.insert(at(ExtName::alpha_tilde(P, i), k * Q - 1, P).str());
    std::set<std::string> got;
    for (auto& c : imJ_survivors(-20, 20, 4, P))
        got.insert(c.str());
    CHECK(got == want);
}

TEST_CASE("imJ accounting is complete") {
    auto acc = imJ_account(-30, 30, 4, P);
    for (auto& c : acc.unaccounted)
        CAPTURE(c.str());
    CHECK(acc.unaccounted.empty());
    for (auto& c : acc.stem_minus_one)
        CHECK(c.total_stem() == -1);
}

TEST_CASE("beta classes on top cells are not hit") {
    for (int i = 1; i <= 6; ++i)
        for (int j = 1; j <= 3 && j <= i; ++j)
            for (long k = -20; k <= 20; ++k) {
                auto rep = beta_not_killed(i, j, k, P);
                CAPTURE(rep.target.str());
                CHECK(rep.ok());
            }
    CHECK(beta_not_killed(6, 2, -16, P).ok());
}

TEST_CASE("bracket resolution") {
    auto a1 = ExtName::alpha(P, 1), b1 = ExtName::beta(P, 1), b2 = ExtName::beta(P, 2);
    CHECK(resolve_bracket(ExtName::bracket(P, a1, 2)) == b1);
    CHECK(resolve_bracket(ExtName::bracket(P, b2 * a1, 2)) == b2 * b1);
    CHECK(resolve_bracket(ExtName::bracket(P, b2, 2)).kind() == ExtName::Kind::Bracket);
}

TEST_CASE("tower classification") {
    auto a1 = ExtName::alpha(P, 1), b1 = ExtName::beta(P, 1), b2 = ExtName::beta(P, 2);
    // set 1: gamma = alpha1 lambda
    auto lam = b2, gamma = b2 * a1, mu = b2 * b1;
    long m = -7;  // -1 mod 3
    auto v = beta_tower_classify(gamma, lam, mu, TowerSet::AlphaTimesLambda, m * Q - 1, P);
    CHECK(v.kind == TowerVerdict::Kind::Supports);
    CHECK(v.record->target == at(mu, (m - P + 1) * Q - 1, P));
    m = -6;
    v = beta_tower_classify(gamma, lam, mu, TowerSet::AlphaTimesLambda, m * Q - 1, P);
    CHECK(v.kind == TowerVerdict::Kind::Killed);
    CHECK(v.record->source == at(lam, (m + 1) * Q - 1, P));
    CHECK(v.record->label == 2);
    // set 2: <lambda, alpha1, alpha1> = gamma
    auto g2 = b1.pow(2);
    auto lam2 = b1 * a1, mu2 = b1.pow(2) * a1;
    m = -11;  // 1 mod 3
    v = beta_tower_classify(g2, lam2, mu2, TowerSet::BracketOfLambda, m * Q, P);
    CHECK(v.kind == TowerVerdict::Kind::Killed);
    CHECK(v.record->source == at(lam2, (m + P - 1) * Q, P));
    CHECK(v.record->label == Q);
    v = beta_tower_classify(g2, lam2, mu2, TowerSet::None, m * Q, P);
    CHECK(v.kind == TowerVerdict::Kind::NotApplicable);
}

TEST_CASE("bifiltration regions") {
    BifiltrationRegion r({0}, {5});
    CHECK(r.member(0, 5));
    CHECK_FALSE(r.member(0, 6));
    CHECK(r.leq(r));
    CHECK_THROWS(BifiltrationRegion({0, 1}, {5}));
    CHECK_THROWS(BifiltrationRegion({1, 1}, {2, 3}));
    CHECK_THROWS(BifiltrationRegion({-1}, {2}));
}

TEST_CASE("region order agrees with a grid oracle") {
    std::mt19937 rng(42);
    auto random_region = [&rng]() {
        std::uniform_int_distribution<int> len(1, 4), step(1, 8);
        int l = len(rng);
        std::vector<long> I, J;
        long a = step(rng) - 1, b = -20 + step(rng);
        for (int i = 0; i < l; ++i) {
            I.push_back(a);
            J.push_back(b);
            a += step(rng);
            b += step(rng);
        }
        return BifiltrationRegion(I, J);
    };
    int agreements = 0;
    for (int trial = 0; trial < 300; ++trial) {
        auto A = random_region(), B = random_region();
        bool subset = true;
        for (long a = 0; a < 50 && subset; ++a)
            for (long b = -25; b < 25 && subset; ++b)
                if (A.member(a, b) && !B.member(a, b))
                    subset = false;
        CHECK(A.leq(B) == subset);
        agreements += A.leq(B) == subset;
    }
    CHECK(agreements == 300);
}
