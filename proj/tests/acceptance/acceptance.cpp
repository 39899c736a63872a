// One line per criterion: "criterion N: PASS|FAIL  detail".  Argument selects a criterion, none runs all.
#include "rootcalc/coaction.hpp"
#include "rootcalc/expr.hpp"
#include "rootcalc/golden.hpp"
#include "rootcalc/kernels.hpp"
#include "rootcalc/procedure.hpp"
#include "rootcalc/tate.hpp"

#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

using namespace rootcalc;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;
    void fail(const std::string& why) {
        pass = false;
        notes.push_back(why);
    }
    void expect(bool ok, const std::string& why) {
        if (!ok)
            fail(why);
    }
};

Outcome golden(const std::vector<GoldenCheck>& checks) {
    Outcome o;
    for (auto& c : checks) {
        o.expect(c.pass, render_check(c));
        if (c.pass)
            o.notes.push_back(c.name + " ok");
    }
    return o;
}

Outcome c1() {
    Outcome o = golden(pseries_golden(3));
    Outcome o5 = golden(pseries_golden(5));
    o.pass = o.pass && o5.pass;
    o.notes.insert(o.notes.end(), o5.notes.begin(), o5.notes.end());
    return o;
}

Outcome c2() {
    Outcome o = golden(fseries_golden(3));
    Outcome o5 = golden(fseries_golden(5));
    o.pass = o.pass && o5.pass;
    o.notes.insert(o.notes.end(), o5.notes.begin(), o5.notes.end());
    return o;
}

Outcome c3() { return golden(qseries_golden(3)); }

Outcome c4() {
    Outcome o;
    auto rep = verify_two_coordinate_p2();
    o.expect(rep.ok(), "two-coordinate report:\n" + rep.str());
    // the printed x_R^4 coefficients of both sides
    int p = 2, D = 6;
    auto FL = build_fgl(PrimeContext::make(p), Basis::Araki, D);
    HopfAlgebroid H(PrimeContext::make(p), Basis::Araki, top_log_index(p, D));
    auto FR = pushforward(FL, [&H](const GradedPoly& g) { return H.right_unit(g); });
    auto SR = formal_sum(FR, {TruncatedSeries::monomial(H.right_unit_v(1), 2, D).set_prime(p),
                              TruncatedSeries::monomial(H.right_unit_v(2), 4, D).set_prime(p)});
    auto lhs = formal_neg(FR, SR);
    GradedPoly l4 = lhs.coeff(4), r4 = -H.right_unit_v(2);
    GradedPoly want_l = parse_poly("14t2 - 4t1^3 - v1 t1^2 - 3v1^2 t1 - v2 + v1^3", p);
    GradedPoly want_r = parse_poly("14t2 + 4t1^3 - 13v1 t1^2 + 3v1^2 t1 - v2", p);
    o.expect(lhs.coeff(2) == parse_poly("2t1 - v1", p), "x_R^2 coefficient " + lhs.coeff(2).str());
    o.expect(l4 == want_l, "left x_R^4 coefficient " + l4.str());
    o.expect(r4 == want_r, "right x_R^4 coefficient " + r4.str());
    // after dropping v1^3 (v1 x_L^4 = 0 in the reduced module) the two agree mod 2
    GradedPoly d = coefficients_mod_p(l4 - r4 - GradedPoly::v(1).pow(3), p);
    o.expect(d.is_zero(), "x_R^4 difference mod 2 after the v1^3 adjustment: " + d.str());
    if (o.pass)
        o.notes.push_back("x_R^4: " + l4.str());
    return o;
}

std::optional<RootInvariantResult> root_at(const GradedPoly& a, int p, Ideal I, int D) {
    auto F = build_fgl(PrimeContext::make(p), Basis::Hazewinkel, D + p + 2);
    try {
        return e_root_invariant(a, F, D, I);
    } catch (const SeriesError&) {
        return std::nullopt;
    }
}

Outcome c5() {
    Outcome o;
    int p = 3;
    auto check = [&](const GradedPoly& a, Ideal I, int N, const GradedPoly& lead, const std::string& label) {
        std::optional<RootInvariantResult> r;
        int D = 4;
        for (; D <= 64 && !r; D += 2)
            r = root_at(a, p, I, D);
        if (!r) {
            o.fail(label + ": no nonzero image through x^64");
            return;
        }
        o.expect(r->N == N && r->leading == lead,
                 label + ": got N = " + std::to_string(r->N) + ", leading " + r->leading.str());
        auto wider = root_at(a, p, I, D + 8);
        o.expect(wider && wider->N == r->N && wider->leading == r->leading, label + ": changes when D grows");
    };
    for (int i = 1; i <= 6; ++i)
        check(GradedPoly(static_cast<long>(ipow_ll(p, i))), Ideal{0}, (p - 1) * i,
              (-GradedPoly::v(1)).pow(static_cast<unsigned>(i)), "p^" + std::to_string(i));
    for (int i = 1; i <= 5; ++i)
        check(GradedPoly::v(1).pow(static_cast<unsigned>(i)), Ideal{1}, 6 * i,
              (-GradedPoly::v(2)).pow(static_cast<unsigned>(i)), "v1^" + std::to_string(i) + " mod I1");
    if (o.pass)
        o.notes.push_back("11 root invariants stable under D + 8");
    return o;
}

Outcome c6() {
    Outcome o;
    int p = 3;
    for (auto [i, j] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {3, 1}, {3, 2}, {4, 1}}) {
        std::string tag = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
        auto r = verify_alpha_derivation(i, j, p);
        o.expect(r.ok(), tag + "\n" + r.str());
        o.expect(r.exponent == i * (p * p - p) - j * (p - 1), tag + " exponent " + std::to_string(r.exponent));
        o.expect(r.sign == ((i - j) % 2 ? -1 : 1), tag + " sign");
        o.expect(!r.leading.is_zero(), tag + " zero leading term");
    }
    if (o.pass)
        o.notes.push_back("5 derivations, every intermediate identity holds");
    return o;
}

Outcome c7() {
    Outcome o;
    int p = 3;
    HopfAlgebroid H(PrimeContext::make(p), Basis::Hazewinkel, 2);
    for (auto [i, j, n] : std::vector<std::tuple<int, int, long>>{{1, 1, 3}, {3, 3, 9}}) {
        std::string tag = i == 1 ? "beta1" : "beta{3/3}";
        GradedPoly rep = coefficients_mod_p(reduce_mod_ideal(greek_beta(H, i, j).cobar.poly, Ideal{1}, p), p);
        GradedPoly bin = coefficients_mod_p(binomial_cocycle(p, n).poly, p);
        long long deg = 4 * n;
        o.expect(is_coboundary_mod_p(H, CobarWord{2, rep - bin}, deg),
                 tag + ": representative differs from the binomial cocycle by " + (rep - bin).str());
        o.expect(!is_coboundary_mod_p(H, CobarWord{2, bin}, deg), tag + ": binomial cocycle is a coboundary");
        for (auto& [m, c] : bin.terms())
            o.expect(m.exponent(Gen::t(1, 1)) % (n / p) == 0, tag + ": term off the support " + m.str());
    }
    for (int q : {3, 5, 7})
        for (int i = 1; i < q; ++i) {
            Integer a = binomial(q, i) % q, b = binomial(static_cast<long>(q) * q, static_cast<long>(q) * i) % q;
            o.expect(a == b, "binomial congruence fails at p = " + std::to_string(q) + ", i = " + std::to_string(i));
        }
    if (o.pass)
        o.notes.push_back("cobar classes agree mod (p, coboundaries); congruences hold for p = 3, 5, 7");
    return o;
}

Outcome c8() {
    Outcome o;
    for (int p : {3, 5}) {
        auto F = build_fgl(PrimeContext::make(p), Basis::Hazewinkel, 3 * p * (p - 1) + 4);
        for (int k = 1; k <= 3 * p; ++k) {
            long c = stunted_t1_closed_form(k, p);
            o.expect(Cell::mod(c + k, p) == 0, "closed form " + std::to_string(c) + " at p = " + std::to_string(p) +
                                                    ", k = " + std::to_string(k));
            if (k == 1 || k * (p - 1) + 2 >= F.D)
                continue;
            auto row = stunted_coaction(k, F);
            const GradedPoly* e = row.coefficient_of(k - 1);
            GradedPoly engine = e ? *e : GradedPoly();
            // engine and closed form agree up to the unit -1
            o.expect(coefficients_mod_p(engine + GradedPoly(c) * GradedPoly::t(1), p).is_zero(),
                     "stunted coaction at p = " + std::to_string(p) + ", k = " + std::to_string(k) + ": " + engine.str());
        }
        int D = p * p + 2 * p + 4;
        auto G = build_fgl(PrimeContext::make(p), Basis::Hazewinkel, D);
        for (int m : {1, p - 1}) {
            int off = m * (p - 1);
            for (int r = 0; r + off + 1 < p * p - 1; ++r) {
                auto row = thom_coaction(r + off + 1, G, Ideal{2});
                const GradedPoly* got = row.coefficient_of(r + 1);
                GradedPoly want = coefficients_mod_p(
                    GradedPoly(Rational(binomial(r, m))) * (-GradedPoly::t(1)).pow(static_cast<unsigned>(m)), p);
                o.expect((got ? *got : GradedPoly()) == want, "Thom offset " + std::to_string(off) + " at r = " +
                                                                  std::to_string(r) + ", p = " + std::to_string(p));
            }
        }
    }
    if (o.pass)
        o.notes.push_back("closed form, engine coefficient (up to -1) and Thom offsets agree");
    return o;
}

Outcome c9() {
    Outcome o;
    const int p = 3, q = 4;
    auto g = ExtName::beta(p, 2) * ExtName::beta(p, 1);
    for (long k = -20; k <= 20; ++k) {
        std::string kk = std::to_string(k);
        o.expect(rule_d2(g, k * q - 1, p).fires() == (Cell::mod(k, p) != 0), "d2 gate on kq-1, k = " + kk);
        o.expect(rule_d2(g, k * q, p).fires() == (Cell::mod(k, p) != 1), "d2 gate on kq, k = " + kk);
        o.expect(rule_dq(g, k * q - 1, p).fires() == (Cell::mod(k, p) == p - 1), "dq gate on kq-1, k = " + kk);
        o.expect(rule_dq(g, k * q, p).fires() == (Cell::mod(k, p) == 0), "dq gate on kq, k = " + kk);
    }
    std::set<std::string> want, got;
    for (long k = -20; k <= 20; ++k)
        for (int i = 1; i <= 4; ++i)
            if ((k + i) % ipow_ll(p, i) == 0)
                want.insert(at(ExtName::alpha_tilde(p, i), k * q - 1, p).str());
    for (auto& c : imJ_survivors(-20, 20, 4, p))
        got.insert(c.str());
    o.expect(want == got, "imJ survivors differ from the divisibility set");
    auto acc = imJ_account(-20, 20, 4, p);
    for (auto& c : acc.unaccounted)
        o.fail("imJ class neither survivor, source nor target: " + c.str());
    int sweeps = 0;
    for (int i = 1; i <= 6; ++i)
        for (int j = 1; j <= 3 && j <= i; ++j)
            for (long k = -20; k <= 20; ++k, ++sweeps) {
                auto rep = beta_not_killed(i, j, k, p);
                if (!rep.ok())
                    o.fail("incoming differential on " + rep.target.str() + ": " + rep.incoming.front().str());
            }
    if (o.pass)
        o.notes.push_back("gates over k in [-20, 20], " + std::to_string(got.size()) + " survivors, " +
                          std::to_string(sweeps) + " beta targets clear");
    return o;
}

struct Expected {
    std::string name, cell, mark;  // empty cell: compare by name only
};

struct TableRow {
    std::string alpha, beta;
    long N;
    std::vector<Expected> rows;
};

std::vector<TableRow> table() {
    return {
        {"alpha1", "beta1", 8, {}},
        {"alpha2", "beta1^2*alpha1", 17, {}},
        {"alpha{3/2}", "beta{3/2}", 28, {}},
        {"alpha3", "beta3", 32, {{"beta2*beta1*alpha1", "-7q-1", "(2)"}}},
        {"alpha4", "beta1^5", 36, {}},
        {"alpha5",
         "beta5",
         56,
         {{"beta4*beta1*alpha1", "-13q-1", "(1)"},
          {"eta1*beta1", "-12q-1", "(1)"},
          {"eta1*beta1*alpha1", "-13q", "(1)"},
          {"beta2^2*beta1", "-11q", "(2)"},
          {"beta{3/3}*beta1^3*alpha1", "-12q-1", "(1)"},
          {"beta2*beta1^3*alpha1", "-10q-1", "(2)"},
          {"beta2*beta1^4", "-12q", "(2)"},
          {"beta1^6*alpha1", "-11q-1", "(2)"},
          {"beta1^7", "-13q", "(2)"}}},
        {"alpha{6/2}",
         "beta{6/2}",
         64,
         {{"beta2*eta1", "-15q-1", "(1)"},
          {"beta2^3/alpha1", "-13q-1", "(2)"},
          {"beta4*beta1*alpha1", "-12q-1", "(1)"},
          {"beta2^3", "-14q", "(2)"},
          {"eta1*beta1*alpha1", "-12q", "(1)"},
          {"beta2^2*beta1^2*alpha1", "-13q-1", "(2)"},
          {"beta2^2*beta1^3", "-15q", "(2)"},
          {"beta{3/3}*beta1^4", "-13q", "(2)"},
          {"beta2*beta1^5*alpha1", "-14q-1", "(2)"},
          {"beta1^7", "-12q", "(2)"},
          {"beta1^8*alpha1", "-15q-1", "(2)"}}},
        {"alpha6",
         "beta6",
         68,
         {{"eta1*beta2", "-15q-1", "(1)"},
          {"beta2^3/alpha1", "-13q-1", "(2)"},
          {"beta4*beta1*alpha1", "-12q-1", "(1)"},
          {"eta1*beta2*alpha1", "-16q", "(1)"},
          {"beta2^3", "-14q", "(2)"},
          {"eta1*beta1*alpha1", "-12q", "(1)"},
          {"eta1*beta1^3", "-16q-1", "(1)"},
          {"beta2^2*beta1^2*alpha1", "", "(2)"},
          {"beta2^2*beta1^3", "-15q", "(2)"},
          {"beta{3/3}*beta1^4", "-13q", "(1)"},
          {"beta{3/3}*beta1^5*alpha1", "-16q-1", "(2)"},
          {"beta2*beta1^5*alpha1", "-14q-1", "(2)"},
          {"beta2*beta1^6", "-16q", "(2)"},
          {"beta1^8*alpha1", "-15q-1", "(2)"}}},
    };
}

Outcome c10() {
    Outcome o;
    auto cat = Catalog::load(Catalog::default_path());
    int matched_rows = 0;
    for (auto& t : table()) {
        ProcedureInput in{cat.name(t.alpha), cat.name(t.beta), t.N, {}};
        auto l = run_procedure(in, cat);
        std::string tag = t.alpha + " row: ";
        // key machine rows by name; each name occurs once per row
        std::map<std::string, const LedgerRow*> got;
        for (auto& r : l.rows)
            got[r.candidate.name.str()] = &r;
        bool row_ok = got.size() == l.rows.size();
        std::set<std::string> seen;
        for (auto& e : t.rows) {
            std::string key = cat.name(e.name).str();
            seen.insert(key);
            auto it = got.find(key);
            if (it == got.end()) {
                o.fail(tag + "missing " + e.name + "[" + e.cell + "]");
                row_ok = false;
                continue;
            }
            const LedgerRow& r = *it->second;
            if (!e.cell.empty() && r.candidate.cell.str() != e.cell) {
                o.fail(tag + e.name + " on cell " + r.candidate.cell.str() + ", table has " + e.cell);
                row_ok = false;
            }
            if (r.mark() != e.mark) {
                o.fail(tag + r.candidate.str() + " marked " + r.mark() + ", table has " + e.mark);
                row_ok = false;
            }
        }
        for (auto& r : l.rows)
            if (!seen.count(r.candidate.name.str())) {
                o.fail(tag + "extra " + r.candidate.str() + " " + r.mark());
                row_ok = false;
            }
        if (t.alpha == "alpha3") {
            bool note = !l.rows.empty() && !l.rows[0].notes.empty() &&
                        l.rows[0].notes[0].find("Toda bracket <alpha1, p, beta3>") != std::string::npos;
            o.expect(note, tag + "crossing note missing");
            row_ok = row_ok && note;
        }
        if (t.rows.empty())
            o.expect(emit_ledger(l, LedgerFormat::Text).find("---") != std::string::npos, tag + "no dash line");
        matched_rows += row_ok;
    }
    o.notes.insert(o.notes.begin(), std::to_string(matched_rows) + "/8 rows match");
    return o;
}

Outcome c11() {
    Outcome o;
    // formal group law axioms and round trips
    for (int p : {2, 3, 5})
        for (Basis b : {Basis::Araki, Basis::Hazewinkel}) {
            int D = p * p + 3;
            std::string tag = std::string(basis_name(b)) + " p = " + std::to_string(p) + ": ";
            auto F = build_fgl(PrimeContext::make(p), b, D);
            auto mono = [&](const GradedPoly& c, int n) { return TruncatedSeries::monomial(c, n, D).set_prime(p); };
            auto x = mono(GradedPoly(1L), 1);
            auto a = x + mono(GradedPoly::t(1), p);
            auto c = mono(GradedPoly::v(1), p) + mono(GradedPoly::t(2), p * p);
            auto zero = TruncatedSeries::zero(D).set_prime(p);
            o.expect(eq_up_to(formal_sum(F, a, zero), a, D), tag + "unit law");
            o.expect(eq_up_to(formal_sum(F, a, c), formal_sum(F, c, a), D), tag + "commutativity");
            o.expect(eq_up_to(formal_sum(F, formal_sum(F, x, a), c), formal_sum(F, x, formal_sum(F, a, c)), D),
                     tag + "associativity");
            o.expect(formal_sum(F, a, formal_neg(F, a)).is_zero(), tag + "inverse");
            auto X = TruncatedSeries::variable(D);
            o.expect(eq_up_to(compose(F.log, F.exp), X, D) && eq_up_to(compose(F.exp, F.log), X, D),
                     tag + "log/exp round trip");
            auto iso = strict_iso_pair(F, D);
            o.expect(eq_up_to(compose(iso.f, iso.f_inv), X, D) && eq_up_to(compose(iso.f_inv, iso.f), X, D),
                     tag + "f/f^-1 round trip");
        }
    // rewrite confluence: 5 shuffled orders x 50 inputs
    {
        int p = 3, D = 14;
        auto F = build_fgl(PrimeContext::make(p), Basis::Hazewinkel, D + p + 2);
        std::mt19937 rng(20240611);
        std::uniform_int_distribution<int> coef(-30, 30);
        int agree = 0;
        for (int n = 0; n < 50; ++n) {
            int d = n % 5;
            GradedPoly a;
            for (int e2 = 0; 4 * e2 <= d; ++e2)
                a += GradedPoly(static_cast<long>(coef(rng))) * GradedPoly::v(2).pow(e2) * GradedPoly::v(1).pow(d - 4 * e2);
            if (a.is_zero())
                a = GradedPoly(9L);
            Ideal I{n % 2};
            auto ref = tate_normal_form(a, F, D, I);
            for (std::uint64_t s = 1; s <= 5; ++s) {
                TateOptions opt;
                opt.shuffle_seed = s * 1000003ULL + static_cast<std::uint64_t>(n);
                bool same = eq_up_to(tate_normal_form(a, F, D, I, opt).series, ref.series, D);
                agree += same;
                o.expect(same, "normal form depends on rewrite order for " + a.str());
            }
        }
        o.notes.push_back(std::to_string(agree) + "/250 shuffled normal forms agree");
    }
    // homogeneity after every series operation; parallel kernel against the serial one
    {
        int p = 3, D = 11;
        auto F = build_fgl(PrimeContext::make(p), Basis::Hazewinkel, D);
        auto f = strict_iso_pair(F, D).f, ps = p_series(F);
        std::vector<std::pair<std::string, TruncatedSeries>> outs{
            {"sum", f + ps},           {"product", f * ps},
            {"power", f.pow(3)},       {"compose", compose(f, ps)},
            {"inverse", compositional_inverse(f)}, {"reciprocal", multiplicative_inverse(ps.shifted(-1))},
            {"formal sum", formal_sum(F, f, ps)},  {"log", F.log},
        };
        for (auto& [name, s] : outs)
            o.expect(s.is_homogeneous(p), name + " is inhomogeneous");
        o.expect(multiply_with(f, ps, true).data() == multiply_with(f, ps, false).data(),
                 "parallel product differs from the serial reference");
    }
    return o;
}

const std::vector<std::function<Outcome()>> kCriteria{c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11};

bool report(int n) {
    Outcome o;
    try {
        o = kCriteria[static_cast<size_t>(n - 1)]();
    } catch (const std::exception& e) {
        o.fail(std::string("exception: ") + e.what());
    }
    std::cout << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << "\n";
    for (auto& s : o.notes)
        std::cout << "    " << s << "\n";
    return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 2) {
        std::cerr << "usage: acceptance [criterion 1-11]\n";
        return 2;
    }
    if (argc == 2) {
        int n = std::atoi(argv[1]);
        if (n < 1 || n > 11) {
            std::cerr << "criterion must be 1..11\n";
            return 2;
        }
        return report(n) ? 0 : 1;
    }
    bool all = true;
    for (int n = 1; n <= 11; ++n)
        all = report(n) && all;
    return all ? 0 : 1;
}
