#include "rootcalc/hopf.hpp"

#include <algorithm>
#include <sstream>

namespace rootcalc {

std::string CobarWord::str() const {
    if (poly.is_zero())
        return "0";
    // group each monomial as (v-part) t-slot1 | t-slot2 | ...
    std::ostringstream os;
    bool first = true;
    for (auto it = poly.terms().rbegin(); it != poly.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        std::vector<Monomial> parts(static_cast<std::size_t>(length) + 1);
        for (auto& [g, e] : m.factors()) {
            int s = g.kind == GenKind::T ? g.slot : 0;
            if (s > length)
                s = length;
            Gen h = g;
            if (g.kind == GenKind::T)
                h.slot = 1;
            parts[static_cast<std::size_t>(s)] = parts[static_cast<std::size_t>(s)] * Monomial(h, e);
        }
        Rational a = abs(c);
        os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
        first = false;
        if (a != 1 || !parts[0].is_one()) {
            if (a != 1)
                os << a.get_str();
            if (!parts[0].is_one())
                os << (a != 1 ? "*" : "") << parts[0].str();
            os << " ";
        }
        for (int s = 1; s <= length; ++s)
            os << (s > 1 ? "|" : "") << parts[static_cast<std::size_t>(s)].str();
    }
    return os.str();
}

CobarWord reduced(const CobarWord& w) {
    CobarWord r{w.length, {}};
    for (auto& [m, c] : w.poly.terms()) {
        std::vector<bool> seen(static_cast<std::size_t>(w.length) + 1, false);
        for (auto& [g, e] : m.factors())
            if (g.kind == GenKind::T && g.slot <= w.length)
                seen[g.slot] = true;
        bool all = true;
        for (int s = 1; s <= w.length; ++s)
            all = all && seen[static_cast<std::size_t>(s)];
        if (all)
            r.poly.add_term(m, c);
    }
    return r;
}

StrictIso strict_iso_pair(const FormalGroupLaw& F, int D) {
    int p = F.p();
    if (D > F.D)
        throw SeriesError("strict isomorphism requested beyond the law's truncation");
    FormalGroupLaw G = F;
    if (D < F.D) {
        G.log = F.log.truncated(D);
        G.exp = F.exp.truncated(D);
    }
    std::vector<TruncatedSeries> terms;
    long long e = 1;
    for (int i = 0; e < D; ++i, e *= p)
        terms.push_back(TruncatedSeries::monomial(GradedPoly::t(i), static_cast<int>(e), D).set_prime(p));
    StrictIso s;
    s.f_inv = formal_sum(G, terms);
    s.f = compositional_inverse(s.f_inv);
    return s;
}

GradedPoly shift_slots(const GradedPoly& g, int by, int from) {
    if (by == 0)
        return g;
    GradedPoly r;
    for (auto& [m, c] : g.terms()) {
        Monomial nm;
        for (auto& [h, e] : m.factors()) {
            Gen k = h;
            if (h.kind == GenKind::T && h.slot >= from)
                k.slot = static_cast<std::uint8_t>(h.slot + by);
            nm = nm * Monomial(k, e);
        }
        r.add_term(nm, c);
    }
    return r;
}

HopfAlgebroid::HopfAlgebroid(PrimeContext ctx, Basis basis, int top) : ctx_(ctx), basis_(basis), top_(top) {
    int p = ctx.p;
    l_ = rootcalc::log_coefficients(ctx, basis, top);
    auto lead = [&](int n) -> Rational {
        Rational a = p;
        if (basis == Basis::Araki)
            a -= Rational(ipow(p, static_cast<unsigned long>(ipow_ll(p, n))));
        return 1 / a;
    };
    auto tpow = [&](int j, long long e, int slot) { return j == 0 ? GradedPoly(1L) : GradedPoly::gen(Gen::t(j, slot), static_cast<int>(e)); };

    eta_.assign(static_cast<std::size_t>(top) + 1, GradedPoly());
    eta_[0] = GradedPoly(p);
    for (int n = 1; n <= top; ++n) {
        GradedPoly rhs;
        for (int i = 0; i <= n; ++i)
            rhs += l_[i] * tpow(n - i, ipow_ll(p, i), 1);
        Rational a = lead(n);
        GradedPoly rest = l_[n] - GradedPoly::v(n) * a;
        GradedPoly rest_r = rest.substitute([&](const Gen& g) -> std::optional<GradedPoly> {
            if (g.kind == GenKind::V)
                return eta_[g.index];
            return std::nullopt;
        });
        eta_[n] = (rhs - rest_r) * (1 / a);
        if (!eta_[n].is_p_local(p))
            throw AlgebraError("right unit of v" + std::to_string(n) + " is not p-local");
    }

    delta_.assign(static_cast<std::size_t>(top) + 1, GradedPoly());
    delta_[0] = GradedPoly(1L);
    for (int n = 1; n <= top; ++n) {
        GradedPoly acc;
        for (int m = 0; m <= n; ++m)
            for (int i = 0; i + m <= n; ++i) {
                int j = n - m - i;
                acc += l_[m] * tpow(i, ipow_ll(p, m), 1) * tpow(j, ipow_ll(p, i + m), 2);
            }
        for (int m = 1; m <= n; ++m)
            acc -= l_[m] * delta_[n - m].pow(static_cast<unsigned>(ipow_ll(p, m)));
        if (!acc.is_p_local(p))
            throw AlgebraError("coproduct of t" + std::to_string(n) + " is not p-local");
        delta_[n] = acc;
    }
}

void HopfAlgebroid::check_index(int n, const char* what) const {
    if (n < 0 || n > top_)
        throw std::out_of_range(std::string(what) + " index " + std::to_string(n) + " outside the generator window");
}

const GradedPoly& HopfAlgebroid::right_unit_v(int n) const {
    check_index(n, "right unit");
    return eta_[static_cast<std::size_t>(n)];
}

GradedPoly HopfAlgebroid::right_unit(const GradedPoly& c) const {
    return c.substitute([&](const Gen& g) -> std::optional<GradedPoly> {
        if (g.kind == GenKind::V)
            return right_unit_v(g.index);
        throw AlgebraError("right unit applied to a polynomial containing " + gen_name(g));
    });
}

const GradedPoly& HopfAlgebroid::coproduct_t(int n) const {
    check_index(n, "coproduct");
    return delta_[static_cast<std::size_t>(n)];
}

GradedPoly HopfAlgebroid::right_unit_through(int n, int k) const {
    if (k == 0)
        return GradedPoly::v(n);
    auto key = std::make_pair(n, k);
    auto it = through_.find(key);
    if (it != through_.end())
        return it->second;
    GradedPoly e = shift_slots(right_unit_v(n), k - 1);
    GradedPoly r = e.substitute([&](const Gen& g) -> std::optional<GradedPoly> {
        if (g.kind == GenKind::V)
            return right_unit_through(g.index, k - 1);
        return std::nullopt;
    });
    through_.emplace(key, r);
    return r;
}

GradedPoly HopfAlgebroid::tensor(const GradedPoly& a, int s, const GradedPoly& b) const {
    GradedPoly moved = shift_slots(b, s).substitute([&](const Gen& g) -> std::optional<GradedPoly> {
        if (g.kind == GenKind::V)
            return right_unit_through(g.index, s);
        return std::nullopt;
    });
    return a * moved;
}

GradedPoly HopfAlgebroid::coproduct(const GradedPoly& g) const { return coproduct_at(g, 1); }

GradedPoly HopfAlgebroid::coproduct_at(const GradedPoly& g, int k) const {
    return g.substitute([&](const Gen& h) -> std::optional<GradedPoly> {
        if (h.kind != GenKind::T)
            return std::nullopt;
        if (h.slot < k)
            return std::nullopt;
        if (h.slot > k)
            return GradedPoly::gen(Gen::t(h.index, h.slot + 1));
        GradedPoly d = shift_slots(coproduct_t(h.index), k - 1);
        return d.substitute([&](const Gen& x) -> std::optional<GradedPoly> {
            if (x.kind == GenKind::V)
                return right_unit_through(x.index, k - 1);
            return std::nullopt;
        });
    });
}

GradedPoly HopfAlgebroid::counit_at(const GradedPoly& g, int k) const {
    return g.substitute([&](const Gen& h) -> std::optional<GradedPoly> {
        if (h.kind != GenKind::T || h.slot < k)
            return std::nullopt;
        if (h.slot == k)
            return GradedPoly(0L);
        return GradedPoly::gen(Gen::t(h.index, h.slot - 1));
    });
}

GradedPoly HopfAlgebroid::cobar_d0(const GradedPoly& c) const {
    if (c.has_kind(GenKind::T))
        throw AlgebraError("d0 is defined on left-unit elements only");
    return right_unit(c) - c;
}

CobarWord HopfAlgebroid::cobar_d1(const GradedPoly& g) const {
    GradedPoly d = tensor(GradedPoly(1L), 1, g) - coproduct(g) + g;
    return reduced(CobarWord{2, d});
}

GreekLetter greek_alpha(const HopfAlgebroid& H, int i, int j) {
    int p = H.p();
    GradedPoly v1 = GradedPoly::v(1);
    GradedPoly num = H.right_unit_v(1).pow(static_cast<unsigned>(i)) - v1.pow(static_cast<unsigned>(i));
    GreekLetter g;
    g.kind = GreekLetter::Kind::Alpha;
    g.i = i;
    g.j = j;
    g.basis = H.basis();
    try {
        g.rep = divide_by_p_power(num, p, j);
    } catch (const NotDivisible& e) {
        throw GreekError(GreekError::Kind::PDivisibility,
                         "alpha_" + std::to_string(i) + "/" + std::to_string(j) + " does not exist: " + e.what());
    }
    g.unit_note = "defined up to a p-local unit";
    return g;
}

GreekLetter beta_tilde(const HopfAlgebroid& H, int i, int j) {
    int p = H.p();
    GradedPoly v1 = GradedPoly::v(1), v2 = GradedPoly::v(2), t1 = GradedPoly::t(1);
    GradedPoly T = t1.pow(static_cast<unsigned>(p)) - v1.pow(static_cast<unsigned>(p - 1)) * t1;
    GradedPoly num = (v2 + v1 * T).pow(static_cast<unsigned>(i)) - v2.pow(static_cast<unsigned>(i));
    GreekLetter g;
    g.kind = GreekLetter::Kind::BetaTilde;
    g.i = i;
    g.j = j;
    g.basis = H.basis();
    try {
        g.rep = divide_by_monomial(coefficients_mod_p(num, p), Monomial(Gen::v(1), j));
    } catch (const NotDivisible& e) {
        throw GreekError(GreekError::Kind::V1Divisibility, "beta-tilde_" + std::to_string(i) + "/" +
                                                              std::to_string(j) + " does not exist: " + e.what());
    }
    g.unit_note = "integral lift of a class defined modulo p";
    return g;
}

GreekLetter greek_beta(const HopfAlgebroid& H, int i, int j) {
    int p = H.p();
    if (p == 2 && i == 1 && j == 1)
        throw GreekError(GreekError::Kind::Exceptional, "at p = 2 the cochain beta-tilde_1 is alpha_2/2");
    GreekLetter tb = beta_tilde(H, i, j);
    CobarWord d = H.cobar_d1(tb.rep);
    GreekLetter g;
    g.kind = GreekLetter::Kind::Beta;
    g.i = i;
    g.j = j;
    g.basis = H.basis();
    try {
        g.cobar = CobarWord{2, divide_by_p_power(d.poly, p, 1)};
    } catch (const NotDivisible& e) {
        throw GreekError(GreekError::Kind::PDivisibility, std::string("d1(beta-tilde) is not divisible by p: ") + e.what());
    }
    g.rep = tb.rep;
    g.unit_note = "defined up to a p-local unit and coboundaries";
    return g;
}

CobarWord binomial_cocycle(int p, long n) {
    CobarWord w{2, {}};
    for (long i = 1; i < n; ++i) {
        Rational c = Rational(binomial(n, i)) / p;
        w.poly.add_term(Monomial(Gen::t(1, 1), static_cast<int>(i)) * Monomial(Gen::t(1, 2), static_cast<int>(n - i)), -c);
    }
    return w;
}

std::vector<GradedPoly> cochain_basis(const HopfAlgebroid& H, long long degree) {
    int p = H.p();
    std::vector<Gen> gens;
    for (int k = 1; k <= H.top(); ++k) {
        gens.push_back(Gen::v(k));
        gens.push_back(Gen::t(k));
    }
    std::vector<GradedPoly> out;
    std::function<void(std::size_t, long long, Monomial)> rec = [&](std::size_t idx, long long left, Monomial m) {
        if (left == 0) {
            if (m.has_kind(GenKind::T))
                out.emplace_back(m);
            return;
        }
        if (idx == gens.size() || left < 0)
            return;
        long long d = gen_degree(gens[idx], p);
        for (int e = 0; e * d <= left; ++e)
            rec(idx + 1, left - e * d, m * Monomial(gens[idx], e));
    };
    rec(0, degree, Monomial());
    return out;
}

bool is_coboundary_mod_p(const HopfAlgebroid& H, const CobarWord& w, long long degree) {
    int p = H.p();
    std::vector<GradedPoly> basis = cochain_basis(H, degree);
    std::map<Monomial, int> row;
    std::vector<GradedPoly> cols;
    for (auto& b : basis)
        cols.push_back(coefficients_mod_p(H.cobar_d1(b).poly, p));
    GradedPoly target = coefficients_mod_p(w.poly, p);
    for (auto* poly : {&target})
        for (auto& [m, c] : poly->terms())
            row.try_emplace(m, static_cast<int>(row.size()));
    for (auto& c : cols)
        for (auto& [m, a] : c.terms())
            row.try_emplace(m, static_cast<int>(row.size()));
    int R = static_cast<int>(row.size()), C = static_cast<int>(cols.size());
    // augmented matrix over F_p
    std::vector<std::vector<int>> A(static_cast<std::size_t>(R), std::vector<int>(static_cast<std::size_t>(C) + 1, 0));
    for (int k = 0; k < C; ++k)
        for (auto& [m, a] : cols[k].terms())
            A[row[m]][k] = residue_mod_p(a, p);
    for (auto& [m, a] : target.terms())
        A[row[m]][C] = residue_mod_p(a, p);
    auto inv = [p](int a) {
        for (int b = 1; b < p; ++b)
            if (a * b % p == 1)
                return b;
        return 0;
    };
    int r = 0;
    for (int c = 0; c < C && r < R; ++c) {
        int piv = -1;
        for (int i = r; i < R; ++i)
            if (A[i][c]) {
                piv = i;
                break;
            }
        if (piv < 0)
            continue;
        std::swap(A[r], A[piv]);
        int s = inv(A[r][c]);
        for (auto& x : A[r])
            x = x * s % p;
        for (int i = 0; i < R; ++i)
            if (i != r && A[i][c]) {
                int f = A[i][c];
                for (int k = 0; k <= C; ++k)
                    A[i][k] = ((A[i][k] - f * A[r][k]) % p + p) % p;
            }
        ++r;
    }
    for (int i = r; i < R; ++i)
        if (A[i][C])
            return false;
    return true;
}

}  // namespace rootcalc
