#include "rootcalc/fgl.hpp"

namespace rootcalc {

int default_truncation(int p) { return p * p + 2 * p; }

int top_log_index(int p, int D) {
    int i = 0;
    long long pk = 1;
    while (pk * p < D) {
        pk *= p;
        ++i;
    }
    return i;
}

namespace {

void require_local(const TruncatedSeries& s, int p, const char* what) {
    if (!s.is_p_local(p))
        throw AlgebraError(std::string(what) + " has a coefficient that is not p-local");
}

}  // namespace

std::vector<GradedPoly> log_coefficients(PrimeContext ctx, Basis basis, int top) {
    int p = ctx.p;
    auto vpow = [&](int i, long long e) -> GradedPoly {
        if (i == 0)
            return GradedPoly(Rational(ipow(p, static_cast<unsigned long>(e))));
        return GradedPoly::gen(Gen::v(i), static_cast<int>(e));
    };
    std::vector<GradedPoly> l{GradedPoly(1L)};
    for (int n = 1; n <= top; ++n) {
        GradedPoly rhs;
        for (int i = 0; i < n; ++i)
            rhs += l[i] * vpow(n - i, ipow_ll(p, i));
        Rational lead = p;
        if (basis == Basis::Araki)
            lead -= Rational(ipow(p, static_cast<unsigned long>(ipow_ll(p, n))));
        l.push_back(rhs * (1 / lead));
    }
    return l;
}

FormalGroupLaw build_fgl(PrimeContext ctx, Basis basis, int D) {
    if (D < 2)
        throw std::invalid_argument("truncation must be at least 2");
    int p = ctx.p;
    FormalGroupLaw F;
    F.ctx = ctx;
    F.basis = basis;
    F.D = D;
    int top = top_log_index(p, D);
    F.l = log_coefficients(ctx, basis, top);
    F.log_l = TruncatedSeries(1, D);
    F.log = TruncatedSeries(1, D);
    long long e = 1;
    for (int i = 0; i <= top; ++i, e *= p) {
        F.log_l.set_coeff(static_cast<int>(e), i == 0 ? GradedPoly(1L) : GradedPoly::gen(Gen::l(i)));
        F.log.set_coeff(static_cast<int>(e), F.l[i]);
    }
    F.log_l.set_prime(p);
    F.log.set_prime(p);
    F.exp = compositional_inverse(F.log);
    return F;
}

FormalGroupLaw pushforward(const FormalGroupLaw& F, const std::function<GradedPoly(const GradedPoly&)>& map) {
    FormalGroupLaw G = F;
    G.log = F.log.map_coeffs(map);
    G.exp = compositional_inverse(G.log);
    for (auto& x : G.l)
        x = map(x);
    return G;
}

TruncatedSeries formal_sum(const FormalGroupLaw& F, const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.valuation() < 1 || b.valuation() < 1)
        throw SeriesError("formal sum needs series without constant term");
    if (a.precision() != b.precision())
        throw SeriesError("formal sum of series with different truncations");
    TruncatedSeries s = compose(F.log, a) + compose(F.log, b);
    if (s.is_zero())
        return s;
    return compose(F.exp, s);
}

TruncatedSeries formal_sum(const FormalGroupLaw& F, const std::vector<TruncatedSeries>& terms) {
    if (terms.empty())
        throw SeriesError("empty formal sum");
    // sum of logs, then one exp: same value as the iterated sum
    TruncatedSeries s = compose(F.log, terms[0]);
    for (std::size_t i = 1; i < terms.size(); ++i) {
        if (terms[i].precision() != terms[0].precision())
            throw SeriesError("formal sum of series with different truncations");
        s += compose(F.log, terms[i]);
    }
    return compose(F.exp, s);
}

TruncatedSeries formal_neg(const FormalGroupLaw& F, const TruncatedSeries& a) {
    if (a.valuation() < 1)
        throw SeriesError("formal negative needs a series without constant term");
    return compose(F.exp, -compose(F.log, a));
}

TruncatedSeries p_series(const FormalGroupLaw& F) {
    TruncatedSeries ps = compose(F.exp, GradedPoly(F.p()) * F.log);
    require_local(ps, F.p(), "p-series");
    return ps;
}

TruncatedSeries p_series_iterated(const FormalGroupLaw& F) {
    int p = F.p();
    std::vector<TruncatedSeries> terms;
    terms.push_back(TruncatedSeries::monomial(GradedPoly(p), 1, F.D).set_prime(p));
    long long e = p;
    for (int i = 1; e < F.D; ++i, e *= p)
        terms.push_back(TruncatedSeries::monomial(GradedPoly::v(i), static_cast<int>(e), F.D).set_prime(p));
    return formal_sum(F, terms);
}

std::vector<GradedPoly> c_coefficients(const FormalGroupLaw& F, const TruncatedSeries& ps) {
    int p = F.p();
    std::vector<GradedPoly> c;
    for (int n = ps.low_order(); n < ps.precision(); ++n) {
        const GradedPoly& a = ps.coeff(n);
        if ((n - 1) % (p - 1) != 0) {
            if (!a.is_zero())
                throw AlgebraError("p-series has a term off the (p-1)j+1 grid at x^" + std::to_string(n));
            continue;
        }
        if (n >= 1)
            c.push_back(a);
    }
    return c;
}

std::vector<GradedPoly> c_coefficients(const FormalGroupLaw& F) { return c_coefficients(F, p_series(F)); }

TruncatedSeries reduce_series_mod_ideal(const TruncatedSeries& s, Ideal I, int p) {
    return s.map_coeffs([&](const GradedPoly& c) { return reduce_mod_ideal(c, I, p); });
}

}  // namespace rootcalc
