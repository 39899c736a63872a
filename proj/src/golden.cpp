#include "rootcalc/golden.hpp"

#include "rootcalc/coaction.hpp"
#include "rootcalc/hopf.hpp"

#include <sstream>

namespace rootcalc {

namespace {

TruncatedSeries mod_I(const TruncatedSeries& s, int n, int p) {
    return s.map_coeffs([&](const GradedPoly& c) { return coefficients_mod_p(reduce_mod_ideal(c, Ideal{n}, p), p); });
}

GoldenCheck compare(std::string name, TruncatedSeries expected, TruncatedSeries computed, int through) {
    GoldenCheck g{std::move(name), std::move(expected), std::move(computed), through, true, ""};
    for (int e = 0; e < through; ++e) {
        const GradedPoly& a = g.expected.coeff(e);
        const GradedPoly& b = g.computed.coeff(e);
        if (!(a == b)) {
            std::ostringstream os;
            os << "x^" << e << ": expected " << a.str() << ", computed " << b.str();
            g.detail = os.str();
            g.pass = false;
            return g;
        }
    }
    g.detail = "agrees below x^" + std::to_string(through);
    return g;
}

Rational pw(int p, int e) { return Rational(ipow(Integer(p), static_cast<unsigned long>(e))); }

GradedPoly v(int i) { return GradedPoly::v(i); }
GradedPoly t(int i) { return GradedPoly::t(i); }

}  // namespace

std::vector<GoldenCheck> pseries_golden(int p) {
    int D = p * p + 2;
    auto F = build_fgl(PrimeContext::make(p), Basis::Hazewinkel, D);
    TruncatedSeries ps = p_series(F);
    std::vector<GoldenCheck> out;

    TruncatedSeries e1 = TruncatedSeries::zero(D);
    e1.set_coeff(1, GradedPoly(static_cast<long>(p)));
    e1.set_coeff(p, (Rational(1) - pw(p, p - 1)) * v(1));
    out.push_back(compare("[p](x) = px + (1 - p^(p-1)) v1 x^p + O(x^(p+2))", e1, ps, p + 2));

    TruncatedSeries e2 = TruncatedSeries::zero(D);
    e2.set_coeff(p * p, v(2));
    out.push_back(compare("[p](x) = v2 x^(p^2) + O(x^(p^2+2)) mod I2", e2, mod_I(ps, 2, p), p * p + 2));
    return out;
}

std::vector<GoldenCheck> fseries_golden(int p) {
    int D = p * p;
    auto F = build_fgl(PrimeContext::make(p), Basis::Hazewinkel, D);
    TruncatedSeries f = strict_iso_pair(F, D).f;
    std::vector<GoldenCheck> out;

    TruncatedSeries e1 = TruncatedSeries::zero(D);
    e1.set_coeff(1, GradedPoly(1L));
    e1.set_coeff(p, -t(1));
    e1.set_coeff(2 * p - 1, Rational(p) * t(1) * t(1) + v(1) * t(1));
    out.push_back(compare("f(x) = x - t1 x^p + (p t1^2 + v1 t1) x^(2p-1) + O(x^(2p))", e1, f, 2 * p));

    TruncatedSeries e2 = TruncatedSeries::zero(D);
    e2.set_coeff(1, GradedPoly(1L));
    e2.set_coeff(p, -t(1));
    out.push_back(compare("f(x) = x - t1 x^p + O(x^(p^2)) mod I2", mod_I(e2, 2, p), mod_I(f, 2, p), p * p));
    return out;
}

std::vector<GoldenCheck> qseries_golden(int p) {
    int D = p * p;
    auto F = build_fgl(PrimeContext::make(p), Basis::Hazewinkel, D + 1);
    TruncatedSeries qs = q_series(F, D);
    std::vector<GoldenCheck> out;

    TruncatedSeries e1 = TruncatedSeries::zero(D);
    e1.set_coeff(0, GradedPoly(1L));
    e1.set_coeff(p - 1, -pw(p, p - 1) * t(1));
    Rational lin = Rational(1) - p - pw(p, p - 1) + 2 * p;
    e1.set_coeff(2 * p - 2, pw(p, p - 2) * (pw(p, p + 1) * t(1) * t(1) + lin * v(1) * t(1)));
    out.push_back(compare("f([p](x))/[p](x) through x^(2p-2), printed closed form", e1, qs, 2 * p - 1));

    TruncatedSeries e2 = TruncatedSeries::zero(D);
    e2.set_coeff(0, GradedPoly(1L));
    out.push_back(compare("f([p](x))/[p](x) = 1 + O(x^(p^2-1)) mod I2", e2, mod_I(qs, 2, p), p * p - 1));
    return out;
}

std::string render_check(const GoldenCheck& c) {
    return std::string(c.pass ? "PASS " : "FAIL ") + c.name + ": " + c.detail;
}

}  // namespace rootcalc
