#include "rootcalc/coaction.hpp"

#include <algorithm>
#include <sstream>

namespace rootcalc {

const GradedPoly* CoactionRow::coefficient_of(int target) const {
    for (auto& t : terms)
        if (t.target == target)
            return &t.coefficient;
    return nullptr;
}

std::string CoactionRow::str(const std::string& gen) const {
    std::ostringstream os;
    os << "psi(" << gen << "[" << source << "]) =";
    bool first = true;
    for (auto& t : terms) {
        os << (first ? " " : " + ") << "(" << t.coefficient.str() << ") (x) " << gen << "[" << t.target << "]";
        first = false;
    }
    if (first)
        os << " 0";
    return os.str();
}

TruncatedSeries q_series(const FormalGroupLaw& F, int D) {
    if (D > F.D)
        throw SeriesError("q-series requested beyond the law's truncation");
    int p = F.p();
    TruncatedSeries f = strict_iso_pair(F, D).f;
    TruncatedSeries ps = p_series(F).truncated(D);
    TruncatedSeries q = compose(f, ps) * multiplicative_inverse(ps);
    if (!q.is_p_local(p))
        throw AlgebraError("q-series has a coefficient that is not p-local");
    if (!(q.coeff(0) == GradedPoly(1L)))
        throw AlgebraError("q-series does not start with 1");
    return q;
}

namespace {

void require_window(int k, const FormalGroupLaw& F, const char* what) {
    if (k < 1)
        throw std::invalid_argument(std::string(what) + ": generator index must be positive");
    if (k >= F.D)
        throw SeriesError(std::string(what) + ": index " + std::to_string(k) + " outside the degree window; increase D");
}

}  // namespace

CoactionRow cp_coaction(int k, const FormalGroupLaw& F) {
    require_window(k, F, "cp_coaction");
    TruncatedSeries f = strict_iso_pair(F, k + 1).f;
    CoactionRow row;
    row.source = k;
    TruncatedSeries fj = f;
    for (int j = 1; j <= k; ++j) {
        if (j > 1)
            fj = fj * f;
        GradedPoly c = fj.coeff(k);
        if (!c.is_zero())
            row.terms.push_back({c, j});
    }
    std::reverse(row.terms.begin(), row.terms.end());
    return row;
}

CoactionRow thom_coaction(int k, const FormalGroupLaw& F, Ideal I) {
    require_window(k + 1, F, "thom_coaction");
    int p = F.p();
    TruncatedSeries f = strict_iso_pair(F, k + 1).f;
    TruncatedSeries q = q_series(F, k + 2);
    CoactionRow row;
    row.source = k;
    TruncatedSeries acc = q;
    for (int j = 1; j <= k; ++j) {
        if (j > 1)
            acc = acc * f;
        GradedPoly c = acc.coeff(k - 1);
        if (I.n > 0)
            c = coefficients_mod_p(reduce_mod_ideal(c, I, p), p);
        if (!c.is_zero())
            row.terms.push_back({c, j});
    }
    std::reverse(row.terms.begin(), row.terms.end());
    return row;
}

CoactionRow thom_coaction(int k, const FormalGroupLaw& F) { return thom_coaction(k, F, Ideal{0}); }

CoactionRow stunted_coaction(int k, const FormalGroupLaw& F) {
    int p = F.p();
    if (p == 2)
        throw std::invalid_argument("stunted coaction is implemented for odd primes only");
    CoactionRow row;
    row.source = k;
    if (k < 1)
        return row;
    CoactionRow y = thom_coaction(k * (p - 1), F);
    for (auto& t : y.terms)
        if (t.target % (p - 1) == 0)
            row.terms.push_back({t.coefficient, t.target / (p - 1)});
    return row;
}

long stunted_t1_closed_form(int k, int p) { return static_cast<long>(k - 1) * (p - 1) - 1; }

std::vector<PhiTerm> phi_map(int k, const FormalGroupLaw& F, int bottom_cell) {
    int p = F.p(), q = 2 * (p - 1);
    TruncatedSeries ps = p_series(F);
    std::vector<PhiTerm> out;
    for (int i = 0;; ++i) {
        int cell = q * (k - i) - 1;
        if (cell < bottom_cell)
            break;
        int e = (p - 1) * i + 1;
        if (e >= ps.precision())
            throw SeriesError("phi_map needs c_" + std::to_string(i) + "; increase D");
        out.push_back({ps.coeff(e), cell});
    }
    return out;
}

}  // namespace rootcalc
