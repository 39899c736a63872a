#pragma once

#include "rootcalc/hopf.hpp"

#include <string>
#include <vector>

namespace rootcalc {

struct CoactionTerm {
    GradedPoly coefficient;  // in v's and t's
    int target = 0;          // generator index j
};

/*
 * psi(g_source) = sum coefficient (x) g_target.  Which family g is
 * (e_{2k} of CP^infty, y_{2k} of the Thom spectrum, e_{kq-1} of the
 * stunted complex) is fixed by the producing function.
 */
struct CoactionRow {
    int source = 0;
    std::vector<CoactionTerm> terms;  // sorted by descending target
    const GradedPoly* coefficient_of(int target) const;
    std::string str(const std::string& gen) const;
};

// f([p](x)) / [p](x); constant term 1, checked p-local
TruncatedSeries q_series(const FormalGroupLaw& F, int D);
// psi(e_{2k}): coefficient of e_{2j} is the x^k coefficient of f(x)^j
CoactionRow cp_coaction(int k, const FormalGroupLaw& F);
// psi(y_{2k}): coefficient of y_{2j} is the x^{k-1} coefficient of q(x) f(x)^{j-1}
CoactionRow thom_coaction(int k, const FormalGroupLaw& F);
// same, with coefficients reduced mod I
CoactionRow thom_coaction(int k, const FormalGroupLaw& F, Ideal I);

/*
 * psi(e_{kq-1}) on the stunted complex: e_{kq-1} is the image of
 * y_{2k(p-1)}, and only targets y_{2j(p-1)} survive the restriction to
 * the q-sparse summand.  Odd p only.
 */
CoactionRow stunted_coaction(int k, const FormalGroupLaw& F);
// the closed-form t_1 coefficient (k-1)(p-1)-1 of e_{(k-1)q-1} in psi(e_{kq-1})
long stunted_t1_closed_form(int k, int p);

struct PhiTerm {
    GradedPoly c;
    int cell = 0;  // q(k-i)-1
};
// phi(iota_{kq-1}) = sum_i c_i e_{q(k-i)-1}, stopping at the bottom cell
std::vector<PhiTerm> phi_map(int k, const FormalGroupLaw& F, int bottom_cell);

}  // namespace rootcalc
