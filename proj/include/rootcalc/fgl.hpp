#pragma once

#include "rootcalc/series.hpp"

#include <vector>

namespace rootcalc {

/*
 * Universal p-typical formal group law, given by its logarithm
 * log(x) = sum l_i x^{p^i}.  The l_i are kept both as symbols (log_l) and
 * re-expressed in the v_i.
 */
struct FormalGroupLaw {
    PrimeContext ctx;
    Basis basis = Basis::Araki;
    int D = 0;
    std::vector<GradedPoly> l;  // l[i] in terms of v's, l[0] = 1
    TruncatedSeries log_l;      // coefficients are the symbols l_i
    TruncatedSeries log;
    TruncatedSeries exp;

    int p() const { return ctx.p; }
};

int default_truncation(int p);
// largest i with p^i < D
int top_log_index(int p, int D);

// l_0..l_top in terms of v's from the Araki or Hazewinkel recursion
std::vector<GradedPoly> log_coefficients(PrimeContext ctx, Basis basis, int top);
FormalGroupLaw build_fgl(PrimeContext ctx, Basis basis, int D);
// the law whose log has every coefficient pushed through a ring map (used for F_R = eta_R F)
FormalGroupLaw pushforward(const FormalGroupLaw& F, const std::function<GradedPoly(const GradedPoly&)>& map);

TruncatedSeries formal_sum(const FormalGroupLaw& F, const TruncatedSeries& a, const TruncatedSeries& b);
// left-to-right F-sum of the list
TruncatedSeries formal_sum(const FormalGroupLaw& F, const std::vector<TruncatedSeries>& terms);
TruncatedSeries formal_neg(const FormalGroupLaw& F, const TruncatedSeries& a);
TruncatedSeries p_series(const FormalGroupLaw& F);
// Araki form: px +_F v_1 x^p +_F v_2 x^{p^2} +_F ..., with v_0 = p
TruncatedSeries p_series_iterated(const FormalGroupLaw& F);
// c_j = coefficient of x^{(p-1)j+1}; throws if [p](x) has a term off that grid
std::vector<GradedPoly> c_coefficients(const FormalGroupLaw& F, const TruncatedSeries& pseries);
std::vector<GradedPoly> c_coefficients(const FormalGroupLaw& F);

TruncatedSeries reduce_series_mod_ideal(const TruncatedSeries& s, Ideal I, int p);

}  // namespace rootcalc
