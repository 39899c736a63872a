#pragma once

#include "rootcalc/fgl.hpp"

#include <map>
#include <string>

namespace rootcalc {

/*
 * Elements of BP_*BP^{(x)s} are polynomials whose t-generators carry their
 * tensor slot (1..s); every v sits on the far left.  A cobar cochain of
 * length s is such a polynomial.
 */
struct CobarWord {
    int length = 1;
    GradedPoly poly;

    bool operator==(const CobarWord& o) const { return length == o.length && poly == o.poly; }
    std::string str() const;
};

// drop terms in which some slot 1..length carries no t (unit summands)
CobarWord reduced(const CobarWord& w);

struct StrictIso {
    TruncatedSeries f;
    TruncatedSeries f_inv;
};

// f_inv(x) = F-sum of t_i x^{p^i}; f its compositional inverse
StrictIso strict_iso_pair(const FormalGroupLaw& F, int D);

class HopfAlgebroid {
public:
    // generators v_n, t_n for n <= top are available
    HopfAlgebroid(PrimeContext ctx, Basis basis, int top = 2);

    int p() const { return ctx_.p; }
    Basis basis() const { return basis_; }
    int top() const { return top_; }
    const std::vector<GradedPoly>& log_coefficients() const { return l_; }

    const GradedPoly& right_unit_v(int n) const;
    // ring map v_n -> eta_R(v_n) on a polynomial in v's
    GradedPoly right_unit(const GradedPoly& c) const;
    const GradedPoly& coproduct_t(int n) const;
    // Delta on a slot-1 element (v's fixed, t_n -> Delta(t_n))
    GradedPoly coproduct(const GradedPoly& g) const;
    // Delta applied to tensor slot k of a multi-slot element
    GradedPoly coproduct_at(const GradedPoly& g, int k) const;
    // counit on slot k: t's there go to 0, later slots move down
    GradedPoly counit_at(const GradedPoly& g, int k) const;

    // a (x) b where a uses slots 1..s; v's of b are moved left through a's slots
    GradedPoly tensor(const GradedPoly& a, int s, const GradedPoly& b) const;
    // image of v_n placed after slots 1..k, moved to the far left
    GradedPoly right_unit_through(int n, int k) const;

    GradedPoly cobar_d0(const GradedPoly& c) const;
    CobarWord cobar_d1(const GradedPoly& g) const;

private:
    PrimeContext ctx_;
    Basis basis_;
    int top_;
    std::vector<GradedPoly> l_;
    std::vector<GradedPoly> eta_;    // eta_[n] = eta_R(v_n)
    std::vector<GradedPoly> delta_;  // delta_[n] = Delta(t_n)
    mutable std::map<std::pair<int, int>, GradedPoly> through_;

    void check_index(int n, const char* what) const;
};

GradedPoly shift_slots(const GradedPoly& g, int by, int from = 1);

struct GreekError : AlgebraError {
    enum class Kind { PDivisibility, V1Divisibility, Exceptional };
    Kind kind;
    GreekError(Kind k, const std::string& msg) : AlgebraError(msg), kind(k) {}
};

struct GreekLetter {
    enum class Kind { Alpha, Beta, BetaTilde };
    Kind kind = Kind::Alpha;
    int i = 1, j = 1;
    Basis basis = Basis::Araki;
    GradedPoly rep;    // alpha and beta-tilde: element of BP_*BP
    CobarWord cobar;   // beta: 2-cochain
    std::string unit_note;
};

GreekLetter greek_alpha(const HopfAlgebroid& H, int i, int j);
// v_1^j division is performed modulo p, the lift keeps symmetric residues
GreekLetter beta_tilde(const HopfAlgebroid& H, int i, int j);
GreekLetter greek_beta(const HopfAlgebroid& H, int i, int j);

// -(1/p) sum_{0<i<n} binom(n,i) t_1^i | t_1^{n-i}
CobarWord binomial_cocycle(int p, long n);

// reduced 1-cochains of the given internal degree (monomials in v_k, t_k, k <= H.top(), with some t)
std::vector<GradedPoly> cochain_basis(const HopfAlgebroid& H, long long degree);
// true if w = d1(b) mod p for some integral b of the given degree
bool is_coboundary_mod_p(const HopfAlgebroid& H, const CobarWord& w, long long degree);

}  // namespace rootcalc
