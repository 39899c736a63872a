#pragma once

#include "rootcalc/hopf.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rootcalc {

/*
 * Element of E_*((x))/([p](x)) for E = BP or BP/I_n.  In normal form the
 * coefficients are reduced: mod I_0 every rational coefficient is a
 * symmetric residue mod p (the rest was rewritten upward through
 * p = -sum_{j>=1} c_j x^{(p-1)j}); mod I_n no coefficient contains v_n.
 */
struct TateElement {
    TruncatedSeries series;
    Ideal ideal;
    bool normal_form = false;
};

struct TateOptions {
    // shuffle rewrite sites inside each independent batch (confluence testing)
    std::optional<std::uint64_t> shuffle_seed;
};

TateElement tate_normal_form(const GradedPoly& a, const FormalGroupLaw& F, int D, Ideal I, const TateOptions& opt = {});
TateElement tate_normal_form(const TruncatedSeries& s, const FormalGroupLaw& F, Ideal I, const TateOptions& opt = {});
bool is_normal(const TateElement& e, int p);

struct RootInvariantResult {
    int N = 0;
    GradedPoly leading;
    std::string indeterminacy;  // "p BP_*" or "(p, v_1, ...) + v_n BP_*" style tag
};

// throws SeriesError("... increase D") when the image vanishes through D
RootInvariantResult e_root_invariant(const GradedPoly& a, const FormalGroupLaw& F, int D, Ideal I);

// x_L expressed in x_R: x_L = x_R +_{F_L} t_1 x_R^p +_{F_L} ...
TruncatedSeries coordinate_change(const TruncatedSeries& s, const FormalGroupLaw& F);
TruncatedSeries coordinate_change_inverse(const TruncatedSeries& s, const FormalGroupLaw& F);

// drop monomials without any t (image in the reduced comodule)
GradedPoly reduce_tilde(const GradedPoly& a);
// a / v_1^k with negative exponents allowed
GradedPoly localize(const GradedPoly& a, int k);

struct DerivationStep {
    std::string label;
    bool ok = false;
    std::string detail;
};

struct AlphaDerivationReport {
    int p = 0, i = 0, j = 0;
    int exponent = 0;   // i(p^2-p) - j(p-1)
    int sign = 1;       // (-1)^{i-j}
    GradedPoly leading; // (-1)^{i-j} beta-tilde_{i/j}
    std::vector<DerivationStep> steps;
    std::vector<std::string> flags;
    bool ok() const;
    std::string str() const;
};

AlphaDerivationReport verify_alpha_derivation(int i, int j, int p, int D = 0);
// p = 2: [-1]_{F_R}(eta_R(v_1) x^2 +_{F_R} eta_R(v_2) x^4 + ...) against -eta_R(v_1)x^2 - eta_R(v_2)x^4
AlphaDerivationReport verify_two_coordinate_p2();

}  // namespace rootcalc
