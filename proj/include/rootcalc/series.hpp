#pragma once

#include "rootcalc/poly.hpp"

#include <functional>
#include <vector>

namespace rootcalc {

enum class Var { X, XL, XR };
const char* var_name(Var v);

struct SeriesError : AlgebraError {
    using AlgebraError::AlgebraError;
};

/*
 * Sum of c_n x^n for low <= n < D.  Everything from x^D on is unknown, so
 * the truncation is part of the value and every operation reports the
 * order through which its result is guaranteed.
 */
class TruncatedSeries {
public:
    TruncatedSeries() = default;
    TruncatedSeries(int low, int D, Var var = Var::X);

    static TruncatedSeries zero(int D, Var var = Var::X) { return TruncatedSeries(0, D, var); }
    static TruncatedSeries constant(const GradedPoly& c, int D, Var var = Var::X);
    static TruncatedSeries monomial(const GradedPoly& c, int n, int D, Var var = Var::X);
    static TruncatedSeries variable(int D, Var var = Var::X) { return monomial(GradedPoly(1L), 1, D, var); }

    Var var() const { return var_; }
    int low_order() const { return low_; }
    int precision() const { return D_; }
    // lowest exponent with a nonzero coefficient, or D when none is known
    int valuation() const;

    const GradedPoly& coeff(int n) const;
    void set_coeff(int n, GradedPoly c);
    void add_to_coeff(int n, const GradedPoly& c);

    TruncatedSeries truncated(int D) const;
    TruncatedSeries with_var(Var v) const;
    TruncatedSeries shifted(int k) const;  // times x^k
    TruncatedSeries map_coeffs(const std::function<GradedPoly(const GradedPoly&)>& fn) const;

    TruncatedSeries operator-() const;
    TruncatedSeries& operator+=(const TruncatedSeries& o);
    TruncatedSeries& operator-=(const TruncatedSeries& o);
    friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
    friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator*(const GradedPoly& c, const TruncatedSeries& a);
    TruncatedSeries pow(unsigned e) const;

    bool is_zero() const;
    // the total degree shared by every term (|x| = -2), nullopt if inhomogeneous or zero
    std::optional<long long> homogeneous_degree(int p) const;
    bool is_homogeneous(int p) const;
    bool is_p_local(int p) const;

    std::string str(int max_terms = 1000) const;

    // prime used for degree bookkeeping, 0 when unknown; propagated by operations
    int prime() const { return p_; }
    TruncatedSeries& set_prime(int p) {
        p_ = p;
        return *this;
    }

    // raw storage, index 0 is exponent low_order()
    const std::vector<GradedPoly>& data() const { return c_; }

private:
    Var var_ = Var::X;
    int low_ = 0;
    int D_ = 0;
    int p_ = 0;
    std::vector<GradedPoly> c_;

    friend TruncatedSeries multiply_with(const TruncatedSeries&, const TruncatedSeries&, bool);
};

// series product using either the OpenMP kernel or the serial reference
TruncatedSeries multiply_with(const TruncatedSeries& a, const TruncatedSeries& b, bool parallel);

TruncatedSeries derivative(const TruncatedSeries& f);
TruncatedSeries compose(const TruncatedSeries& f, const TruncatedSeries& g);
TruncatedSeries compositional_inverse(const TruncatedSeries& f);
TruncatedSeries multiplicative_inverse(const TruncatedSeries& f);
bool eq_up_to(const TruncatedSeries& f, const TruncatedSeries& g, int n);

/* homogeneity guard run after series operations when checks are compiled in */
void check_homogeneity(const TruncatedSeries& out, const char* op);

}  // namespace rootcalc
