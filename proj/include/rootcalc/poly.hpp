#pragma once

#include <gmpxx.h>

#include <climits>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rootcalc {

using Rational = mpq_class;
using Integer = mpz_class;

struct AlgebraError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* raised by exact division when the divisor does not divide */
struct NotDivisible : AlgebraError {
    using AlgebraError::AlgebraError;
};

struct PrimeContext {
    int p = 3;
    int q = 4;

    static PrimeContext make(int p);
};

bool is_prime(int n);

enum class Basis { Araki, Hazewinkel };
const char* basis_name(Basis b);
Basis parse_basis(const std::string& s);

/* I_n = (p, v_1, ..., v_{n-1}); n = 0 means no reduction */
struct Ideal {
    int n = 0;
};

Integer ipow(const Integer& b, unsigned long e);
long long ipow_ll(long long b, int e);
Integer binomial(long n, long k);

int padic_valuation(const Integer& a, int p);
int padic_valuation(const Rational& a, int p);
// nu_p of an integer, INT_MAX for zero
int nu(long long a, int p);

/* residue of a p-local rational in [0, p) */
int residue_mod_p(const Rational& a, int p);
int symmetric_residue(int r, int p);

enum class GenKind : std::uint8_t { V = 0, T = 1, L = 2 };

/* slot is the tensor position of a t generator (1 for BP_*BP itself) */
struct Gen {
    GenKind kind = GenKind::V;
    std::uint8_t slot = 0;
    std::uint16_t index = 1;

    static Gen v(int i) { return {GenKind::V, 0, static_cast<std::uint16_t>(i)}; }
    static Gen t(int i, int slot = 1) {
        return {GenKind::T, static_cast<std::uint8_t>(slot), static_cast<std::uint16_t>(i)};
    }
    static Gen l(int i) { return {GenKind::L, 0, static_cast<std::uint16_t>(i)}; }

    auto operator<=>(const Gen&) const = default;
    bool operator==(const Gen&) const = default;
};

long long gen_degree(const Gen& g, int p);
std::string gen_name(const Gen& g);

class Monomial {
public:
    using Factor = std::pair<Gen, int>;

    Monomial() = default;
    explicit Monomial(Gen g, int e = 1);

    const std::vector<Factor>& factors() const { return f_; }
    bool is_one() const { return f_.empty(); }
    int exponent(const Gen& g) const;
    long long degree(int p) const;
    bool has_kind(GenKind k) const;
    bool has_negative() const;
    int max_slot() const;

    Monomial operator*(const Monomial& o) const;
    Monomial pow(int e) const;
    // quotient, exponents may go negative
    Monomial divide(const Monomial& o) const;
    bool divides(const Monomial& o) const;

    std::string str() const;

    auto operator<=>(const Monomial&) const = default;
    bool operator==(const Monomial&) const = default;

private:
    std::vector<Factor> f_;
    void normalize();
};

class GradedPoly {
public:
    using Terms = std::map<Monomial, Rational>;

    GradedPoly() = default;
    GradedPoly(long c);  // NOLINT
    GradedPoly(const Rational& c);  // NOLINT
    GradedPoly(const Monomial& m, const Rational& c = 1);
    static GradedPoly gen(Gen g, int e = 1) { return GradedPoly(Monomial(g, e)); }
    static GradedPoly v(int i) { return i == 0 ? GradedPoly(0L) : gen(Gen::v(i)); }
    static GradedPoly t(int i, int slot = 1) { return i == 0 ? GradedPoly(1L) : gen(Gen::t(i, slot)); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    bool is_constant() const;
    Rational constant_term() const;
    Rational coeff(const Monomial& m) const;

    // common degree of all terms, nullopt when inhomogeneous; zero poly has no degree
    std::optional<long long> degree(int p) const;
    bool is_homogeneous(int p) const;

    GradedPoly& operator+=(const GradedPoly& o);
    GradedPoly& operator-=(const GradedPoly& o);
    GradedPoly& operator*=(const GradedPoly& o);
    GradedPoly& operator*=(const Rational& c);
    GradedPoly operator-() const;
    friend GradedPoly operator+(GradedPoly a, const GradedPoly& b) { return a += b; }
    friend GradedPoly operator-(GradedPoly a, const GradedPoly& b) { return a -= b; }
    friend GradedPoly operator*(const GradedPoly& a, const GradedPoly& b);
    friend GradedPoly operator*(GradedPoly a, const Rational& c) { return a *= c; }
    friend GradedPoly operator*(const Rational& c, GradedPoly a) { return a *= c; }
    bool operator==(const GradedPoly& o) const { return terms_ == o.terms_; }

    GradedPoly pow(unsigned e) const;

    void add_term(const Monomial& m, const Rational& c);

    bool is_p_local(int p) const;
    bool has_kind(GenKind k) const;

    /* ring map sending each generator to a polynomial */
    GradedPoly substitute(const std::function<std::optional<GradedPoly>(const Gen&)>& map) const;

    std::string str() const;

private:
    Terms terms_;
};

GradedPoly reduce_mod_ideal(const GradedPoly& f, Ideal I, int p);

struct PPartSplit {
    GradedPoly unit_part;
    GradedPoly cofactor;
};
PPartSplit p_part_split(const GradedPoly& f, int p);

// f / p^j, throws NotDivisible if some coefficient has nu_p < j
GradedPoly divide_by_p_power(const GradedPoly& f, int p, int j);
// f / m for a monomial m; throws NotDivisible unless every quotient has non-negative exponents
GradedPoly divide_by_monomial(const GradedPoly& f, const Monomial& m);
// every coefficient replaced by its symmetric residue mod p (terms vanishing mod p dropped)
GradedPoly coefficients_mod_p(const GradedPoly& f, int p);

}  // namespace rootcalc
