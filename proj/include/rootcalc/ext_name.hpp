#pragma once

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

namespace rootcalc {

struct NameError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/*
 * Indecomposable named element of Ext_{BP_*BP}(BP_*, BP_*):
 * alpha_{i/j}, beta_{i/j}, or an opaque catalog label (eta1, v1, p, ...)
 * whose grading is supplied by whoever creates it.
 */
struct Atom {
    enum class Kind { Alpha, Beta, Opaque };
    Kind kind = Kind::Opaque;
    int i = 0, j = 0;
    std::string label;
    long stem = 0;
    int filtration = 0;

    bool operator==(const Atom& o) const;
    std::strong_ordering operator<=>(const Atom& o) const;
    std::string str() const;
    std::string tex() const;
};

/*
 * Monomial in atoms (negative exponents allowed for quotients like
 * beta_2^3/alpha_1), or a Massey product <base, alpha_1, ..., alpha_1>.
 */
class ExtName {
public:
    enum class Kind { One, Alpha, Beta, Opaque, Product, Bracket };

    ExtName() = default;  // One
    static ExtName one() { return {}; }
    // i-th alpha with divisibility j; needs 1 <= j <= nu_p(i) + 1
    static ExtName alpha(int p, int i, int j = 1);
    static ExtName alpha_tilde(int p, int i);
    // beta_{i/j}; existence needs j <= i (and j <= p^n + p^{n-1} - 1 when p^n | i, not checked beyond j <= i)
    static ExtName beta(int p, int i, int j = 1);
    static ExtName opaque(const std::string& label, long stem, int filtration);
    static ExtName v(int p, int n);
    static ExtName bracket(int p, const ExtName& base, int alpha1_count);

    Kind kind() const;
    int prime() const { return p_; }
    long stem() const;
    int filtration() const;
    const std::map<Atom, int>& factors() const { return f_; }
    const ExtName* bracket_base() const { return base_.get(); }
    int bracket_count() const { return count_; }

    ExtName operator*(const ExtName& o) const;
    ExtName pow(int e) const;
    // divide by o (exponents may go negative)
    ExtName operator/(const ExtName& o) const;
    int exponent(const Atom& a) const;
    bool has_factor(const ExtName& atom) const;

    bool operator==(const ExtName& o) const;
    std::string str() const;
    std::string tex() const;

private:
    int p_ = 0;
    std::map<Atom, int> f_;
    std::shared_ptr<const ExtName> base_;
    int count_ = 0;

    static ExtName from_atom(int p, Atom a);
};

long alpha_stem(int p, int i);
long beta_stem(int p, int i, int j);

}  // namespace rootcalc
