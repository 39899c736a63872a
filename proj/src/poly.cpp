#include "rootcalc/poly.hpp"

#include <algorithm>
#include <sstream>

namespace rootcalc {

bool is_prime(int n) {
    if (n < 2)
        return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

PrimeContext PrimeContext::make(int p) {
    if (!is_prime(p))
        throw std::invalid_argument("not a prime: " + std::to_string(p));
    return PrimeContext{p, 2 * (p - 1)};
}

const char* basis_name(Basis b) { return b == Basis::Araki ? "araki" : "hazewinkel"; }

Basis parse_basis(const std::string& s) {
    if (s == "araki" || s == "a")
        return Basis::Araki;
    if (s == "hazewinkel" || s == "h")
        return Basis::Hazewinkel;
    throw std::invalid_argument("unknown basis: " + s);
}

Integer ipow(const Integer& b, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

long long ipow_ll(long long b, int e) {
    long long r = 1;
    while (e-- > 0)
        r *= b;
    return r;
}

Integer binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n)
        return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

int padic_valuation(const Integer& a, int p) {
    if (a == 0)
        throw std::domain_error("p-adic valuation of zero is undefined");
    Integer x = abs(a);
    int e = 0;
    while (mpz_divisible_ui_p(x.get_mpz_t(), static_cast<unsigned long>(p))) {
        mpz_divexact_ui(x.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(p));
        ++e;
    }
    return e;
}

int padic_valuation(const Rational& a, int p) {
    if (a == 0)
        throw std::domain_error("p-adic valuation of zero is undefined");
    return padic_valuation(Integer(a.get_num()), p) - padic_valuation(Integer(a.get_den()), p);
}

int nu(long long a, int p) {
    if (a == 0)
        return INT_MAX;
    if (a < 0)
        a = -a;
    int e = 0;
    while (a % p == 0) {
        a /= p;
        ++e;
    }
    return e;
}

int residue_mod_p(const Rational& a, int p) {
    Integer P = p;
    Integer num = a.get_num(), den = a.get_den();
    Integer d = den % P;
    if (d == 0)
        throw AlgebraError("coefficient is not p-local: " + a.get_str());
    Integer inv;
    mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), P.get_mpz_t());
    Integer r = (num * inv) % P;
    if (r < 0)
        r += P;
    return static_cast<int>(r.get_si());
}

int symmetric_residue(int r, int p) {
    r %= p;
    if (r < 0)
        r += p;
    return (2 * r > p) ? r - p : r;
}

long long gen_degree(const Gen& g, int p) { return 2 * (ipow_ll(p, g.index) - 1); }

std::string gen_name(const Gen& g) {
    std::string s;
    switch (g.kind) {
        case GenKind::V: s = "v"; break;
        case GenKind::T: s = "t"; break;
        case GenKind::L: s = "l"; break;
    }
    s += std::to_string(g.index);
    if (g.kind == GenKind::T && g.slot != 1)
        s += "_" + std::to_string(g.slot);
    return s;
}

Monomial::Monomial(Gen g, int e) {
    if (e != 0)
        f_.emplace_back(g, e);
}

void Monomial::normalize() {
    std::sort(f_.begin(), f_.end(), [](const Factor& a, const Factor& b) { return a.first < b.first; });
    std::vector<Factor> out;
    for (auto& [g, e] : f_) {
        if (!out.empty() && out.back().first == g)
            out.back().second += e;
        else
            out.emplace_back(g, e);
        if (out.back().second == 0)
            out.pop_back();
    }
    f_ = std::move(out);
}

int Monomial::exponent(const Gen& g) const {
    for (auto& [h, e] : f_)
        if (h == g)
            return e;
    return 0;
}

long long Monomial::degree(int p) const {
    long long d = 0;
    for (auto& [g, e] : f_)
        d += e * gen_degree(g, p);
    return d;
}

bool Monomial::has_kind(GenKind k) const {
    return std::any_of(f_.begin(), f_.end(), [k](const Factor& x) { return x.first.kind == k; });
}

bool Monomial::has_negative() const {
    return std::any_of(f_.begin(), f_.end(), [](const Factor& x) { return x.second < 0; });
}

int Monomial::max_slot() const {
    int s = 0;
    for (auto& [g, e] : f_)
        if (g.kind == GenKind::T)
            s = std::max<int>(s, g.slot);
    return s;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    r.f_.reserve(f_.size() + o.f_.size());
    auto a = f_.begin(), b = o.f_.begin();
    while (a != f_.end() || b != o.f_.end()) {
        if (b == o.f_.end() || (a != f_.end() && a->first < b->first)) {
            r.f_.push_back(*a++);
        } else if (a == f_.end() || b->first < a->first) {
            r.f_.push_back(*b++);
        } else {
            int e = a->second + b->second;
            if (e != 0)
                r.f_.emplace_back(a->first, e);
            ++a;
            ++b;
        }
    }
    return r;
}

Monomial Monomial::pow(int e) const {
    Monomial r;
    if (e == 0)
        return r;
    r.f_ = f_;
    for (auto& x : r.f_)
        x.second *= e;
    return r;
}

Monomial Monomial::divide(const Monomial& o) const { return *this * o.pow(-1); }

bool Monomial::divides(const Monomial& o) const {
    for (auto& [g, e] : f_)
        if (o.exponent(g) < e)
            return false;
    return true;
}

std::string Monomial::str() const {
    if (f_.empty())
        return "1";
    std::string s;
    for (auto& [g, e] : f_) {
        if (!s.empty())
            s += "*";
        s += gen_name(g);
        if (e != 1)
            s += "^" + std::to_string(e);
    }
    return s;
}

GradedPoly::GradedPoly(long c) {
    if (c != 0)
        terms_.emplace(Monomial(), Rational(c));
}

GradedPoly::GradedPoly(const Rational& c) {
    if (c != 0)
        terms_.emplace(Monomial(), c);
}

GradedPoly::GradedPoly(const Monomial& m, const Rational& c) {
    if (c != 0)
        terms_.emplace(m, c);
}

bool GradedPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational GradedPoly::constant_term() const { return coeff(Monomial()); }

Rational GradedPoly::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<long long> GradedPoly::degree(int p) const {
    std::optional<long long> d;
    for (auto& [m, c] : terms_) {
        long long e = m.degree(p);
        if (d && *d != e)
            return std::nullopt;
        d = e;
    }
    return d;
}

bool GradedPoly::is_homogeneous(int p) const { return is_zero() || degree(p).has_value(); }

void GradedPoly::add_term(const Monomial& m, const Rational& c) {
    if (c == 0)
        return;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

GradedPoly& GradedPoly::operator+=(const GradedPoly& o) {
    for (auto& [m, c] : o.terms_)
        add_term(m, c);
    return *this;
}

GradedPoly& GradedPoly::operator-=(const GradedPoly& o) {
    for (auto& [m, c] : o.terms_)
        add_term(m, -c);
    return *this;
}

GradedPoly operator*(const GradedPoly& a, const GradedPoly& b) {
    GradedPoly r;
    for (auto& [ma, ca] : a.terms_)
        for (auto& [mb, cb] : b.terms_)
            r.add_term(ma * mb, ca * cb);
    return r;
}

GradedPoly& GradedPoly::operator*=(const GradedPoly& o) { return *this = *this * o; }

GradedPoly& GradedPoly::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& kv : terms_)
        kv.second *= c;
    return *this;
}

GradedPoly GradedPoly::operator-() const {
    GradedPoly r = *this;
    for (auto& kv : r.terms_)
        kv.second = -kv.second;
    return r;
}

GradedPoly GradedPoly::pow(unsigned e) const {
    GradedPoly result(1L), base = *this;
    while (e) {
        if (e & 1u)
            result *= base;
        e >>= 1;
        if (e)
            base *= base;
    }
    return result;
}

bool GradedPoly::is_p_local(int p) const {
    for (auto& [m, c] : terms_)
        if (mpz_divisible_ui_p(c.get_den_mpz_t(), static_cast<unsigned long>(p)))
            return false;
    return true;
}

bool GradedPoly::has_kind(GenKind k) const {
    for (auto& [m, c] : terms_)
        if (m.has_kind(k))
            return true;
    return false;
}

GradedPoly GradedPoly::substitute(const std::function<std::optional<GradedPoly>(const Gen&)>& map) const {
    std::map<std::pair<Gen, int>, GradedPoly> cache;
    auto power = [&](const Gen& g, int e) -> GradedPoly {
        auto key = std::make_pair(g, e);
        auto it = cache.find(key);
        if (it != cache.end())
            return it->second;
        auto img = map(g);
        GradedPoly r;
        if (!img) {
            r = GradedPoly(Monomial(g, e));
        } else {
            if (e < 0)
                throw AlgebraError("cannot substitute into a negative power of " + gen_name(g));
            r = img->pow(static_cast<unsigned>(e));
        }
        cache.emplace(key, r);
        return r;
    };
    GradedPoly out;
    for (auto& [m, c] : terms_) {
        GradedPoly term(c);
        for (auto& [g, e] : m.factors())
            term = term * power(g, e);
        out += term;
    }
    return out;
}

std::string GradedPoly::str() const {
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    // print in decreasing monomial order so constants come last
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        Rational a = abs(c);
        bool neg = c < 0;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        if (m.is_one()) {
            os << a.get_str();
        } else {
            if (a != 1)
                os << a.get_str() << "*";
            os << m.str();
        }
    }
    return os.str();
}

GradedPoly reduce_mod_ideal(const GradedPoly& f, Ideal I, int p) {
    if (I.n <= 0)
        return f;
    GradedPoly r;
    for (auto& [m, c] : f.terms()) {
        if (padic_valuation(c, p) >= 1)
            continue;
        bool killed = false;
        for (auto& [g, e] : m.factors())
            if (g.kind == GenKind::V && g.index < I.n && e > 0)
                killed = true;
        if (!killed)
            r.add_term(m, c);
    }
    return r;
}

PPartSplit p_part_split(const GradedPoly& f, int p) {
    PPartSplit s;
    for (auto& [m, c] : f.terms()) {
        if (padic_valuation(c, p) >= 1)
            s.cofactor.add_term(m, c / p);
        else
            s.unit_part.add_term(m, c);
    }
    return s;
}

GradedPoly divide_by_p_power(const GradedPoly& f, int p, int j) {
    Rational d = Rational(ipow(p, static_cast<unsigned long>(j)));
    GradedPoly r;
    for (auto& [m, c] : f.terms()) {
        if (padic_valuation(c, p) < j)
            throw NotDivisible("coefficient " + c.get_str() + " of " + m.str() + " is not divisible by " +
                               std::to_string(p) + "^" + std::to_string(j));
        r.add_term(m, c / d);
    }
    return r;
}

GradedPoly divide_by_monomial(const GradedPoly& f, const Monomial& m) {
    GradedPoly r;
    for (auto& [mm, c] : f.terms()) {
        Monomial qm = mm.divide(m);
        if (qm.has_negative())
            throw NotDivisible("term " + mm.str() + " is not divisible by " + m.str());
        r.add_term(qm, c);
    }
    return r;
}

GradedPoly coefficients_mod_p(const GradedPoly& f, int p) {
    GradedPoly r;
    for (auto& [m, c] : f.terms()) {
        int s = symmetric_residue(residue_mod_p(c, p), p);
        if (s != 0)
            r.add_term(m, s);
    }
    return r;
}

}  // namespace rootcalc
