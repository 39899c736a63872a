#include "rootcalc/series.hpp"

#include "rootcalc/kernels.hpp"

#include <algorithm>
#include <sstream>

namespace rootcalc {

const char* var_name(Var v) {
    switch (v) {
        case Var::X: return "x";
        case Var::XL: return "x_L";
        case Var::XR: return "x_R";
    }
    return "x";
}

namespace {

const GradedPoly& zero_poly() {
    static const GradedPoly z;
    return z;
}

int merge_prime(int a, int b) {
    if (a && b && a != b)
        throw SeriesError("series built over different primes");
    return a ? a : b;
}

void same_var(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.var() != b.var())
        throw SeriesError(std::string("variable mismatch: ") + var_name(a.var()) + " vs " + var_name(b.var()));
}

#ifdef ROOTCALC_CHECKS
void guard(const TruncatedSeries& out, std::initializer_list<const TruncatedSeries*> in, const char* op) {
    int p = out.prime();
    if (!p)
        return;
    for (auto* s : in)
        if (!s->is_homogeneous(p))
            return;
    check_homogeneity(out, op);
}
#else
void guard(const TruncatedSeries&, std::initializer_list<const TruncatedSeries*>, const char*) {}
#endif

}  // namespace

void check_homogeneity(const TruncatedSeries& out, const char* op) {
    if (out.prime() && !out.is_homogeneous(out.prime()))
        throw SeriesError(std::string("inhomogeneous result from ") + op);
}

TruncatedSeries::TruncatedSeries(int low, int D, Var var) : var_(var), low_(low), D_(D) {
    if (D > low)
        c_.resize(static_cast<std::size_t>(D - low));
}

TruncatedSeries TruncatedSeries::constant(const GradedPoly& c, int D, Var var) { return monomial(c, 0, D, var); }

TruncatedSeries TruncatedSeries::monomial(const GradedPoly& c, int n, int D, Var var) {
    TruncatedSeries s(std::min(n, D), D, var);
    if (n < D)
        s.set_coeff(n, c);
    return s;
}

int TruncatedSeries::valuation() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (!c_[i].is_zero())
            return low_ + static_cast<int>(i);
    return D_;
}

const GradedPoly& TruncatedSeries::coeff(int n) const {
    if (n >= D_)
        throw SeriesError("coefficient of x^" + std::to_string(n) + " is beyond the truncation O(x^" +
                          std::to_string(D_) + ")");
    if (n < low_)
        return zero_poly();
    return c_[static_cast<std::size_t>(n - low_)];
}

void TruncatedSeries::set_coeff(int n, GradedPoly c) {
    if (n >= D_)
        return;
    if (n < low_) {
        if (c.is_zero())
            return;
        c_.insert(c_.begin(), static_cast<std::size_t>(low_ - n), GradedPoly());
        low_ = n;
    }
    c_[static_cast<std::size_t>(n - low_)] = std::move(c);
}

void TruncatedSeries::add_to_coeff(int n, const GradedPoly& c) {
    if (n >= D_ || c.is_zero())
        return;
    if (n < low_) {
        c_.insert(c_.begin(), static_cast<std::size_t>(low_ - n), GradedPoly());
        low_ = n;
    }
    c_[static_cast<std::size_t>(n - low_)] += c;
}

TruncatedSeries TruncatedSeries::truncated(int D) const {
    if (D > D_)
        throw SeriesError("cannot raise truncation from " + std::to_string(D_) + " to " + std::to_string(D));
    TruncatedSeries r(low_, D, var_);
    r.p_ = p_;
    for (int n = low_; n < D; ++n)
        r.c_[n - low_] = c_[n - low_];
    return r;
}

TruncatedSeries TruncatedSeries::with_var(Var v) const {
    TruncatedSeries r = *this;
    r.var_ = v;
    return r;
}

TruncatedSeries TruncatedSeries::shifted(int k) const {
    TruncatedSeries r = *this;
    r.low_ += k;
    r.D_ += k;
    return r;
}

TruncatedSeries TruncatedSeries::map_coeffs(const std::function<GradedPoly(const GradedPoly&)>& fn) const {
    TruncatedSeries r = *this;
    for (auto& c : r.c_)
        if (!c.is_zero())
            c = fn(c);
    return r;
}

TruncatedSeries TruncatedSeries::operator-() const {
    TruncatedSeries r = *this;
    for (auto& c : r.c_)
        c = -c;
    return r;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
    same_var(*this, o);
    TruncatedSeries in = *this;
    p_ = merge_prime(p_, o.p_);
    int D = std::min(D_, o.D_);
    if (D < D_)
        *this = truncated(D);
    for (int n = o.low_; n < D; ++n)
        add_to_coeff(n, o.coeff(n));
    guard(*this, {&in, &o}, "add");
    return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) { return *this += -o; }

TruncatedSeries multiply_with(const TruncatedSeries& a, const TruncatedSeries& b, bool parallel) {
    same_var(a, b);
    int va = a.valuation(), vb = b.valuation();
    int D = std::min(a.D_ + vb, b.D_ + va);
    TruncatedSeries r(std::min(va + vb, D), D, a.var_);
    r.p_ = merge_prime(a.p_, b.p_);
    if (va >= a.D_ || vb >= b.D_ || va + vb >= D)
        return r;
    std::vector<GradedPoly> sa(a.c_.begin() + (va - a.low_), a.c_.end());
    std::vector<GradedPoly> sb(b.c_.begin() + (vb - b.low_), b.c_.end());
    r.c_ = parallel ? kernels::convolve_parallel(sa, va, sb, vb, D) : kernels::convolve_serial(sa, va, sb, vb, D);
    guard(r, {&a, &b}, "multiply");
    return r;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) { return multiply_with(a, b, true); }

TruncatedSeries operator*(const GradedPoly& c, const TruncatedSeries& a) {
    TruncatedSeries r = a;
    for (auto& x : r.c_)
        if (!x.is_zero())
            x = c * x;
    return r;
}

TruncatedSeries TruncatedSeries::pow(unsigned e) const {
    if (e == 0) {
        TruncatedSeries one = constant(GradedPoly(1L), D_, var_);
        one.p_ = p_;
        return one;
    }
    TruncatedSeries result, base = *this;
    bool have = false;
    while (e) {
        if (e & 1u) {
            result = have ? result * base : base;
            have = true;
        }
        e >>= 1;
        if (e)
            base = base * base;
    }
    return result;
}

bool TruncatedSeries::is_zero() const { return valuation() >= D_; }

std::optional<long long> TruncatedSeries::homogeneous_degree(int p) const {
    std::optional<long long> d;
    for (int n = low_; n < D_; ++n) {
        const auto& c = c_[n - low_];
        if (c.is_zero())
            continue;
        auto cd = c.degree(p);
        if (!cd)
            return std::nullopt;
        long long total = *cd - 2LL * n;
        if (d && *d != total)
            return std::nullopt;
        d = total;
    }
    return d;
}

bool TruncatedSeries::is_homogeneous(int p) const { return is_zero() || homogeneous_degree(p).has_value(); }

bool TruncatedSeries::is_p_local(int p) const {
    return std::all_of(c_.begin(), c_.end(), [p](const GradedPoly& c) { return c.is_p_local(p); });
}

std::string TruncatedSeries::str(int max_terms) const {
    std::ostringstream os;
    int shown = 0;
    for (int n = low_; n < D_ && shown < max_terms; ++n) {
        const auto& c = c_[n - low_];
        if (c.is_zero())
            continue;
        std::string cs = c.str();
        if (shown)
            os << " + ";
        bool simple = c.size() == 1;
        std::string x = std::string(var_name(var_)) + (n == 1 ? "" : "^" + std::to_string(n));
        if (n == 0)
            os << (simple ? cs : "(" + cs + ")");
        else if (cs == "1")
            os << x;
        else
            os << (simple ? cs : "(" + cs + ")") << "*" << x;
        ++shown;
    }
    if (shown)
        os << " + ";
    os << "O(" << var_name(var_) << "^" << D_ << ")";
    return os.str();
}

TruncatedSeries derivative(const TruncatedSeries& f) {
    TruncatedSeries r(f.low_order() - 1, f.precision() - 1, f.var());
    r.set_prime(f.prime());
    for (int n = f.low_order(); n < f.precision(); ++n)
        if (n != 0 && !f.coeff(n).is_zero())
            r.set_coeff(n - 1, f.coeff(n) * Rational(n));
    return r;
}

TruncatedSeries compose(const TruncatedSeries& f, const TruncatedSeries& g) {
    int r = g.valuation();
    if (g.low_order() < 1 && g.valuation() < 1)
        throw SeriesError("substitution into a series with a nonzero constant term is ill-defined");
    int vf = f.valuation();
    if (f.low_order() < 0 && vf < 0)
        throw SeriesError("composition of a Laurent series is not supported");
    int m = std::max(vf, 1);
    long long bound = std::min<long long>(static_cast<long long>(f.precision()) * r,
                                          static_cast<long long>(g.precision()) + static_cast<long long>(m - 1) * r);
    int D = static_cast<int>(bound);
    TruncatedSeries out(0, D, g.var());
    out.set_prime(f.prime() ? f.prime() : g.prime());
    if (vf < f.precision() && vf == 0)
        out.add_to_coeff(0, f.coeff(0));
    TruncatedSeries gt = g.truncated(std::min(g.precision(), D));
    TruncatedSeries gp = TruncatedSeries::constant(GradedPoly(1L), D, g.var());
    gp.set_prime(g.prime());
    for (int n = 1; n < f.precision() && static_cast<long long>(n) * r < D; ++n) {
        gp = gp * gt;
        if (gp.precision() > D)
            gp = gp.truncated(D);
        const GradedPoly& c = f.coeff(n);
        if (c.is_zero())
            continue;
        TruncatedSeries term = c * gp;
        for (int k = term.valuation(); k < std::min(D, term.precision()); ++k)
            out.add_to_coeff(k, term.coeff(k));
    }
    if (out.precision() > D)
        out = out.truncated(D);
    guard(out, {&f, &g}, "compose");
    return out;
}

namespace {

/* c must be a nonzero constant or a single term whose monomial may be inverted */
GradedPoly invert_unit(const GradedPoly& c) {
    if (c.size() != 1)
        throw SeriesError("leading coefficient " + c.str() + " is not a unit");
    const auto& [m, a] = *c.terms().begin();
    for (auto& [g, e] : m.factors())
        if (!(g.kind == GenKind::V && g.index == 1))
            throw SeriesError("leading coefficient " + c.str() + " is not a unit");
    return GradedPoly(m.pow(-1), 1 / a);
}

}  // namespace

TruncatedSeries multiplicative_inverse(const TruncatedSeries& f) {
    int v = f.valuation();
    if (v >= f.precision())
        throw SeriesError("cannot invert a series that is zero through its truncation");
    GradedPoly inv = invert_unit(f.coeff(v));
    int len = f.precision() - v;  // h = f / (a x^v) known mod x^len
    std::vector<GradedPoly> h(static_cast<std::size_t>(len)), b(static_cast<std::size_t>(len));
    for (int n = 0; n < len; ++n)
        h[n] = inv * f.coeff(v + n);
    b[0] = GradedPoly(1L);
    for (int n = 1; n < len; ++n) {
        GradedPoly acc;
        for (int i = 1; i <= n; ++i)
            if (!h[i].is_zero() && !b[n - i].is_zero())
                acc += h[i] * b[n - i];
        b[n] = -acc;
    }
    TruncatedSeries r(-v, len - v, f.var());
    r.set_prime(f.prime());
    for (int n = 0; n < len; ++n)
        r.set_coeff(n - v, inv * b[n]);
    guard(r, {&f}, "multiplicative_inverse");
    return r;
}

TruncatedSeries compositional_inverse(const TruncatedSeries& f) {
    if (f.valuation() != 1 || f.low_order() < 0)
        throw SeriesError("compositional inverse needs f = u*x + higher terms");
    const GradedPoly& u = f.coeff(1);
    if (!u.is_constant() || u.is_zero())
        throw SeriesError("linear coefficient " + u.str() + " is not a unit");
    int D = f.precision();
    Rational ui = 1 / u.constant_term();
    TruncatedSeries x = TruncatedSeries::variable(D, f.var());
    TruncatedSeries g = TruncatedSeries::monomial(GradedPoly(ui), 1, D, f.var());
    g.set_prime(f.prime());
    x.set_prime(f.prime());
    TruncatedSeries df = derivative(f);
    // Newton step g <- g - (f(g) - x) / f'(g); correct order roughly doubles each pass
    int known = 2;
    while (known < D) {
        int target = std::min(D, 2 * known);
        TruncatedSeries gt = g.truncated(target);
        TruncatedSeries err = compose(f.truncated(target), gt) - x.truncated(target);
        TruncatedSeries slope = compose(df.truncated(target - 1), gt);
        TruncatedSeries step = err * multiplicative_inverse(slope);
        TruncatedSeries next(0, D, f.var());
        next.set_prime(f.prime());
        for (int n = 1; n < D; ++n) {
            GradedPoly c = n < target ? gt.coeff(n) : GradedPoly();
            if (n < step.precision())
                c -= step.coeff(n);
            next.set_coeff(n, c);
        }
        g = next;
        known = target;
    }
    g = g.truncated(D);
    guard(g, {&f}, "compositional_inverse");
    return g;
}

bool eq_up_to(const TruncatedSeries& f, const TruncatedSeries& g, int n) {
    if (n > f.precision() || n > g.precision())
        throw SeriesError("comparison through x^" + std::to_string(n) + " exceeds truncation (" +
                          std::to_string(f.precision()) + ", " + std::to_string(g.precision()) + ")");
    int lo = std::min(f.low_order(), g.low_order());
    for (int k = lo; k < n; ++k)
        if (!(f.coeff(k) == g.coeff(k)))
            return false;
    return true;
}

}  // namespace rootcalc
