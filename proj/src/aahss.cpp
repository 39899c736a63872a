#include "rootcalc/aahss.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace rootcalc {

Cell::Cell(long n, int p) : n_(n), q_(2 * (p - 1)) {
    if (p < 2)
        throw std::invalid_argument("cell needs a prime");
    long r = mod(n, q_);
    if (r != 0 && r != q_ - 1)
        throw std::invalid_argument("cell " + std::to_string(n) + " is not 0 or -1 mod q=" + std::to_string(q_));
}

long Cell::m() const { return top() ? n_ / q_ : (n_ + 1) / q_; }

std::string Cell::str() const {
    long mm = m();
    std::ostringstream os;
    if (mm == 0)
        os << (top() ? "0" : "-1");
    else {
        if (mm == -1)
            os << "-q";
        else if (mm == 1)
            os << "q";
        else
            os << mm << "q";
        if (!top())
            os << "-1";
    }
    return os.str();
}

TriGrading CellClass::grading() const {
    long m = cell.m();
    long k = name.stem() + cell.n();
    if (cell.top())
        return {k, 2 * m + 1, name.filtration() - 1L};
    return {k, 2 * m, static_cast<long>(name.filtration())};
}

std::string CellClass::str() const { return name.str() + "[" + cell.str() + "]"; }
std::string CellClass::tex() const { return name.tex() + "[" + cell.str() + "]"; }

CellClass at(const ExtName& e, long cell, int p) { return CellClass{e, Cell(cell, p), p}; }

std::string DifferentialRecord::str() const {
    std::ostringstream os;
    os << "d_" << label << "(" << source.str() << ") " << (unit_class ? "=. " : "= ");
    if (coefficient != "1")
        os << coefficient << " ";
    os << target.str();
    if (valid_mod.n > 0)
        os << " mod I_" << valid_mod.n;
    if (page != label)
        os << " [index drop " << page << "]";
    os << " (" << rule << ")";
    return os.str();
}

namespace {

long pmod(long a, long p) { return Cell::mod(a, p); }

ExtName alpha1(int p) { return ExtName::alpha(p, 1, 1); }

RuleResult vanish(std::string why) {
    RuleResult r;
    r.kind = RuleResult::Kind::Vanishes;
    r.reason = std::move(why);
    return r;
}

RuleResult not_applicable(std::string why) {
    RuleResult r;
    r.kind = RuleResult::Kind::NotApplicable;
    r.reason = std::move(why);
    return r;
}

RuleResult fire(DifferentialRecord d) {
    RuleResult r;
    r.kind = RuleResult::Kind::Fires;
    r.record = std::move(d);
    return r;
}

DifferentialRecord make(const CellClass& s, const CellClass& t, int label, bool unit, Ideal mod, std::string rule) {
    DifferentialRecord d{s, t, 0, 0, true, "1", Ideal{0}, ""};
    d.page = static_cast<int>(s.grading().n - t.grading().n);
    d.label = label;
    d.unit_class = unit;
    d.valid_mod = mod;
    d.rule = std::move(rule);
    return d;
}

// single alpha atom, if any
const Atom* alpha_atom(const ExtName& e) {
    if (e.kind() != ExtName::Kind::Alpha)
        return nullptr;
    return &e.factors().begin()->first;
}

}  // namespace

ExtName resolve_bracket(const ExtName& e) {
    if (e.kind() != ExtName::Kind::Bracket)
        return e;
    int p = e.prime();
    ExtName base = resolve_bracket(*e.bracket_base());
    if (e.bracket_count() != p - 1 || base.kind() == ExtName::Kind::Bracket)
        return ExtName::bracket(p, base, e.bracket_count());
    ExtName a1 = alpha1(p);
    if (base.has_factor(a1))
        return (base / a1) * ExtName::beta(p, 1, 1);
    return ExtName::bracket(p, base, e.bracket_count());
}

RuleResult rule_d_odd_vn(const ExtName& a, long cell, int n, int p) {
    Cell c(cell, p);
    if (!c.top())
        throw std::invalid_argument("rule_d_odd_vn needs a cell = 0 mod q, got " + c.str());
    if (n < 0)
        throw std::invalid_argument("rule_d_odd_vn: negative level");
    long steps = (ipow_ll(p, n) - 1) / (p - 1);
    long target = cell - steps * c.q() - 1;
    int label = static_cast<int>(2 * ipow_ll(p, n) - 1);
    return fire(make(at(a, cell, p), at(ExtName::v(p, n) * a, target, p), label, true, Ideal{n}, "d_vn"));
}

RuleResult rule_d2(const ExtName& a, long cell, int p) {
    if (p == 2)
        return not_applicable("odd primes only");
    Cell c(cell, p);
    long k = c.m();
    ExtName t = alpha1(p) * a;
    if (!c.top()) {
        if (pmod(k, p) == 0)
            return vanish("k = 0 mod p on cell kq-1");
        return fire(make(at(a, cell, p), at(t, cell - c.q(), p), 2, true, Ideal{0}, "d2"));
    }
    if (pmod(k, p) == 1)
        return vanish("k = 1 mod p on cell kq");
    return fire(make(at(a, cell, p), at(t, cell - c.q(), p), 2, true, Ideal{1}, "d2"));
}

RuleResult rule_dq(const ExtName& a, long cell, int p) {
    if (p == 2)
        return not_applicable("odd primes only");
    Cell c(cell, p);
    long k = c.m();
    long want = c.top() ? 0 : p - 1;
    if (pmod(k, p) != want)
        return vanish(c.top() ? "k != 0 mod p on cell kq" : "k != -1 mod p on cell kq-1");
    ExtName t = resolve_bracket(ExtName::bracket(p, a, p - 1));
    return fire(make(at(a, cell, p), at(t, cell - (p - 1) * c.q(), p), c.q(), true, Ideal{2}, "dq"));
}

RuleResult rule_imJ(const CellClass& el) {
    int p = el.p;
    const Cell& c = el.cell;
    long k = c.m();
    const ExtName& e = el.name;
    if (e.kind() == ExtName::Kind::One) {
        if (c.top())
            return fire(make(el, at(ExtName::v(p, 0), c.n() - 1, p), 1, false, Ideal{0}, "imJ d1(1)"));
        if (k == 0)
            return not_applicable("stem -1 class");
        int j = nu(k, p) + 1;
        auto t = at(ExtName::alpha_tilde(p, j), (k - j) * c.q() - 1, p);
        return fire(make(el, t, 2 * j, true, Ideal{0}, "imJ d2j(1)"));
    }
    const Atom* a = alpha_atom(e);
    if (!a)
        return not_applicable("not in the image of J family");
    if (!c.top())
        return not_applicable("no imJ rule starts on cell kq-1 from alpha");
    if (a->j > 1) {
        auto t = at(ExtName::alpha(p, a->i, a->j - 1), c.n() - 1, p);
        return fire(make(el, t, 1, false, Ideal{0}, "imJ d1(alpha_{i/j})"));
    }
    if (k + a->i == 0)
        return not_applicable("stem -1 class");
    int j = nu(k + a->i, p) + 1;
    auto t = at(ExtName::alpha_tilde(p, a->i + j), (k - j) * c.q() - 1, p);
    return fire(make(el, t, 2 * j + 1, true, Ideal{0}, "imJ d2j+1(alpha_i)"));
}

std::vector<DifferentialRecord> all_rules(const CellClass& el, int max_vn_level) {
    std::vector<DifferentialRecord> out;
    auto take = [&](const RuleResult& r) {
        if (r.fires())
            out.push_back(*r.record);
    };
    int p = el.p;
    take(rule_imJ(el));
    if (el.name.kind() != ExtName::Kind::Bracket) {
        take(rule_d2(el.name, el.cell.n(), p));
        take(rule_dq(el.name, el.cell.n(), p));
        if (el.cell.top())
            for (int n = 1; n <= max_vn_level; ++n)
                take(rule_d_odd_vn(el.name, el.cell.n(), n, p));
    }
    std::stable_sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.page < b.page; });
    return out;
}

std::vector<CellClass> imJ_survivors(long kmin, long kmax, int imax, int p) {
    std::vector<CellClass> out;
    long q = 2 * (p - 1);
    for (long k = kmin; k <= kmax; ++k)
        for (int i = 1; i <= imax; ++i) {
            long d = k + i;
            bool divides = d == 0 || nu(d, p) >= i;
            if (divides)
                out.push_back(at(ExtName::alpha_tilde(p, i), k * q - 1, p));
        }
    return out;
}

std::vector<CellClass> imJ_classes(long kmin, long kmax, int imax, int p) {
    std::vector<CellClass> out;
    long q = 2 * (p - 1);
    for (long k = kmin; k <= kmax; ++k)
        for (long cell : {k * q - 1, k * q}) {
            out.push_back(at(ExtName::one(), cell, p));
            for (int i = 1; i <= imax; ++i)
                for (int j = 1; j <= nu(i, p) + 1; ++j)
                    out.push_back(at(ExtName::alpha(p, i, j), cell, p));
        }
    return out;
}

ImJAccounting imJ_account(long kmin, long kmax, int imax, int p) {
    auto key = [](const CellClass& c) { return c.str(); };
    std::set<std::string> seen;
    for (auto& s : imJ_survivors(kmin, kmax, imax, p))
        seen.insert(key(s));
    // sources hitting the window sit at most imax + 1 cell pairs above it
    for (auto& c : imJ_classes(kmin, kmax + imax + 1, imax, p)) {
        auto r = rule_imJ(c);
        if (!r.fires())
            continue;
        seen.insert(key(c));
        seen.insert(key(r.record->target));
    }
    ImJAccounting acc;
    for (auto& c : imJ_classes(kmin, kmax, imax, p)) {
        if (seen.count(key(c)))
            continue;
        if (c.total_stem() == -1)
            acc.stem_minus_one.push_back(c);
        else
            acc.unaccounted.push_back(c);
    }
    return acc;
}

TowerVerdict beta_tower_classify(const ExtName& gamma, const ExtName& lambda, const ExtName& mu, TowerSet set,
                                 long cell, int p) {
    TowerVerdict v;
    if (set == TowerSet::None || p == 2) {
        v.subcase = "no hypothesis set";
        return v;
    }
    Cell c(cell, p);
    long m = c.m(), q = c.q(), n = c.n();
    auto src = at(gamma, n, p);
    auto killed = [&](long from, int label, Ideal mod, std::string sc) {
        v.kind = TowerVerdict::Kind::Killed;
        v.record = make(at(lambda, from, p), src, label, true, mod, label == 2 ? "d2" : "dq");
        v.subcase = std::move(sc);
    };
    auto supports = [&](long to, int label, Ideal mod, std::string sc) {
        v.kind = TowerVerdict::Kind::Supports;
        v.record = make(src, at(mu, to, p), label, true, mod, label == 2 ? "d2" : "dq");
        v.subcase = std::move(sc);
    };
    bool bottom = !c.top();
    if (set == TowerSet::AlphaTimesLambda) {
        long crit = bottom ? p - 1 : 0;
        if (pmod(m, p) == crit)
            supports(n - (p - 1) * q, static_cast<int>(q), Ideal{2},
                     bottom ? "alpha1*lambda, cell mq-1, m = -1 mod p: supports d_q or shorter"
                            : "alpha1*lambda, cell mq, m = 0 mod p: supports d_q or shorter");
        else
            killed(n + q, 2, Ideal{bottom ? 0 : 1},
                   bottom ? "alpha1*lambda, cell mq-1: killed by d2" : "alpha1*lambda, cell mq: killed by d2");
    } else {
        long crit = bottom ? 0 : 1;
        if (pmod(m, p) == crit)
            killed(n + (p - 1) * q, static_cast<int>(q), Ideal{2},
                   bottom ? "bracket of lambda, cell mq-1, m = 0 mod p: killed by d_q"
                          : "bracket of lambda, cell mq, m = 1 mod p: killed by d_q");
        else
            supports(n - q, 2, Ideal{bottom ? 0 : 1},
                     bottom ? "bracket of lambda, cell mq-1: supports d2"
                            : "bracket of lambda, cell mq: supports d2 (or d1)");
    }
    return v;
}

BetaSurvivalReport beta_not_killed(int i, int j, long k, int p) {
    BetaSurvivalReport rep{at(ExtName::beta(p, i, j), k * 2 * (p - 1), p), {}, {}};
    long q = 2 * (p - 1);
    long t = rep.target.total_stem();
    if ((t + 2) % q != 0)
        throw std::logic_error("beta stem off the q-grid");
    long sum = (t + 2) / q;  // source cells: 1[sum q - 1], alpha_n[(sum - n) q]
    std::vector<CellClass> sources{at(ExtName::one(), sum * q - 1, p)};
    for (int n = 1; n <= 80; ++n)
        for (int l = 1; l <= nu(n, p) + 1; ++l)
            sources.push_back(at(ExtName::alpha(p, n, l), (sum - n) * q, p));
    for (auto& s : sources) {
        auto recs = all_rules(s);
        for (auto& r : recs) {
            if (!(r.target == rep.target))
                continue;
            auto shorter = std::find_if(recs.begin(), recs.end(),
                                        [&](auto& o) { return o.page < r.page && o.rule.rfind("imJ", 0) == 0; });
            if (shorter != recs.end()) {
                rep.exclusions.push_back(r.str() + " excluded: source already supports " + shorter->str());
                continue;
            }
            rep.incoming.push_back(r);
        }
    }
    rep.exclusions.push_back("checked sources 1[mq-1] and alpha_n[mq] in stem " + std::to_string(t + 1) +
                             "; neither family survives to carry a beta target");
    return rep;
}

BifiltrationRegion::BifiltrationRegion(std::vector<long> I, std::vector<long> J) : I_(std::move(I)), J_(std::move(J)) {
    if (I_.size() != J_.size())
        throw std::invalid_argument("region sequences differ in length");
    for (size_t i = 0; i < I_.size(); ++i) {
        if (I_[i] < 0)
            throw std::invalid_argument("region filtration index must be >= 0");
        if (i > 0 && (I_[i] <= I_[i - 1] || J_[i] <= J_[i - 1]))
            throw std::invalid_argument("region sequences must be strictly increasing");
    }
}

bool BifiltrationRegion::member(long a, long b) const {
    for (size_t i = 0; i < I_.size(); ++i)
        if (a >= I_[i] && b <= J_[i])
            return true;
    return false;
}

bool BifiltrationRegion::leq(const BifiltrationRegion& o) const {
    // each corner (k_i, N_i) must sit inside some quadrant of o
    for (size_t i = 0; i < I_.size(); ++i)
        if (!o.member(I_[i], J_[i]))
            return false;
    return true;
}

}  // namespace rootcalc
