#include "rootcalc/ext_name.hpp"

#include "rootcalc/poly.hpp"

#include <cctype>
#include <sstream>
#include <tuple>

namespace rootcalc {

long alpha_stem(int p, int i) { return static_cast<long>(i) * 2 * (p - 1) - 1; }

long beta_stem(int p, int i, int j) {
    long q = 2 * (p - 1);
    return static_cast<long>(i) * 2 * (static_cast<long>(p) * p - 1) - j * q - 2;
}

bool Atom::operator==(const Atom& o) const {
    return kind == o.kind && i == o.i && j == o.j && label == o.label;
}

std::strong_ordering Atom::operator<=>(const Atom& o) const {
    // opaque first, then betas by descending (i, -j), then alphas
    auto rank = [](Kind k) { return k == Kind::Opaque ? 0 : k == Kind::Beta ? 1 : 2; };
    if (auto c = rank(kind) <=> rank(o.kind); c != 0)
        return c;
    if (auto c = o.i <=> i; c != 0)
        return c;
    if (auto c = j <=> o.j; c != 0)
        return c;
    return label <=> o.label;
}

std::string Atom::str() const {
    switch (kind) {
    case Kind::Alpha:
    case Kind::Beta: {
        std::string s = kind == Kind::Alpha ? "alpha" : "beta";
        if (j == 1)
            return s + std::to_string(i);
        return s + "{" + std::to_string(i) + "/" + std::to_string(j) + "}";
    }
    case Kind::Opaque:
        return label;
    }
    return label;
}

std::string Atom::tex() const {
    switch (kind) {
    case Kind::Alpha:
    case Kind::Beta: {
        std::string s = kind == Kind::Alpha ? "\\alpha" : "\\beta";
        if (j == 1)
            return s + "_{" + std::to_string(i) + "}";
        return s + "_{" + std::to_string(i) + "/" + std::to_string(j) + "}";
    }
    case Kind::Opaque:
        if (label.size() > 1 && std::isdigit(static_cast<unsigned char>(label.back()))) {
            auto k = label.find_first_of("0123456789");
            std::string head = label.substr(0, k);
            if (head == "eta")
                head = "\\eta";
            return head + "_{" + label.substr(k) + "}";
        }
        return label;
    }
    return label;
}

ExtName ExtName::from_atom(int p, Atom a) {
    ExtName e;
    e.p_ = p;
    e.f_[std::move(a)] = 1;
    return e;
}

ExtName ExtName::alpha(int p, int i, int j) {
    if (i < 1 || j < 1 || j > nu(i, p) + 1)
        throw NameError("alpha_{" + std::to_string(i) + "/" + std::to_string(j) + "} does not exist at p=" + std::to_string(p));
    Atom a{Atom::Kind::Alpha, i, j, "", alpha_stem(p, i), 1};
    return from_atom(p, a);
}

ExtName ExtName::alpha_tilde(int p, int i) { return alpha(p, i, nu(i, p) + 1); }

ExtName ExtName::beta(int p, int i, int j) {
    if (i < 1 || j < 1 || j > i)
        throw NameError("beta_{" + std::to_string(i) + "/" + std::to_string(j) + "} does not exist");
    Atom a{Atom::Kind::Beta, i, j, "", beta_stem(p, i, j), 2};
    return from_atom(p, a);
}

ExtName ExtName::opaque(const std::string& label, long stem, int filtration) {
    if (label.empty())
        throw NameError("empty opaque label");
    Atom a{Atom::Kind::Opaque, 0, 0, label, stem, filtration};
    return from_atom(0, a);
}

ExtName ExtName::v(int p, int n) {
    if (n == 0)
        return opaque("p", 0, 0);
    return opaque("v" + std::to_string(n), 2 * (ipow_ll(p, n) - 1), 0);
}

ExtName ExtName::bracket(int p, const ExtName& base, int alpha1_count) {
    if (alpha1_count < 1)
        throw NameError("bracket needs at least one alpha1 entry");
    ExtName e;
    e.p_ = p;
    e.base_ = std::make_shared<const ExtName>(base);
    e.count_ = alpha1_count;
    return e;
}

ExtName::Kind ExtName::kind() const {
    if (base_)
        return Kind::Bracket;
    if (f_.empty())
        return Kind::One;
    if (f_.size() == 1 && f_.begin()->second == 1) {
        switch (f_.begin()->first.kind) {
        case Atom::Kind::Alpha: return Kind::Alpha;
        case Atom::Kind::Beta: return Kind::Beta;
        case Atom::Kind::Opaque: return Kind::Opaque;
        }
    }
    return Kind::Product;
}

long ExtName::stem() const {
    if (base_) {
        // <x, a1, ..., a1>: sum of stems plus (entries - 2)
        return base_->stem() + count_ * alpha_stem(p_, 1) + (count_ - 1);
    }
    long s = 0;
    for (auto& [a, e] : f_)
        s += e * a.stem;
    return s;
}

int ExtName::filtration() const {
    if (base_)
        return base_->filtration() + count_ - (count_ - 1);
    int s = 0;
    for (auto& [a, e] : f_)
        s += e * a.filtration;
    return s;
}

ExtName ExtName::operator*(const ExtName& o) const {
    if (base_ || o.base_)
        throw NameError("products of bracket names are not represented");
    ExtName r = *this;
    if (r.p_ == 0)
        r.p_ = o.p_;
    for (auto& [a, e] : o.f_) {
        int& x = r.f_[a];
        x += e;
        if (x == 0)
            r.f_.erase(a);
    }
    return r;
}

ExtName ExtName::pow(int e) const {
    if (e < 0)
        throw NameError("negative power");
    if (e == 1)
        return *this;
    ExtName r;
    r.p_ = p_;
    for (int k = 0; k < e; ++k)
        r = r * *this;
    return r;
}

ExtName ExtName::operator/(const ExtName& o) const {
    if (o.base_)
        throw NameError("cannot divide by a bracket");
    ExtName inv;
    inv.p_ = o.p_;
    for (auto& [a, e] : o.f_)
        inv.f_[a] = -e;
    return *this * inv;
}

int ExtName::exponent(const Atom& a) const {
    auto it = f_.find(a);
    return it == f_.end() ? 0 : it->second;
}

bool ExtName::has_factor(const ExtName& atom) const {
    if (atom.f_.size() != 1)
        return false;
    return exponent(atom.f_.begin()->first) > 0;
}

bool ExtName::operator==(const ExtName& o) const {
    if (static_cast<bool>(base_) != static_cast<bool>(o.base_))
        return false;
    if (base_)
        return count_ == o.count_ && *base_ == *o.base_;
    return f_ == o.f_;
}

namespace {

template <class F>
std::string render(const std::map<Atom, int>& f, F atom_str, const char* pow_open, const char* pow_close,
                   const char* sep) {
    std::ostringstream os;
    bool any = false;
    for (auto& [a, e] : f) {
        if (e <= 0)
            continue;
        if (any)
            os << sep;
        os << atom_str(a);
        if (e > 1)
            os << pow_open << e << pow_close;
        any = true;
    }
    if (!any)
        os << "1";
    for (auto& [a, e] : f) {
        if (e >= 0)
            continue;
        os << "/" << atom_str(a);
        if (e < -1)
            os << pow_open << -e << pow_close;
    }
    return os.str();
}

}  // namespace

std::string ExtName::str() const {
    if (base_)
        return "<" + base_->str() + ", alpha1 x" + std::to_string(count_) + ">";
    return render(f_, [](const Atom& a) { return a.str(); }, "^", "", "*");
}

std::string ExtName::tex() const {
    if (base_)
        return "\\langle " + base_->tex() + ", \\alpha_{1}^{\\times " + std::to_string(count_) + "}\\rangle";
    return render(f_, [](const Atom& a) { return a.tex(); }, "^{", "}", "");
}

}  // namespace rootcalc
