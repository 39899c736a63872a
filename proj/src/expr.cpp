#include "rootcalc/expr.hpp"

#include <cctype>

namespace rootcalc {

namespace {

class Cursor {
public:
    explicit Cursor(const std::string& s) : s_(s) {}

    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
            ++i_;
    }
    bool done() {
        skip();
        return i_ >= s_.size();
    }
    char peek() {
        skip();
        return i_ < s_.size() ? s_[i_] : '\0';
    }
    bool accept(char c) {
        if (peek() != c)
            return false;
        ++i_;
        return true;
    }
    void expect(char c) {
        if (!accept(c))
            fail(std::string("expected '") + c + "'");
    }
    long integer() {
        skip();
        size_t b = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
            ++i_;
        if (b == i_)
            fail("expected an integer");
        return std::stol(s_.substr(b, i_ - b));
    }
    bool at_digit() { return std::isdigit(static_cast<unsigned char>(peek())); }
    bool at_alpha() { return std::isalpha(static_cast<unsigned char>(peek())); }
    std::string word() {
        skip();
        size_t b = i_;
        while (i_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[i_])))
            ++i_;
        return s_.substr(b, i_ - b);
    }
    // digits immediately following, no whitespace
    std::string digits_glued() {
        size_t b = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
            ++i_;
        return s_.substr(b, i_ - b);
    }
    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError(why + " at position " + std::to_string(i_) + " in \"" + s_ + "\"");
    }

private:
    const std::string& s_;
    size_t i_ = 0;
};

int exponent(Cursor& c) {
    if (!c.accept('^'))
        return 1;
    long e = c.integer();
    if (e > 10000)
        c.fail("exponent too large");
    return static_cast<int>(e);
}

GradedPoly poly_sum(Cursor& c, int p);

GradedPoly poly_atom(Cursor& c, int p) {
    GradedPoly base;
    if (c.accept('(')) {
        base = poly_sum(c, p);
        c.expect(')');
    } else if (c.at_digit()) {
        base = GradedPoly(Rational(c.integer()));
    } else if (c.at_alpha()) {
        std::string w = c.word();
        if (w == "p") {
            base = GradedPoly(static_cast<long>(p));
        } else if (w == "v" || w == "t") {
            std::string d = c.digits_glued();
            if (d.empty())
                c.fail("generator " + w + " needs an index");
            int k = std::stoi(d);
            if (k < 1)
                c.fail("generator index must be positive");
            base = w == "v" ? GradedPoly::v(k) : GradedPoly::t(k);
        } else {
            c.fail("unknown symbol '" + w + "'");
        }
    } else {
        c.fail("unexpected character");
    }
    return base.pow(static_cast<unsigned>(exponent(c)));
}

GradedPoly poly_product(Cursor& c, int p) {
    GradedPoly r = poly_atom(c, p);
    for (;;) {
        if (c.accept('*')) {
            r = r * poly_atom(c, p);
            continue;
        }
        char n = c.peek();
        if (n == '(' || std::isalnum(static_cast<unsigned char>(n)))
            r = r * poly_atom(c, p);
        else
            return r;
    }
}

GradedPoly poly_sum(Cursor& c, int p) {
    bool neg = c.accept('-');
    GradedPoly r = poly_product(c, p);
    if (neg)
        r = -r;
    for (;;) {
        if (c.accept('+'))
            r += poly_product(c, p);
        else if (c.accept('-'))
            r -= poly_product(c, p);
        else
            return r;
    }
}

ExtName ext_product(Cursor& c, int p, const OpaqueLookup& lookup);

std::optional<ExtName> builtin(const std::string& label, int p) {
    if (label == "p")
        return ExtName::v(p, 0);
    if (label.size() > 1 && label[0] == 'v' && std::isdigit(static_cast<unsigned char>(label[1])))
        return ExtName::v(p, std::stoi(label.substr(1)));
    return std::nullopt;
}

ExtName ext_factor(Cursor& c, int p, const OpaqueLookup& lookup) {
    ExtName base;
    if (c.accept('<')) {
        ExtName inner = ext_product(c, p, lookup);
        c.expect(',');
        if (c.word() != "alpha" || c.digits_glued() != "1" || c.word() != "x")
            c.fail("bracket entries must read 'alpha1 x<count>'");
        std::string d = c.digits_glued();
        if (d.empty())
            c.fail("bracket count missing");
        c.expect('>');
        base = ExtName::bracket(p, inner, std::stoi(d));
    } else if (c.at_digit()) {
        if (c.integer() != 1)
            c.fail("the only integer name is 1");
    } else {
        std::string w = c.word();
        if (w.empty())
            c.fail("expected a name");
        if (w == "alpha" || w == "beta" || w == "atilde") {
            long i = 0, j = 1;
            if (c.accept('{')) {
                i = c.integer();
                if (c.accept('/'))
                    j = c.integer();
                c.expect('}');
            } else {
                std::string d = c.digits_glued();
                if (d.empty())
                    c.fail(w + " needs an index");
                i = std::stol(d);
            }
            try {
                if (w == "alpha")
                    base = ExtName::alpha(p, static_cast<int>(i), static_cast<int>(j));
                else if (w == "beta")
                    base = ExtName::beta(p, static_cast<int>(i), static_cast<int>(j));
                else
                    base = ExtName::alpha_tilde(p, static_cast<int>(i));
            } catch (const NameError& e) {
                c.fail(e.what());
            }
        } else {
            std::string label = w + c.digits_glued();
            std::optional<ExtName> e = lookup ? lookup(label) : std::nullopt;
            if (!e)
                e = builtin(label, p);
            if (!e)
                c.fail("unknown element '" + label + "'");
            base = *e;
        }
    }
    return base.pow(exponent(c));
}

ExtName ext_product(Cursor& c, int p, const OpaqueLookup& lookup) {
    ExtName r = ext_factor(c, p, lookup);
    for (;;) {
        if (c.accept('*'))
            r = r * ext_factor(c, p, lookup);
        else if (c.accept('/'))
            r = r / ext_factor(c, p, lookup);
        else if (c.peek() == '<' || std::isalnum(static_cast<unsigned char>(c.peek())))
            r = r * ext_factor(c, p, lookup);
        else
            return r;
    }
}

}  // namespace

GradedPoly parse_poly(const std::string& s, int p) {
    Cursor c(s);
    if (c.done())
        c.fail("empty expression");
    GradedPoly r = poly_sum(c, p);
    if (!c.done())
        c.fail("trailing input");
    return r;
}

ExtName parse_ext_name(const std::string& s, int p, const OpaqueLookup& lookup) {
    Cursor c(s);
    if (c.done())
        c.fail("empty name");
    ExtName r = ext_product(c, p, lookup);
    if (!c.done())
        c.fail("unexpected character");
    return r;
}

}  // namespace rootcalc
