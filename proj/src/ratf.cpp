/*
   Copyright 2026 The dmf authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "dmf/ratf.hpp"

#include <cctype>
#include <stdexcept>

namespace dmf {

RatF::RatF(const Poly& a) : num_(a), den_(Poly::constant(a.field(), 1)) {}

RatF::RatF(const Poly& num, const Poly& den)
{
    if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
    const FiniteField& F = den.field();
    if (num.is_zero()) {
        num_ = Poly(F);
        den_ = Poly::constant(F, 1);
        return;
    }
    Poly g = gcd(num, den);
    Poly n = g.is_one() ? num : num.exact_div(g);
    Poly d = g.is_one() ? den : den.exact_div(g);
    Fe l = d.lead();
    if (l != 1) {
        Fe li = F.inv(l);
        n = n * li;
        d = d * li;
    }
    num_ = std::move(n);
    den_ = std::move(d);
}

RatF RatF::operator-() const
{
    RatF r = *this;
    r.num_ = -num_;
    return r;
}

RatF RatF::operator+(const RatF& b) const
{
    if (b.is_zero()) return *this;
    if (is_zero()) return b;
    if (den_.is_one() && b.den_.is_one()) return RatF(num_ + b.num_);
    if (den_ == b.den_) return RatF(num_ + b.num_, den_);
    Poly g = gcd(den_, b.den_);
    if (g.is_one()) {
        RatF r;
        r.num_ = num_ * b.den_ + b.num_ * den_;
        r.den_ = den_ * b.den_;
        if (r.num_.is_zero()) return RatF(field());
        return r;
    }
    Poly d1 = den_.exact_div(g), d2 = b.den_.exact_div(g);
    Poly n = num_ * d2 + b.num_ * d1;
    if (n.is_zero()) return RatF(field());
    Poly h = gcd(n, g);
    RatF r;
    r.num_ = h.is_one() ? n : n.exact_div(h);
    Poly d = den_ * d2;
    r.den_ = h.is_one() ? d : d.exact_div(h);
    return r;
}

RatF RatF::operator-(const RatF& b) const
{
    return *this + (-b);
}

RatF RatF::operator*(const RatF& b) const
{
    if (is_zero()) return *this;
    if (b.is_zero()) return b;
    if (den_.is_one() && b.den_.is_one()) return RatF(num_ * b.num_);
    Poly g1 = gcd(num_, b.den_), g2 = gcd(b.num_, den_);
    Poly a = g1.is_one() ? num_ : num_.exact_div(g1);
    Poly d = g1.is_one() ? b.den_ : b.den_.exact_div(g1);
    Poly c = g2.is_one() ? b.num_ : b.num_.exact_div(g2);
    Poly e = g2.is_one() ? den_ : den_.exact_div(g2);
    RatF r;
    r.num_ = a * c;
    r.den_ = e * d;
    return r;
}

RatF RatF::operator*(Fe s) const
{
    if (s == 0) return RatF(field());
    RatF r = *this;
    r.num_ = num_ * s;
    return r;
}

RatF RatF::inv() const
{
    if (is_zero()) throw std::domain_error("inverse of zero in K");
    return RatF(den_, num_);
}

RatF RatF::operator/(const RatF& b) const
{
    return *this * b.inv();
}

RatF RatF::pow(long long e) const
{
    if (e < 0) return inv().pow(-e);
    RatF r;
    r.num_ = num_.pow((unsigned long long)e);
    r.den_ = den_.pow((unsigned long long)e);
    return r;
}

std::string fe_to_string(const FiniteField& F, Fe c)
{
    if (F.degree() == 1) return std::to_string(c);
    auto d = F.digits(c);
    std::string s = "[";
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(d[i]);
    }
    return s + "]";
}

std::string Poly::str() const
{
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (!c_[i]) continue;
        if (!s.empty()) s += " + ";
        s += fe_to_string(*F_, c_[i]) + "*θ^" + std::to_string(i);
    }
    return s;
}

std::string RatF::str() const
{
    if (den_.is_one()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

namespace {

struct Lexer {
    const std::string& s;
    std::size_t i = 0;
    explicit Lexer(const std::string& str) : s(str) {}
    void ws()
    {
        while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
    }
    bool eat(const std::string& t)
    {
        ws();
        if (s.compare(i, t.size(), t) == 0) {
            i += t.size();
            return true;
        }
        return false;
    }
    bool eat_var() { return eat("θ") || eat("theta"); }
    bool at_end()
    {
        ws();
        return i >= s.size();
    }
    [[noreturn]] void fail(const std::string& what)
    {
        throw std::invalid_argument("parse error at offset " + std::to_string(i) + " in \"" + s + "\": " + what);
    }
    long long integer()
    {
        ws();
        bool neg = false;
        if (i < s.size() && s[i] == '-') {
            neg = true;
            ++i;
        }
        if (i >= s.size() || !std::isdigit((unsigned char)s[i])) fail("expected integer");
        long long v = 0;
        while (i < s.size() && std::isdigit((unsigned char)s[i])) {
            v = v * 10 + (s[i] - '0');
            if (v > (1LL << 40)) fail("integer too large");
            ++i;
        }
        return neg ? -v : v;
    }
};

Fe parse_coeff(const FiniteField& F, Lexer& L)
{
    if (L.eat("[")) {
        std::vector<unsigned> d;
        do {
            long long v = L.integer() % (long long)F.p();
            if (v < 0) v += F.p();
            d.push_back(unsigned(v));
        } while (L.eat(","));
        if (!L.eat("]")) L.fail("expected ]");
        if (d.size() > F.degree()) L.fail("coefficient vector too long");
        return F.from_digits(d);
    }
    // a bare integer names an element of the prime field
    return F.from_int(L.integer());
}

Poly parse_poly_inner(const FiniteField& F, Lexer& L)
{
    Poly r(F);
    do {
        Fe c = 1;
        unsigned e = 0;
        if (L.eat_var()) {
            e = 1;
            if (L.eat("^")) {
                long long x = L.integer();
                if (x < 0 || x > (1 << 24)) L.fail("bad exponent");
                e = unsigned(x);
            }
        } else {
            c = parse_coeff(F, L);
            if (L.eat("*")) {
                if (!L.eat_var()) L.fail("expected θ");
                e = 1;
                if (L.eat("^")) {
                    long long x = L.integer();
                    if (x < 0 || x > (1 << 24)) L.fail("bad exponent");
                    e = unsigned(x);
                }
            }
        }
        r = r + Poly::monomial(F, c, e);
    } while (L.eat("+"));
    return r;
}

}  // namespace

Poly parse_poly(const FiniteField& F, const std::string& s)
{
    Lexer L(s);
    Poly r = parse_poly_inner(F, L);
    if (!L.at_end()) L.fail("trailing input");
    return r;
}

RatF parse_ratf(const FiniteField& F, const std::string& s)
{
    Lexer L(s);
    RatF r;
    if (L.eat("(")) {
        Poly n = parse_poly_inner(F, L);
        if (!L.eat(")")) L.fail("expected )");
        Poly d = Poly::constant(F, 1);
        if (L.eat("/")) {
            if (!L.eat("(")) L.fail("expected (");
            d = parse_poly_inner(F, L);
            if (!L.eat(")")) L.fail("expected )");
        }
        if (d.is_zero()) L.fail("zero denominator");
        r = RatF(n, d);
    } else {
        r = RatF(parse_poly_inner(F, L));
    }
    if (!L.at_end()) L.fail("trailing input");
    return r;
}

}  // namespace dmf
