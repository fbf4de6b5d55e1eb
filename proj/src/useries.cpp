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

#include "dmf/useries.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "dmf/binom.hpp"

namespace dmf {

namespace {

Poly lcm(const Poly& a, const Poly& b)
{
    if (a.is_one()) return b;
    if (b.is_one()) return a;
    Poly g = gcd(a, b);
    return a.exact_div(g) * b;
}

/* first n coefficients of a*b */
std::vector<Poly> mulp(const FiniteField& F, const std::vector<Poly>& a, const std::vector<Poly>& b, std::size_t n)
{
    std::vector<const std::vector<Fe>*> pa, pb;
    for (std::size_t i = 0; i < a.size() && i < n; ++i) pa.push_back(&a[i].coeffs());
    for (std::size_t i = 0; i < b.size() && i < n; ++i) pb.push_back(&b[i].coeffs());
    std::vector<Poly> r;
    r.reserve(n);
    if (pa.empty() || pb.empty()) {
        r.assign(n, Poly(F));
        return r;
    }
    auto c = kernel::mul2(F, pa, pb, n);
    for (auto& x : c) r.emplace_back(F, std::move(x));
    r.resize(n, Poly(F));
    return r;
}

}  // namespace

USeries::USeries(const FiniteField& F, long prec, long val)
    : F_(&F), val_(val), prec_(prec), den_(Poly::constant(F, 1)), nums_(std::size_t(std::max(0L, prec - val)), Poly(F))
{
}

USeries USeries::from_coeffs(const FiniteField& F, const std::vector<RatF>& c, long prec, long val)
{
    USeries r(F, prec, val);
    Poly L = Poly::constant(F, 1);
    for (std::size_t i = 0; i < c.size() && long(i) < prec - val; ++i)
        if (!c[i].is_zero()) L = lcm(L, c[i].den());
    for (std::size_t i = 0; i < c.size() && long(i) < prec - val; ++i) {
        if (c[i].is_zero()) continue;
        r.nums_[i] = c[i].den() == L ? c[i].num() : c[i].num() * L.exact_div(c[i].den());
    }
    r.den_ = L;
    return r;
}

USeries USeries::from_polys(const FiniteField& F, std::vector<Poly> nums, const Poly& den, long prec, long val)
{
    if (den.is_zero()) throw std::domain_error("series with zero denominator");
    USeries r(F, prec, val);
    nums.resize(r.nums_.size(), Poly(F));
    r.nums_ = std::move(nums);
    r.den_ = den;
    if (den.lead() != 1) {
        Fe li = F.inv(den.lead());
        r.den_ = den * li;
        for (auto& x : r.nums_) x = x * li;
    }
    r.normalize();
    return r;
}

USeries USeries::constant(const RatF& c, long prec)
{
    return monomial(c, 0, prec);
}

USeries USeries::monomial(const RatF& c, long e, long prec)
{
    USeries r(c.field(), prec, std::min(e, prec));
    if (e < prec) {
        r.nums_[0] = c.num();
        r.den_ = c.den();
    }
    return r;
}

void USeries::normalize()
{
    if (den_.is_one()) return;
    Poly g = den_;
    bool any = false;
    for (auto& x : nums_) {
        if (x.is_zero()) continue;
        any = true;
        g = gcd(g, x);
        if (g.is_one()) return;
    }
    if (!any) {
        den_ = Poly::constant(*F_, 1);
        return;
    }
    for (auto& x : nums_)
        if (!x.is_zero()) x = x.exact_div(g);
    den_ = den_.exact_div(g);
}

long USeries::order() const
{
    for (std::size_t i = 0; i < nums_.size(); ++i)
        if (!nums_[i].is_zero()) return val_ + long(i);
    return prec_;
}

RatF USeries::coeff(long e) const
{
    if (e >= prec_) throw std::out_of_range("coefficient beyond series precision");
    if (e < val_) return RatF(*F_);
    return RatF(nums_[e - val_], den_);
}

Poly USeries::num(long e) const
{
    if (e >= prec_) throw std::out_of_range("coefficient beyond series precision");
    if (e < val_) return Poly(*F_);
    return nums_[e - val_];
}

std::vector<RatF> USeries::coeffs(long lo, long hi) const
{
    std::vector<RatF> r;
    for (long e = lo; e < hi; ++e) r.push_back(coeff(e));
    return r;
}

USeries USeries::operator-() const
{
    USeries r = *this;
    for (auto& x : r.nums_) x = -x;
    return r;
}

void USeries::align(const USeries& b, std::vector<Poly>& mine, std::vector<Poly>& theirs, Poly& den) const
{
    long lo = std::min(val_, b.val_), hi = std::min(prec_, b.prec_);
    std::size_t n = std::size_t(std::max(0L, hi - lo));
    mine.assign(n, Poly(*F_));
    theirs.assign(n, Poly(*F_));
    Poly ma = Poly::constant(*F_, 1), mb = ma;
    if (den_ == b.den_) {
        den = den_;
    } else {
        Poly g = gcd(den_, b.den_);
        ma = b.den_.exact_div(g);
        mb = den_.exact_div(g);
        den = den_ * ma;
    }
    for (long e = lo; e < hi; ++e) {
        if (e >= val_ && !nums_[e - val_].is_zero()) mine[e - lo] = ma.is_one() ? nums_[e - val_] : nums_[e - val_] * ma;
        if (e >= b.val_ && !b.nums_[e - b.val_].is_zero())
            theirs[e - lo] = mb.is_one() ? b.nums_[e - b.val_] : b.nums_[e - b.val_] * mb;
    }
}

USeries USeries::operator+(const USeries& b) const
{
    std::vector<Poly> x, y;
    Poly d;
    align(b, x, y, d);
    USeries r(*F_, std::min(prec_, b.prec_), std::min(val_, b.val_));
    for (std::size_t i = 0; i < r.nums_.size(); ++i) r.nums_[i] = x[i] + y[i];
    r.den_ = d;
    r.normalize();
    return r;
}

USeries USeries::operator-(const USeries& b) const
{
    return *this + (-b);
}

USeries USeries::operator*(const USeries& b) const
{
    long lo = val_ + b.val_;
    long hi = std::min(prec_ + b.val_, b.prec_ + val_);
    USeries r(*F_, hi, std::min(lo, hi));
    if (hi <= lo) return r;
    r.nums_ = mulp(*F_, nums_, b.nums_, std::size_t(hi - lo));
    r.den_ = den_ * b.den_;
    r.normalize();
    return r;
}

USeries USeries::operator*(const RatF& s) const
{
    if (s.is_zero()) return USeries(*F_, prec_, val_);
    USeries r = *this;
    if (!s.num().is_one())
        for (auto& x : r.nums_)
            if (!x.is_zero()) x = x * s.num();
    r.den_ = den_ * s.den();
    r.normalize();
    return r;
}

USeries USeries::inv_unit_newton() const
{
    // nums_[0] is a nonzero constant
    const FiniteField& F = *F_;
    std::size_t n = nums_.size();
    std::vector<Poly> y{Poly::constant(F, F.inv(nums_[0].lead()))};
    std::size_t k = 1;
    while (k < n) {
        std::size_t k2 = std::min(2 * k, n);
        auto t = mulp(F, nums_, y, k2);  // U y = 1 + O(u^k)
        std::vector<Poly> e(k2, Poly(F));
        for (std::size_t i = k; i < k2; ++i) e[i] = -t[i];
        auto corr = mulp(F, y, e, k2);
        y.resize(k2, Poly(F));
        for (std::size_t i = k; i < k2; ++i) y[i] = y[i] + corr[i];
        k = k2;
    }
    USeries r(F, long(n), 0);
    r.nums_ = std::move(y);
    return r;
}

USeries USeries::inv_unit_general() const
{
    // y_m = c_m / P0^{m+1}, c_m = -sum_{i=1}^m U_i c_{m-i} P0^{i-1}
    const FiniteField& F = *F_;
    std::size_t n = nums_.size();
    const Poly& P0 = nums_[0];
    std::vector<Poly> pw{Poly::constant(F, 1)};
    for (std::size_t i = 1; i <= n; ++i) pw.push_back(pw.back() * P0);
    std::vector<Poly> c(n, Poly(F));
    c[0] = Poly::constant(F, 1);
    for (std::size_t m = 1; m < n; ++m) {
        Poly s(F);
        for (std::size_t i = 1; i <= m; ++i)
            if (!nums_[i].is_zero() && !c[m - i].is_zero()) s = s + nums_[i] * c[m - i] * pw[i - 1];
        c[m] = -s;
    }
    std::vector<Poly> nn(n, Poly(F));
    for (std::size_t m = 0; m < n; ++m) nn[m] = c[m] * pw[n - 1 - m];
    return from_polys(F, std::move(nn), pw[n], long(n), 0);
}

USeries USeries::inv() const
{
    long o = order();
    if (o >= prec_) throw std::domain_error("inverse of a series with no known nonzero coefficient");
    USeries unit(*F_, prec_ - o, 0);
    for (long e = o; e < prec_; ++e) unit.nums_[e - o] = nums_[e - val_];
    USeries r = unit.nums_[0].is_constant() ? unit.inv_unit_newton() : unit.inv_unit_general();
    // 1/f = den * u^{-o} / U, known to relative precision prec - o
    r = r * RatF(den_);
    return r.shift(-o);
}

USeries USeries::pow(unsigned long long e) const
{
    if (e == 0) return constant(RatF::constant(*F_, 1), prec_);
    const unsigned q = F_->size();
    const long o = order();
    // nothing of f^{q^i} beyond the final precision survives when o >= 0
    const long bound = o >= 0 && o < prec_ ? prec_ + long(e - 1) * o : -1;
    USeries cur = *this, r;
    bool have = false;
    while (e) {
        unsigned d = unsigned(e % q);
        e /= q;
        if (d) {
            USeries t = cur;
            for (unsigned i = 1; i < d; ++i) t = t * cur;
            r = have ? r * t : t;
            have = true;
        }
        if (e) {
            cur = cur.frobenius();
            if (bound >= 0 && cur.prec_ > bound) cur = cur.truncate(bound);
        }
    }
    return r;
}

USeries USeries::frobenius(unsigned k) const
{
    if (k == 0) return *this;
    long Q = 1;
    for (unsigned i = 0; i < k; ++i) Q *= F_->size();
    USeries r(*F_, prec_ * Q, val_ * Q);
    for (std::size_t i = 0; i < nums_.size(); ++i) {
        if (nums_[i].is_zero()) continue;
        Poly x = nums_[i];
        for (unsigned t = 0; t < k; ++t) x = x.frobenius();
        r.nums_[i * Q] = std::move(x);
    }
    Poly d = den_;
    for (unsigned t = 0; t < k; ++t) d = d.frobenius();
    r.den_ = d;
    return r;
}

USeries USeries::truncate(long prec) const
{
    if (prec >= prec_) return *this;
    if (prec <= val_) return USeries(*F_, prec, prec);
    USeries r = *this;
    r.prec_ = prec;
    r.nums_.resize(std::size_t(prec - val_), Poly(*F_));
    r.normalize();
    return r;
}

USeries USeries::shift(long k) const
{
    USeries r = *this;
    r.val_ += k;
    r.prec_ += k;
    return r;
}

bool USeries::operator==(const USeries& b) const
{
    if (F_ != b.F_) return false;
    std::vector<Poly> x, y;
    Poly d;
    align(b, x, y, d);
    return x == y;
}

std::string USeries::str(long max_terms) const
{
    std::string s;
    long shown = 0;
    for (long e = val_; e < prec_ && shown < max_terms; ++e) {
        RatF c = coeff(e);
        if (c.is_zero()) continue;
        if (!s.empty()) s += " + ";
        s += "(" + c.str() + ")*u^" + std::to_string(e);
        ++shown;
    }
    if (!s.empty()) s += " + ";
    return s + "O(u^" + std::to_string(prec_) + ")";
}

// ---- hyperderivatives ----

namespace {

struct EpsTable {
    unsigned nmax = 0;
    std::vector<std::vector<RatF>> rows;  // rows[m][n] = [ε^n] ẽ^m
};

std::mutex eps_mutex;

std::map<const FiniteField*, EpsTable>& eps_cache()
{
    static std::map<const FiniteField*, EpsTable> c;
    return c;
}

void build(const FiniteField& F, EpsTable& t, unsigned nmax)
{
    const unsigned q = F.size();
    std::vector<std::pair<unsigned, RatF>> e;
    unsigned long long qi = 1;
    for (unsigned i = 0; qi <= nmax; ++i, qi *= q) e.emplace_back(unsigned(qi), RatF(Poly::constant(F, 1), carlitz_d(F, i)));
    t.nmax = nmax;
    t.rows.assign(nmax + 1, std::vector<RatF>(nmax + 1, RatF(F)));
    t.rows[0][0] = RatF::constant(F, 1);
    for (unsigned m = 1; m <= nmax; ++m)
        for (unsigned n = m; n <= nmax; ++n) {
            RatF s(F);
            for (auto& [ex, c] : e) {
                if (ex > n) break;
                const RatF& prev = t.rows[m - 1][n - ex];
                if (!prev.is_zero()) s = s + prev * c;
            }
            t.rows[m][n] = s;
        }
}

}  // namespace

RatF hyper_weight(const FiniteField& F, unsigned m, unsigned n)
{
    if (m > n) return RatF(F);
    std::lock_guard<std::mutex> lock(eps_mutex);
    EpsTable& t = eps_cache()[&F];
    if (n > t.nmax || t.rows.empty()) build(F, t, std::max({n, 2 * t.nmax, 16u}));
    return t.rows[m][n];
}

USeries hyper(unsigned n, const USeries& f)
{
    if (n == 0) return f;
    const FiniteField& F = f.field();
    const unsigned p = F.p(), q = F.size();
    std::vector<std::pair<unsigned, RatF>> w;
    Poly L = Poly::constant(F, 1);
    for (unsigned m = 1; m <= n; ++m) {
        if ((n - m) % (q - 1) != 0) continue;
        RatF e = hyper_weight(F, m, n);
        if (e.is_zero()) continue;
        w.emplace_back(m, e);
        L = lcm(L, e.den());
    }
    const long lo = f.val(), hi = f.prec();
    std::vector<Poly> out(std::size_t(std::max(0L, hi - lo)), Poly(F));
    for (auto& [m, e] : w) {
        Poly Em = e.num() * L.exact_div(e.den());
        for (long j = lo; j + long(m) < hi; ++j) {
            const Poly& a = f.num(j);
            if (a.is_zero()) continue;
            unsigned b = binom_signed_mod_p(-j, m, p);
            if (!b) continue;
            Poly t = a * Em;
            out[j + m - lo] += b == 1 ? t : t * F.from_int(b);
        }
    }
    return USeries::from_polys(F, std::move(out), f.den() * L, hi, lo);
}

USeries goss(const FiniteField& F, unsigned k, long prec)
{
    if (k == 0) throw std::invalid_argument("Goss polynomial index must be at least 1");
    const unsigned n = k - 1, q = F.size();
    std::vector<RatF> c(std::size_t(std::max(0L, prec)), RatF(F));
    bool flip = n % 2 == 1;
    for (unsigned m = 0; m <= n; ++m) {
        if (long(m) + 1 >= prec) break;
        if ((n - m) % (q - 1) != 0) continue;
        RatF e = hyper_weight(F, m, n);
        if (e.is_zero()) continue;
        // binom(-1, m) = (-1)^m
        if ((m % 2 == 1) != flip) e = -e;
        c[m + 1] = e;
    }
    return USeries::from_coeffs(F, c, prec, 0);
}

USeries u_of_az(const Poly& a, long prec)
{
    if (!a.is_monic()) throw std::invalid_argument("u(az) needs a monic a");
    const FiniteField& F = a.field();
    ReversedCarlitz ra = reversed(a);
    if ((long double)ra.norm >= (long double)prec) return USeries(F, prec, prec);
    const long norm = long(ra.norm), n = prec - norm;
    std::vector<Poly> w(static_cast<std::size_t>(n), Poly(F));
    w[0] = Poly::constant(F, 1);
    for (long j = 1; j < n; ++j) {
        Poly s(F);
        for (auto& [e, c] : ra.terms) {
            if (e == 0) continue;
            if (long(e) > j) break;
            if (!w[j - e].is_zero()) s += c * w[j - e];
        }
        w[j] = -s;
    }
    return USeries::from_polys(F, std::move(w), Poly::constant(F, 1), prec, norm);
}

USeries subst_uaz(const USeries& f, const Poly& a, long prec)
{
    if (!a.is_monic()) throw std::invalid_argument("substitution u ↦ u(az) needs a monic a");
    if (f.order() < 0) throw std::invalid_argument("substitution u ↦ u(az) needs a series without negative powers");
    const FiniteField& F = f.field();
    const long double normd = (long double)abs_norm(a);
    long out = prec;
    if (normd * f.prec() < (long double)out) out = long(normd * f.prec());
    if (a.degree() == 0) return f.truncate(out);
    const long norm = long(std::min(normd, (long double)out + 1));
    USeries s = u_of_az(a, out);
    long J = std::min(f.prec() - 1, (out - 1) / norm);
    USeries acc = USeries::constant(RatF(f.num(J)), out);
    for (long j = J - 1; j >= 0; --j) {
        acc = (acc * s).truncate(out);
        Poly c = f.num(j);
        if (!c.is_zero()) acc += USeries::constant(RatF(c), out);
    }
    return acc * RatF(Poly::constant(F, 1), f.den());
}

}  // namespace dmf
