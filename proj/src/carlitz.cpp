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

#include "dmf/carlitz.hpp"

#include <memory>
#include <mutex>
#include <stdexcept>

namespace dmf {

namespace {

std::mutex cache_mutex;

/* C_{θ^i} for i = 0..n-1, per field */
std::map<const FiniteField*, std::vector<std::vector<Poly>>>& theta_power_cache()
{
    static std::map<const FiniteField*, std::vector<std::vector<Poly>>> c;
    return c;
}

std::map<const FiniteField*, std::vector<Poly>>& d_cache()
{
    static std::map<const FiniteField*, std::vector<Poly>> c;
    return c;
}

std::vector<Poly> theta_power_action(const FiniteField& F, unsigned i)
{
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto& tab = theta_power_cache()[&F];
    if (tab.empty()) tab.push_back({Poly::constant(F, 1)});
    const Poly th = Poly::theta(F);
    while (tab.size() <= i) {
        // C_θ ∘ C_{θ^k}: coefficient j becomes θ c_j + c_{j-1}^q
        const auto& prev = tab.back();
        std::vector<Poly> next(prev.size() + 1, Poly(F));
        for (std::size_t j = 0; j < next.size(); ++j) {
            Poly v(F);
            if (j < prev.size()) v = th * prev[j];
            if (j > 0) v = v + prev[j - 1].frobenius();
            next[j] = v;
        }
        tab.push_back(std::move(next));
    }
    return tab[i];
}

}  // namespace

CarlitzPoly carlitz_action(const Poly& a)
{
    const FiniteField& F = a.field();
    CarlitzPoly r;
    r.a = a;
    if (a.is_zero()) return r;
    r.c.assign(a.degree() + 1, Poly(F));
    for (int k = 0; k <= a.degree(); ++k) {
        if (!a[k]) continue;
        auto t = theta_power_action(F, unsigned(k));
        for (std::size_t j = 0; j < t.size(); ++j) r.c[j] = r.c[j] + t[j] * a[k];
    }
    return r;
}

RatF CarlitzPoly::eval(const RatF& x) const
{
    RatF acc = RatF(x.field());
    RatF xp = x;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (!c[i].is_zero()) acc = acc + RatF(c[i]) * xp;
        xp = xp.frobenius();
    }
    return acc;
}

CarlitzPoly CarlitzPoly::compose(const CarlitzPoly& b) const
{
    // (sum c_i τ^i)(sum d_j τ^j) = sum c_i d_j^{q^i} τ^{i+j}
    CarlitzPoly r;
    r.a = a * b.a;
    if (c.empty() || b.c.empty()) return r;
    const FiniteField& F = a.field();
    r.c.assign(c.size() + b.c.size() - 1, Poly(F));
    for (std::size_t i = 0; i < c.size(); ++i) {
        for (std::size_t j = 0; j < b.c.size(); ++j) {
            Poly d = b.c[j];
            for (std::size_t t = 0; t < i; ++t) d = d.frobenius();
            r.c[i + j] = r.c[i + j] + c[i] * d;
        }
    }
    return r;
}

ReversedCarlitz reversed(const Poly& a)
{
    if (a.is_zero()) throw std::invalid_argument("reversed Carlitz polynomial of 0");
    ReversedCarlitz r;
    r.a = a;
    r.norm = abs_norm(a);
    CarlitzPoly C = carlitz_action(a);
    unsigned long long qi = 1;
    std::vector<std::pair<unsigned long long, Poly>> t;
    for (std::size_t i = 0; i < C.c.size(); ++i) {
        if (!C.c[i].is_zero()) t.emplace_back(r.norm - qi, C.c[i]);
        qi *= a.field().size();
    }
    // exponents |a| - q^i decrease with i
    r.terms.assign(t.rbegin(), t.rend());
    return r;
}

std::vector<Poly> ReversedCarlitz::dense(std::size_t n) const
{
    std::vector<Poly> d(n, Poly(a.field()));
    for (auto& [e, c] : terms)
        if (e < n) d[e] = c;
    return d;
}

Poly carlitz_d(const FiniteField& F, unsigned i)
{
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto& tab = d_cache()[&F];
    if (tab.empty()) tab.push_back(Poly::constant(F, 1));
    const Poly th = Poly::theta(F);
    while (tab.size() <= i) {
        std::size_t k = tab.size();
        Poly tq = th;
        for (std::size_t t = 0; t < k; ++t) tq = tq.frobenius();
        tab.push_back((tq - th) * tab.back().frobenius());
    }
    return tab[i];
}

ZetaTable::ZetaTable(const FiniteField& F, unsigned bound) : F_(&F), bound_(bound)
{
    const unsigned q = F.size();
    // y = 1 / (e_C(X)/X), with e_C(X)/X = sum_i X^{q^i - 1}/D_i
    std::vector<std::pair<unsigned, RatF>> g;
    unsigned long long qi = q;
    for (unsigned i = 1; qi - 1 <= bound; ++i, qi *= q) g.emplace_back(unsigned(qi - 1), RatF(Poly::constant(F, 1), carlitz_d(F, i)));
    std::vector<RatF> y(bound + 1, RatF(F));
    y[0] = RatF::constant(F, 1);
    for (unsigned n = 1; n <= bound; ++n) {
        if (n % (q - 1) != 0) continue;
        RatF s(F);
        for (auto& [e, c] : g) {
            if (e > n) break;
            s = s + c * y[n - e];
        }
        y[n] = -s;
        if (!y[n].is_zero()) vals_.emplace(n, y[n]);
    }
}

RatF ZetaTable::at(unsigned k) const
{
    if (k > bound_) throw std::out_of_range("zeta value beyond table bound");
    auto it = vals_.find(k);
    return it == vals_.end() ? RatF(*F_) : it->second;
}

RatF zeta_norm(const FiniteField& F, unsigned k)
{
    if (k == 0) throw std::invalid_argument("zeta_norm needs k >= 1");
    if (k % (F.size() - 1) != 0) return RatF(F);
    return ZetaTable(F, k).at(k);
}

// ---- K_θ ----

CycloElem::CycloElem(const FiniteField& F) : F_(&F), c_(F.size() - 1, RatF(F)) {}

CycloElem::CycloElem(const FiniteField& F, const RatF& c) : CycloElem(F)
{
    c_[0] = c;
}

CycloElem::CycloElem(const FiniteField& F, std::vector<RatF> c) : F_(&F), c_(std::move(c))
{
    const std::size_t r = F.size() - 1;
    if (c_.size() > r) {
        // reduce with λ^{q-1} = -θ
        const RatF mth = RatF(-Poly::theta(F));
        for (std::size_t i = c_.size(); i-- > r;) {
            if (!c_[i].is_zero()) c_[i - r] = c_[i - r] + c_[i] * mth;
        }
    }
    c_.resize(r, RatF(F));
}

CycloElem CycloElem::lambda(const FiniteField& F)
{
    std::vector<RatF> c(2, RatF(F));
    c[1] = RatF::constant(F, 1);
    return CycloElem(F, std::move(c));
}

bool CycloElem::is_zero() const
{
    for (auto& x : c_)
        if (!x.is_zero()) return false;
    return true;
}

CycloElem CycloElem::operator-() const
{
    CycloElem r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

CycloElem CycloElem::operator+(const CycloElem& b) const
{
    CycloElem r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] + b.c_[i];
    return r;
}

CycloElem CycloElem::operator-(const CycloElem& b) const
{
    CycloElem r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] - b.c_[i];
    return r;
}

CycloElem CycloElem::operator*(const CycloElem& b) const
{
    std::vector<RatF> prod(2 * c_.size() - 1, RatF(*F_));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            if (!b.c_[j].is_zero()) prod[i + j] = prod[i + j] + c_[i] * b.c_[j];
    }
    return CycloElem(*F_, std::move(prod));
}

CycloElem CycloElem::operator*(const RatF& s) const
{
    CycloElem r = *this;
    for (auto& x : r.c_) x = x * s;
    return r;
}

namespace {

using KPoly = std::vector<RatF>;  // over K, low first

void ktrim(KPoly& a)
{
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

KPoly ksub(const KPoly& a, const KPoly& b, const FiniteField& F)
{
    KPoly r(std::max(a.size(), b.size()), RatF(F));
    for (std::size_t i = 0; i < r.size(); ++i) {
        RatF x = i < a.size() ? a[i] : RatF(F);
        if (i < b.size()) x = x - b[i];
        r[i] = x;
    }
    ktrim(r);
    return r;
}

KPoly kmul(const KPoly& a, const KPoly& b, const FiniteField& F)
{
    if (a.empty() || b.empty()) return {};
    KPoly r(a.size() + b.size() - 1, RatF(F));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    ktrim(r);
    return r;
}

void kdivmod(KPoly a, const KPoly& b, KPoly& q, KPoly& r, const FiniteField& F)
{
    ktrim(a);
    q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, RatF(F));
    RatF li = b.back().inv();
    while (a.size() >= b.size()) {
        RatF c = a.back() * li;
        std::size_t s = a.size() - b.size();
        q[s] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[s + i] = a[s + i] - c * b[i];
        a.pop_back();
        ktrim(a);
    }
    r = a;
}

}  // namespace

CycloElem CycloElem::inv() const
{
    if (is_zero()) throw std::domain_error("inverse of zero in K_θ");
    const FiniteField& F = *F_;
    const std::size_t n = c_.size();
    KPoly m(n + 1, RatF(F));
    m[0] = RatF(Poly::theta(F));
    m[n] = RatF::constant(F, 1);
    KPoly a = c_;
    ktrim(a);
    // extended Euclid: track s with s*a ≡ r (mod m)
    KPoly r0 = m, r1 = a, s0, s1{RatF::constant(F, 1)};
    while (!r1.empty()) {
        KPoly qq, rr;
        kdivmod(r0, r1, qq, rr, F);
        KPoly s2 = ksub(s0, kmul(qq, s1, F), F);
        r0 = std::move(r1);
        r1 = std::move(rr);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r0 is a nonzero constant since the modulus is irreducible
    if (r0.size() != 1) throw std::logic_error("λ-modulus not coprime to element");
    RatF ci = r0[0].inv();
    for (auto& x : s0) x = x * ci;
    return CycloElem(F, s0);
}

CycloElem CycloElem::pow(long long e) const
{
    if (e < 0) return inv().pow(-e);
    CycloElem r = one(*F_), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

std::string CycloElem::str() const
{
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        if (!s.empty()) s += " + ";
        s += "(" + c_[i].str() + ")";
        if (i == 1) s += "*λ";
        else if (i > 1) s += "*λ^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
}

}  // namespace dmf
