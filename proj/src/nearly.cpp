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

#include "dmf/nearly.hpp"

#include <memory>
#include <mutex>
#include <set>

#include "dmf/binom.hpp"

namespace dmf {

namespace {

RatF rint(const FiniteField& F, long v)
{
    return RatF::from_int(F, v);
}

FormPoly ypow(const FiniteField& F, unsigned e)
{
    return FormPoly::var(F, VY, e);
}

}  // namespace

// ---- NHForm ----

NHForm::NHForm(FormPoly p, long weight, long type) : p_(std::move(p)), k_(weight), m_(0)
{
    if (p_.degree(VX)) throw std::invalid_argument("nearly holomorphic forms do not contain X");
    GradedForm check(p_, weight, type);  // validates every monomial
    m_ = check.type();
}

NHForm NHForm::modular(FormPoly p, long weight, long type)
{
    NHForm f(std::move(p), weight, type);
    if (2 * f.depth() > weight)
        throw std::invalid_argument("depth " + std::to_string(f.depth()) + " exceeds half the weight " +
                                    std::to_string(weight));
    return f;
}

NHForm NHForm::operator+(const NHForm& b) const
{
    if (k_ != b.k_ || m_ != b.m_) throw std::invalid_argument("sum of forms of different weight or type");
    return NHForm(p_ + b.p_, k_, m_);
}

NHForm NHForm::operator-(const NHForm& b) const
{
    if (k_ != b.k_ || m_ != b.m_) throw std::invalid_argument("difference of forms of different weight or type");
    return NHForm(p_ - b.p_, k_, m_);
}

NHForm NHForm::operator*(const NHForm& b) const
{
    return NHForm(p_ * b.p_, k_ + b.k_, m_ + b.m_);
}

long NHSeries::depth() const
{
    long d = -1;
    for (auto& [i, s] : y)
        if (!s.is_zero()) d = std::max(d, long(i));
    return d;
}

bool NHSeries::operator==(const NHSeries& b) const
{
    std::set<unsigned> keys;
    for (auto& [i, s] : y) keys.insert(i);
    for (auto& [i, s] : b.y) keys.insert(i);
    for (unsigned i : keys) {
        auto a = y.find(i), c = b.y.find(i);
        if (a == y.end()) {
            if (!c->second.is_zero()) return false;
        } else if (c == b.y.end()) {
            if (!a->second.is_zero()) return false;
        } else if (a->second != c->second) {
            return false;
        }
    }
    return true;
}

NHSeries to_series(const NHForm& f, long prec)
{
    NHSeries s;
    s.weight = f.weight();
    s.type = f.type();
    for (long i = 0; i <= f.depth(); ++i) s.y[unsigned(i)] = expand(f.coeff(unsigned(i)), prec);
    return s;
}

NHSeries operator+(const NHSeries& a, const NHSeries& b)
{
    NHSeries r = a;
    if (a.y.empty()) r.weight = b.weight, r.type = b.type;
    for (auto& [i, s] : b.y) {
        auto it = r.y.find(i);
        if (it == r.y.end()) r.y.emplace(i, s);
        else it->second += s;
    }
    return r;
}

NHSeries operator*(const NHSeries& a, const NHSeries& b)
{
    NHSeries r;
    r.weight = a.weight + b.weight;
    r.type = a.type + b.type;
    for (auto& [i, s] : a.y)
        for (auto& [j, t] : b.y) {
            USeries st = s * t;
            auto it = r.y.find(i + j);
            if (it == r.y.end()) r.y.emplace(i + j, st);
            else it->second += st;
        }
    return r;
}

NHSeries operator*(const NHSeries& a, const RatF& s)
{
    NHSeries r = a;
    for (auto& [i, t] : r.y) t = t * s;
    return r;
}

NHSeries nh_constant(const USeries& f, long weight, long type)
{
    NHSeries r;
    r.weight = weight;
    r.type = type;
    r.y.emplace(0u, f);
    return r;
}

NHForm e2(const FiniteField& F)
{
    return NHForm(FormPoly::var(F, VE) - FormPoly::var(F, VY), 2, 1);
}

// ---- symbolic hyperderivatives ----

namespace {

struct GenInfo {
    long weight, type;
};

GenInfo gen_info(unsigned q, Var v)
{
    switch (v) {
        case VG:
            return {long(q) - 1, 0};
        case VH:
            return {long(q) + 1, 1};
        case VE:
            return {2, 1};
        default:
            throw std::invalid_argument("not a generator with a u-expansion");
    }
}

// ∂^t of a generator from the nearly holomorphic model
FormPoly peel_derivative(const FiniteField& F, Var v, unsigned t)
{
    const unsigned q = F.size();
    GenInfo gi = gen_info(q, v);
    FormPoly G = FormPoly::var(F, v);
    if (t == 0) return G;
    const long w = gi.weight + 2 * long(t);
    const long P = 2 * w + 3 * long(q) + 24;
    NHForm nh = inverse_iota(GradedForm(G, gi.weight, gi.type));
    NHSeries d = maass_shimura(to_series(nh, P), gi.weight, t);
    Decomposition dec = decompose(d);
    if (!dec.ok)
        throw std::logic_error("δ-image of a generator does not decompose at layer " +
                               std::to_string(dec.failed_layer) + ": " + dec.detail);
    FormPoly r = dec.quasi_modular(F);
    if (expand(r, P) != hyper(t, expand(G, P)))
        throw std::logic_error("symbolic derivative of order " + std::to_string(t) + " disagrees with the series");
    return r;
}

using Vec = std::vector<FormPoly>;
using VecPtr = std::shared_ptr<const Vec>;

std::recursive_mutex sym_mutex;

std::map<std::pair<const FiniteField*, unsigned>, Vec>& gen_cache()
{
    static std::map<std::pair<const FiniteField*, unsigned>, Vec> c;
    return c;
}

std::map<std::pair<const FiniteField*, Exps>, VecPtr>& mono_cache()
{
    static std::map<std::pair<const FiniteField*, Exps>, VecPtr> c;
    return c;
}

Vec convolve(const FiniteField& F, const Vec& a, const Vec& b, unsigned n)
{
    Vec r(n + 1, FormPoly(F));
    for (unsigned i = 0; i <= n; ++i) {
        if (a[i].is_zero()) continue;
        for (unsigned j = 0; i + j <= n; ++j)
            if (!b[j].is_zero()) r[i + j] += a[i] * b[j];
    }
    return r;
}

VecPtr var_vec(const FiniteField& F, Var v, unsigned n)
{
    if (v == VX) {
        // ∂^s X = (-1)^s X^{s+1}
        Vec r;
        for (unsigned s = 0; s <= n; ++s) r.push_back(FormPoly::var(F, VX, s + 1) * rint(F, s % 2 ? -1 : 1));
        return std::make_shared<Vec>(std::move(r));
    }
    return std::make_shared<Vec>(generator_derivatives(F, v, n));
}

VecPtr mono_vec(const FiniteField& F, const Exps& e, unsigned n)
{
    std::lock_guard<std::recursive_mutex> lock(sym_mutex);
    auto key = std::make_pair(&F, e);
    auto it = mono_cache().find(key);
    if (it != mono_cache().end() && it->second->size() >= n + 1) return it->second;
    VecPtr r;
    int v = -1;
    for (int i = 0; i < 5; ++i)
        if (e[i]) {
            v = i;
            break;
        }
    if (v == VY) throw std::invalid_argument("Y has no Hasse action");
    if (v < 0) {
        Vec one(n + 1, FormPoly(F));
        one[0] = FormPoly::constant(RatF::constant(F, 1));
        r = std::make_shared<Vec>(std::move(one));
    } else {
        Exps rest = e;
        --rest[v];
        bool single = true;
        for (int i = 0; i < 5; ++i)
            if (rest[i]) single = false;
        if (single) {
            r = var_vec(F, Var(v), n);
        } else {
            VecPtr a = mono_vec(F, rest, n);
            VecPtr b = var_vec(F, Var(v), n);
            r = std::make_shared<Vec>(convolve(F, *a, *b, n));
        }
    }
    mono_cache()[key] = r;
    return r;
}

}  // namespace

std::vector<FormPoly> generator_derivatives(const FiniteField& F, Var v, unsigned n)
{
    if (v != VG && v != VH && v != VE) throw std::invalid_argument("generator_derivatives needs g, h or E");
    std::lock_guard<std::recursive_mutex> lock(sym_mutex);
    Vec& c = gen_cache()[{&F, unsigned(v)}];
    while (c.size() < n + 1) c.push_back(peel_derivative(F, v, unsigned(c.size())));
    return Vec(c.begin(), c.begin() + long(n) + 1);
}

std::vector<FormPoly> hyper_all(const FormPoly& f, unsigned n)
{
    const FiniteField& F = f.field();
    if (f.degree(VY)) throw std::invalid_argument("Y has no Hasse action");
    Vec r(n + 1, FormPoly(F));
    for (auto& [e, c] : f.terms()) {
        VecPtr m = mono_vec(F, e, n);
        for (unsigned t = 0; t <= n; ++t)
            if (!(*m)[t].is_zero()) r[t] += (*m)[t] * c;
    }
    return r;
}

FormPoly symbolic_hyper(unsigned n, const FormPoly& f)
{
    return hyper_all(f, n)[n];
}

// ---- Maass-Shimura ----

namespace {

unsigned shimura_weight(unsigned p, long k, long mu, unsigned r, unsigned i, long perturb)
{
    long top = k - mu + long(r) - 1;
    long b = binom_signed_mod_p(top, i, p);
    if (i == 1) b += perturb;
    b %= long(p);
    return unsigned(b < 0 ? b + long(p) : b);
}

void check_mu(long k, long mu)
{
    if (k < 2 * mu)
        throw std::invalid_argument("Maass-Shimura operator needs k >= 2μ; got k = " + std::to_string(k) +
                                    ", μ = " + std::to_string(mu));
}

}  // namespace

FormPoly maass_shimura(const FormPoly& f, long k, unsigned r, long perturb)
{
    const FiniteField& F = f.field();
    if (r == 0) return f;
    const unsigned p = F.p();
    FormPoly out(F);
    for (unsigned mu = 0; mu <= f.degree(VY); ++mu) {
        FormPoly fm = f.part(VY, mu);
        if (fm.is_zero()) continue;
        check_mu(k, mu);
        Vec d = hyper_all(fm, r);
        for (unsigned i = 0; i <= r; ++i) {
            unsigned b = shimura_weight(p, k, mu, r, i, perturb);
            if (!b || d[r - i].is_zero()) continue;
            out += d[r - i] * ypow(F, mu + i) * rint(F, b);
        }
    }
    return out;
}

NHForm maass_shimura(const NHForm& f, long k, unsigned r)
{
    return NHForm(maass_shimura(f.poly(), k, r), f.weight() + 2 * long(r), f.type() + long(r));
}

NHSeries maass_shimura(const NHSeries& f, long k, unsigned r)
{
    if (r == 0) return f;
    NHSeries out;
    out.weight = f.weight + 2 * long(r);
    out.type = f.type + long(r);
    for (auto& [mu, s] : f.y) {
        if (s.is_zero()) continue;
        check_mu(k, mu);
        const FiniteField& F = s.field();
        for (unsigned i = 0; i <= r; ++i) {
            unsigned b = shimura_weight(F.p(), k, mu, r, i, 0);
            if (!b) continue;
            USeries t = hyper(r - i, s) * rint(F, b);
            auto it = out.y.find(mu + i);
            if (it == out.y.end()) out.y.emplace(mu + i, t);
            else it->second += t;
        }
    }
    return out;
}

// ---- ι and decomposition ----

GradedForm iota(const NHForm& f)
{
    return GradedForm(f.coeff(0), f.weight(), f.type());
}

NHForm inverse_iota(const GradedForm& f)
{
    if (f.poly().degree(VY) || f.poly().degree(VX)) throw std::invalid_argument("inverse_iota needs a polynomial in g, h, E");
    const FiniteField& F = f.field();
    return NHForm(f.poly().substitute(VE, FormPoly::var(F, VE) - FormPoly::var(F, VY)), f.weight(), f.type());
}

FormPoly Decomposition::quasi_modular(const FiniteField& F) const
{
    FormPoly r(F);
    for (std::size_t j = 0; j < g.size(); ++j) r += g[j] * FormPoly::var(F, VE, unsigned(j));
    return r;
}

Decomposition decompose(const NHSeries& f)
{
    Decomposition out;
    const USeries* any = nullptr;
    long prec = -1;
    for (auto& [i, s] : f.y) {
        any = &s;
        prec = prec < 0 ? s.prec() : std::min(prec, s.prec());
    }
    if (!any) {
        out.ok = true;
        return out;
    }
    const FiniteField& F = any->field();
    const unsigned p = F.p();
    const long R = f.depth();
    if (R < 0) {
        out.ok = true;
        out.g.assign(1, FormPoly(F));
        return out;
    }
    std::vector<USeries> res(std::size_t(R) + 1, USeries(F, prec));
    for (auto& [i, s] : f.y)
        if (long(i) <= R) res[i] = s.truncate(prec);
    USeries E = generators(F, prec).E.truncate(prec);
    std::vector<USeries> Epow{USeries::constant(RatF::constant(F, 1), prec)};
    for (long j = 1; j <= R; ++j) Epow.push_back((Epow.back() * E).truncate(prec));
    out.g.assign(std::size_t(R) + 1, FormPoly(F));
    for (long r = R; r >= 0; --r) {
        USeries gr = res[std::size_t(r)] * rint(F, r % 2 ? -1 : 1);
        if (gr.is_zero()) continue;
        const long k = f.weight - 2 * r;
        if (k < 0) {
            out.failed_layer = r;
            out.layer_status = Membership::not_member;
            out.detail = "negative weight at layer " + std::to_string(r);
            return out;
        }
        Membership m = membership(gr, k, f.type - r);
        if (m.status != Membership::member) {
            out.failed_layer = r;
            out.layer_status = m.status;
            out.detail = "layer " + std::to_string(r) + " is not modular of weight " + std::to_string(k) +
                         " (first bad coefficient u^" + std::to_string(m.first_bad) + ")";
            return out;
        }
        out.g[std::size_t(r)] = m.poly;
        // subtract g_r (E - Y)^r
        for (long i = 0; i <= r; ++i) {
            unsigned b = binom_mod_p(r, i, p);
            if (!b) continue;
            RatF c = rint(F, i % 2 ? -long(b) : long(b));
            res[std::size_t(i)] -= (gr * Epow[std::size_t(r - i)]).truncate(prec) * c;
        }
    }
    for (long i = 0; i <= R; ++i)
        if (!res[std::size_t(i)].is_zero()) {
            out.failed_layer = i;
            out.layer_status = Membership::inconsistent_truncation;
            out.detail = "residual left at Y^" + std::to_string(i);
            return out;
        }
    out.ok = true;
    return out;
}

Decomposition decompose(const NHForm& f, long prec)
{
    return decompose(to_series(f, prec));
}

// ---- formal equivariance ----

namespace {

using XYSeries = std::map<std::pair<long, unsigned>, USeries>;

XYSeries xy_expand(const FormPoly& f, long prec)
{
    XYSeries r;
    for (unsigned l = 0; l <= f.degree(VX); ++l) {
        FormPoly fl = f.part(VX, l);
        for (unsigned mu = 0; mu <= fl.degree(VY); ++mu) {
            FormPoly c = fl.part(VY, mu);
            if (!c.is_zero()) r.emplace(std::make_pair(long(l), mu), expand(c, prec));
        }
    }
    return r;
}

bool xy_equal(const XYSeries& a, const XYSeries& b, std::string& where)
{
    std::set<std::pair<long, unsigned>> keys;
    for (auto& [k, v] : a) keys.insert(k);
    for (auto& [k, v] : b) keys.insert(k);
    for (auto& k : keys) {
        auto x = a.find(k), y = b.find(k);
        bool ok = x == a.end() ? y->second.is_zero() : y == b.end() ? x->second.is_zero() : x->second == y->second;
        if (!ok) {
            where = "X^" + std::to_string(k.first) + " Y^" + std::to_string(k.second);
            return false;
        }
    }
    return true;
}

}  // namespace

EquivarianceResult formal_equivariance_check(const FormPoly& f, long k, unsigned r, long prec, long perturb)
{
    const FiniteField& F = f.field();
    EquivarianceResult out;
    FormPoly sl = formal_slash(f);
    FormPoly rhs = formal_slash(maass_shimura(f, k, r));
    out.symbolic = maass_shimura(sl, k, r, perturb) == rhs;

    // series route: X carries the Hasse action through hasse_on_X only
    XYSeries in = xy_expand(sl, prec), lhs;
    std::map<unsigned, XPoly> bymu;
    for (auto& [key, s] : in) bymu[key.second].emplace(key.first, s);
    for (auto& [mu, P] : bymu) {
        check_mu(k, mu);
        for (unsigned i = 0; i <= r; ++i) {
            unsigned b = r == 0 ? (i == 0) : shimura_weight(F.p(), k, mu, r, i, perturb);
            if (!b) continue;
            XPoly d = hasse_on_X(r - i, P);
            for (auto& [l, s] : d) {
                auto key = std::make_pair(l, mu + i);
                USeries t = s * rint(F, b);
                auto it = lhs.find(key);
                if (it == lhs.end()) lhs.emplace(key, t);
                else it->second += t;
            }
        }
    }
    std::string where;
    out.series = xy_equal(lhs, xy_expand(rhs, prec), where);
    if (!out.symbolic) out.detail = "symbolic sides differ";
    if (!out.series) out.detail += (out.detail.empty() ? "" : "; ") + std::string("series sides differ at ") + where;
    return out;
}

// ---- combinatorial kernels ----

unsigned shimura_kernel(unsigned p, long k, long r, long j, long l)
{
    long s = 0;
    for (long i = 0; i <= r; ++i) {
        long b1 = binom_signed_mod_p(k + r - 1, i, p);
        long b2 = r - j - i < 0 ? 0 : binom_signed_mod_p(k + r - 1 - i, r - j - i, p);
        long b3 = l < 0 ? 0 : binom_signed_mod_p(i, l, p);
        long t = b1 * b2 % long(p) * b3 % long(p);
        s += (i - l) % 2 ? -t : t;
    }
    s %= long(p);
    return unsigned(s < 0 ? s + long(p) : s);
}

unsigned reslash_kernel(unsigned p, long r, long i)
{
    long s = 0;
    for (long j = 1; j <= i; ++j) {
        long t = binom_signed_mod_p(r - (i - j), j, p) * long(binom_signed_mod_p(r, i - j, p)) % long(p);
        s += j % 2 ? -t : t;
    }
    s %= long(p);
    return unsigned(s < 0 ? s + long(p) : s);
}

}  // namespace dmf
