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

#include "dmf/poly.hpp"

#include <gmp.h>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace dmf {

static_assert(GMP_NUMB_BITS == 64, "Kronecker packing assumes 64-bit limbs");

namespace kernel {

void trim(std::vector<Fe>& a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

namespace {

/* t^l mod f as digit vectors, for l < 2n-1, where F = F_p[t]/(f) */
struct Reducer {
    unsigned p, n, tl;
    std::vector<std::vector<unsigned>> rep;
    explicit Reducer(const FiniteField& F) : p(F.p()), n(F.degree()), tl(2 * F.degree() - 1)
    {
        rep.resize(tl);
        const auto& f = F.modulus();  // monic, over F_p when n > 1
        std::vector<unsigned> cur(n, 0);
        cur[0] = 1;
        for (unsigned l = 0; l < tl; ++l) {
            rep[l] = cur;
            if (n == 1) continue;
            // multiply by t
            unsigned top = cur[n - 1];
            for (unsigned k = n - 1; k > 0; --k) cur[k] = cur[k - 1];
            cur[0] = 0;
            if (top)
                for (unsigned k = 0; k < n; ++k) cur[k] = (cur[k] + (p - f[k]) * top) % p;
        }
    }
    /* s holds tl sums (already reduced mod p) */
    Fe reduce(const unsigned* s) const
    {
        if (n == 1) return Fe(s[0]);
        unsigned d[16] = {0};
        for (unsigned l = 0; l < tl; ++l)
            if (s[l])
                for (unsigned k = 0; k < n; ++k) d[k] = (d[k] + s[l] * rep[l][k]) % p;
        unsigned x = 0;
        for (unsigned k = n; k-- > 0;) x = x * p + d[k];
        return Fe(x);
    }
};

const Reducer& reducer(const FiniteField& F)
{
    // one reducer per prime-level field; F is interned so keying by address is stable
    thread_local std::vector<std::pair<const FiniteField*, Reducer>> cache;
    for (auto& e : cache)
        if (e.first == &F) return e.second;
    cache.emplace_back(&F, Reducer(F));
    return cache.back().second;
}

std::size_t max_len(const std::vector<const std::vector<Fe>*>& A)
{
    std::size_t m = 0;
    for (auto* a : A)
        if (a) m = std::max(m, a->size());
    return m;
}

unsigned bitlen(unsigned long long v)
{
    unsigned b = 0;
    while (v) {
        ++b;
        v >>= 1;
    }
    return b;
}

inline void put_bits(mp_limb_t* L, std::size_t pos, unsigned long long v)
{
    std::size_t idx = pos >> 6;
    unsigned off = unsigned(pos & 63);
    L[idx] |= mp_limb_t(v) << off;
    if (off) L[idx + 1] |= mp_limb_t(v) >> (64 - off);
}

inline unsigned long long get_bits(const mp_limb_t* L, std::size_t nl, std::size_t pos, unsigned b)
{
    std::size_t idx = pos >> 6;
    if (idx >= nl) return 0;
    unsigned off = unsigned(pos & 63);
    unsigned long long v = L[idx] >> off;
    if (off && off + b > 64 && idx + 1 < nl) v |= (unsigned long long)L[idx + 1] << (64 - off);
    if (b < 64) v &= (1ULL << b) - 1;
    return v;
}

std::vector<std::vector<Fe>> conv_field(const FiniteField& F, const std::vector<const std::vector<Fe>*>& A,
                                        const std::vector<const std::vector<Fe>*>& B, std::size_t nout)
{
    std::vector<std::vector<Fe>> out(nout);
    for (std::size_t k = 0; k < nout; ++k) {
        auto& o = out[k];
        for (std::size_t i = 0; i <= k && i < A.size(); ++i) {
            std::size_t j = k - i;
            if (j >= B.size() || !A[i] || !B[j] || A[i]->empty() || B[j]->empty()) continue;
            const auto& a = *A[i];
            const auto& b = *B[j];
            if (o.size() < a.size() + b.size() - 1) o.resize(a.size() + b.size() - 1, 0);
            for (std::size_t x = 0; x < a.size(); ++x) {
                if (!a[x]) continue;
                for (std::size_t y = 0; y < b.size(); ++y)
                    if (b[y]) o[x + y] = F.add(o[x + y], F.mul(a[x], b[y]));
            }
        }
        trim(o);
    }
    return out;
}

/* direct convolution over (u, θ, t-digit) with 64-bit accumulators */
std::vector<std::vector<Fe>> conv_direct(const FiniteField& F, const std::vector<const std::vector<Fe>*>& A,
                                         const std::vector<const std::vector<Fe>*>& B, std::size_t nout)
{
    const unsigned p = F.p();
    std::vector<std::vector<Fe>> out(nout);
    if (F.is_prime()) {
        std::vector<unsigned long long> acc;
        for (std::size_t k = 0; k < nout; ++k) {
            std::size_t len = 0;
            for (std::size_t i = 0; i <= k && i < A.size(); ++i) {
                std::size_t j = k - i;
                if (j >= B.size() || !A[i] || !B[j] || A[i]->empty() || B[j]->empty()) continue;
                len = std::max(len, A[i]->size() + B[j]->size() - 1);
            }
            if (!len) continue;
            acc.assign(len, 0);
            for (std::size_t i = 0; i <= k && i < A.size(); ++i) {
                std::size_t j = k - i;
                if (j >= B.size() || !A[i] || !B[j]) continue;
                const auto& a = *A[i];
                const auto& b = *B[j];
                for (std::size_t x = 0; x < a.size(); ++x) {
                    unsigned long long ax = a[x];
                    if (!ax) continue;
                    unsigned long long* dst = acc.data() + x;
                    for (std::size_t y = 0; y < b.size(); ++y) dst[y] += ax * b[y];
                }
                // keep the accumulators bounded for very long inputs
                if (a.size() > (1u << 20)) {
                    for (auto& v : acc) v %= p;
                }
            }
            auto& o = out[k];
            o.resize(len);
            for (std::size_t x = 0; x < len; ++x) o[x] = Fe(acc[x] % p);
            trim(o);
        }
        return out;
    }
    const Reducer& R = reducer(F);
    const unsigned n = R.n, tl = R.tl;
    std::vector<unsigned long long> acc;
    std::vector<unsigned> da, db, s(tl);
    for (std::size_t k = 0; k < nout; ++k) {
        std::size_t len = 0;
        for (std::size_t i = 0; i <= k && i < A.size(); ++i) {
            std::size_t j = k - i;
            if (j >= B.size() || !A[i] || !B[j] || A[i]->empty() || B[j]->empty()) continue;
            len = std::max(len, A[i]->size() + B[j]->size() - 1);
        }
        if (!len) continue;
        acc.assign(len * tl, 0);
        for (std::size_t i = 0; i <= k && i < A.size(); ++i) {
            std::size_t j = k - i;
            if (j >= B.size() || !A[i] || !B[j]) continue;
            const auto& a = *A[i];
            const auto& b = *B[j];
            da.assign(a.size() * n, 0);
            db.assign(b.size() * n, 0);
            for (std::size_t x = 0; x < a.size(); ++x) {
                unsigned v = a[x];
                for (unsigned l = 0; l < n; ++l, v /= p) da[x * n + l] = v % p;
            }
            for (std::size_t y = 0; y < b.size(); ++y) {
                unsigned v = b[y];
                for (unsigned l = 0; l < n; ++l, v /= p) db[y * n + l] = v % p;
            }
            for (std::size_t x = 0; x < a.size(); ++x) {
                if (!a[x]) continue;
                for (std::size_t y = 0; y < b.size(); ++y) {
                    if (!b[y]) continue;
                    unsigned long long* dst = acc.data() + (x + y) * tl;
                    for (unsigned l1 = 0; l1 < n; ++l1) {
                        unsigned long long v1 = da[x * n + l1];
                        if (!v1) continue;
                        for (unsigned l2 = 0; l2 < n; ++l2) dst[l1 + l2] += v1 * db[y * n + l2];
                    }
                }
            }
        }
        auto& o = out[k];
        o.resize(len);
        for (std::size_t x = 0; x < len; ++x) {
            for (unsigned l = 0; l < tl; ++l) s[l] = unsigned(acc[x * tl + l] % p);
            o[x] = R.reduce(s.data());
        }
        trim(o);
    }
    return out;
}

std::vector<std::vector<Fe>> conv_kronecker(const FiniteField& F, const std::vector<const std::vector<Fe>*>& A,
                                            const std::vector<const std::vector<Fe>*>& B, std::size_t nout)
{
    const unsigned p = F.p();
    const unsigned n = F.degree();
    const unsigned tl = 2 * n - 1;
    const std::size_t DA = max_len(A), DB = max_len(B);  // lengths, not degrees
    const std::size_t NA = std::min(A.size(), nout), NB = std::min(B.size(), nout);
    const std::size_t D = DA + DB - 1;  // product length in θ
    const std::size_t S = D * tl;       // slots per outer index
    unsigned long long count = std::min<unsigned long long>((unsigned long long)NA * DA * n,
                                                            (unsigned long long)NB * DB * n);
    unsigned long long maxv = count * (unsigned long long)(p - 1) * (p - 1);
    unsigned b = std::max(1u, bitlen(maxv));
    if (b > 62) return conv_direct(F, A, B, nout);

    auto pack = [&](const std::vector<const std::vector<Fe>*>& X, std::size_t NX, std::size_t& nl) {
        std::size_t slots = (NX - 1) * S + DA * tl + DB * tl + 1;
        nl = (slots * b + 63) / 64 + 2;
        std::vector<mp_limb_t> L(nl, 0);
        for (std::size_t i = 0; i < NX; ++i) {
            if (!X[i]) continue;
            const auto& x = *X[i];
            for (std::size_t j = 0; j < x.size(); ++j) {
                unsigned v = x[j];
                if (!v) continue;
                std::size_t base = i * S + j * tl;
                if (n == 1) {
                    put_bits(L.data(), base * b, v);
                } else {
                    for (unsigned l = 0; l < n; ++l, v /= p)
                        if (v % p) put_bits(L.data(), (base + l) * b, v % p);
                }
            }
        }
        while (nl > 1 && L[nl - 1] == 0) --nl;
        L.resize(std::max<std::size_t>(nl, 1));
        return L;
    };
    std::size_t na, nb;
    auto LA = pack(A, NA, na);
    auto LB = pack(B, NB, nb);
    std::vector<std::vector<Fe>> out(nout);
    bool za = (na == 1 && LA[0] == 0), zb = (nb == 1 && LB[0] == 0);
    if (za || zb) return out;
    std::size_t nc = na + nb;
    std::vector<mp_limb_t> LC(nc, 0);
    if (na >= nb)
        mpn_mul(LC.data(), LA.data(), na, LB.data(), nb);
    else
        mpn_mul(LC.data(), LB.data(), nb, LA.data(), na);

    const Reducer* R = n > 1 ? &reducer(F) : nullptr;
    std::vector<unsigned> s(tl);
    for (std::size_t k = 0; k < nout; ++k) {
        std::size_t base = k * S;
        if (base * b >= nc * 64) break;
        auto& o = out[k];
        o.assign(D, 0);
        for (std::size_t j = 0; j < D; ++j) {
            if (n == 1) {
                o[j] = Fe(get_bits(LC.data(), nc, (base + j) * b, b) % p);
            } else {
                for (unsigned l = 0; l < tl; ++l)
                    s[l] = unsigned(get_bits(LC.data(), nc, (base + j * tl + l) * b, b) % p);
                o[j] = R->reduce(s.data());
            }
        }
        trim(o);
    }
    return out;
}

}  // namespace

std::vector<std::vector<Fe>> mul2(const FiniteField& F, const std::vector<const std::vector<Fe>*>& A,
                                  const std::vector<const std::vector<Fe>*>& B, std::size_t nout)
{
    if (A.empty() || B.empty() || nout == 0) return std::vector<std::vector<Fe>>(nout);
    std::size_t DA = max_len(A), DB = max_len(B);
    if (DA == 0 || DB == 0) return std::vector<std::vector<Fe>>(nout);
    // the digit kernels need F = F_p[t]/(f); towers over a non-prime base use field arithmetic
    if (F.base() && !F.base()->is_prime()) return conv_field(F, A, B, nout);
    std::size_t NA = std::min(A.size(), nout), NB = std::min(B.size(), nout);
    // rough work estimate of the direct method
    double direct = double(std::min(NA * NB, NA * nout)) * double(DA) * double(DB);
    if (direct < 20000.0) return conv_direct(F, A, B, nout);
    return conv_kronecker(F, A, B, nout);
}

std::vector<Fe> mul(const FiniteField& F, const std::vector<Fe>& a, const std::vector<Fe>& b)
{
    if (a.empty() || b.empty()) return {};
    std::vector<const std::vector<Fe>*> A{&a}, B{&b};
    auto r = mul2(F, A, B, 1);
    return std::move(r[0]);
}

}  // namespace kernel

Poly::Poly(const FiniteField& F, std::vector<Fe> c) : F_(&F), c_(std::move(c))
{
    trim();
}

void Poly::trim()
{
    kernel::trim(c_);
}

Poly Poly::constant(const FiniteField& F, Fe c)
{
    return Poly(F, std::vector<Fe>{c});
}

Poly Poly::monomial(const FiniteField& F, Fe c, unsigned e)
{
    std::vector<Fe> v(e + 1, 0);
    v[e] = c;
    return Poly(F, std::move(v));
}

namespace {
const FiniteField& pick(const Poly& a, const Poly& b)
{
    if (a.field_ptr()) return a.field();
    if (b.field_ptr()) return b.field();
    throw std::logic_error("polynomial without a coefficient field");
}
}  // namespace

Poly Poly::operator-() const
{
    if (!F_) return *this;
    std::vector<Fe> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = F_->neg(c_[i]);
    return Poly(*F_, std::move(r));
}

Poly Poly::operator+(const Poly& b) const
{
    if (b.c_.empty()) return F_ ? *this : Poly(pick(*this, b));
    if (c_.empty()) return b;
    const FiniteField& F = *F_;
    std::vector<Fe> r(std::max(c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.add((*this)[i], b[i]);
    return Poly(F, std::move(r));
}

Poly Poly::operator-(const Poly& b) const
{
    if (b.c_.empty()) return F_ ? *this : Poly(pick(*this, b));
    if (c_.empty()) return -b;
    const FiniteField& F = *F_;
    std::vector<Fe> r(std::max(c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.sub((*this)[i], b[i]);
    return Poly(F, std::move(r));
}

Poly Poly::operator*(const Poly& b) const
{
    const FiniteField& F = pick(*this, b);
    if (c_.empty() || b.c_.empty()) return Poly(F);
    if (c_.size() == 1) return b * c_[0];
    if (b.c_.size() == 1) return *this * b.c_[0];
    return Poly(F, kernel::mul(F, c_, b.c_));
}

Poly Poly::operator*(Fe s) const
{
    if (!F_) return *this;
    if (s == 0) return Poly(*F_);
    if (s == 1) return *this;
    std::vector<Fe> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = F_->mul(c_[i], s);
    return Poly(*F_, std::move(r));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& b) const
{
    if (b.c_.empty()) throw std::domain_error("polynomial division by zero");
    const FiniteField& F = pick(*this, b);
    if (c_.size() < b.c_.size()) return {Poly(F), *this};
    std::vector<Fe> r = c_;
    std::vector<Fe> qv(c_.size() - b.c_.size() + 1, 0);
    const Fe li = F.inv(b.c_.back());
    const std::size_t m = b.c_.size();
    if (F.is_prime()) {
        const unsigned p = F.p();
        for (std::size_t k = qv.size(); k-- > 0;) {
            unsigned c = (unsigned long long)r[k + m - 1] * li % p;
            qv[k] = Fe(c);
            if (!c) continue;
            unsigned nc = p - c;
            for (std::size_t i = 0; i < m; ++i)
                r[k + i] = Fe((r[k + i] + (unsigned long long)nc * b.c_[i]) % p);
        }
    } else {
        for (std::size_t k = qv.size(); k-- > 0;) {
            Fe c = F.mul(r[k + m - 1], li);
            qv[k] = c;
            if (!c) continue;
            Fe nc = F.neg(c);
            for (std::size_t i = 0; i < m; ++i) r[k + i] = F.add(r[k + i], F.mul(nc, b.c_[i]));
        }
    }
    r.resize(m - 1);
    return {Poly(F, std::move(qv)), Poly(F, std::move(r))};
}

Poly Poly::exact_div(const Poly& b) const
{
    auto qr = divmod(b);
    if (!qr.second.is_zero()) throw std::logic_error("inexact polynomial division");
    return qr.first;
}

Poly Poly::monic() const
{
    if (c_.empty() || c_.back() == 1) return *this;
    return *this * F_->inv(c_.back());
}

Poly Poly::pow(unsigned long long e) const
{
    const FiniteField& F = *F_;
    Poly r = constant(F, 1), b = *this;
    // q-th powers are free; peel base-q digits of e
    const unsigned long long q = F.size();
    while (e) {
        unsigned long long d = e % q;
        for (unsigned long long i = 0; i < d; ++i) r = r * b;
        e /= q;
        if (e) b = b.frobenius();
    }
    return r;
}

Poly Poly::frobenius() const
{
    if (!F_ || c_.size() <= 1) return *this;
    const unsigned q = F_->size();
    std::vector<Fe> r((c_.size() - 1) * q + 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) r[i * q] = c_[i];
    return Poly(*F_, std::move(r));
}

Poly Poly::shift(unsigned e) const
{
    if (c_.empty() || e == 0) return *this;
    std::vector<Fe> r(c_.size() + e, 0);
    std::copy(c_.begin(), c_.end(), r.begin() + e);
    return Poly(*F_, std::move(r));
}

Fe Poly::eval(Fe x) const
{
    Fe r = 0;
    for (std::size_t i = c_.size(); i-- > 0;) r = F_->add(F_->mul(r, x), c_[i]);
    return r;
}

Poly Poly::compose(const Poly& s) const
{
    Poly r(pick(*this, s));
    for (std::size_t i = c_.size(); i-- > 0;) r = r * s + constant(*F_, c_[i]);
    return r;
}

bool Poly::operator<(const Poly& b) const
{
    if (c_.size() != b.c_.size()) return c_.size() < b.c_.size();
    for (std::size_t i = c_.size(); i-- > 0;)
        if (c_[i] != b.c_[i]) return c_[i] < b.c_[i];
    return false;
}

Poly gcd(const Poly& a, const Poly& b)
{
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x.is_zero() ? x : x.monic();
}

Poly xgcd(const Poly& a, const Poly& b, Poly& s, Poly& t)
{
    const FiniteField& F = a.field_ptr() ? a.field() : b.field();
    Poly r0 = a, r1 = b;
    Poly s0 = Poly::constant(F, 1), s1(F), t0(F), t1 = Poly::constant(F, 1);
    while (!r1.is_zero()) {
        auto qr = r0.divmod(r1);
        Poly r2 = qr.second;
        Poly s2 = s0 - qr.first * s1;
        Poly t2 = t0 - qr.first * t1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) {
        s = Poly(F);
        t = Poly(F);
        return r0;
    }
    Fe li = F.inv(r0.lead());
    s = s0 * li;
    t = t0 * li;
    return r0 * li;
}

unsigned long long abs_norm(const Poly& a)
{
    if (a.is_zero()) return 0;
    unsigned long long r = 1, q = a.field().size();
    for (int i = 0; i < a.degree(); ++i) {
        if (r > std::numeric_limits<unsigned long long>::max() / q) throw std::overflow_error("|a| overflows");
        r *= q;
    }
    return r;
}

std::vector<Poly> monic_polys(const FiniteField& F, unsigned d)
{
    unsigned long long count = 1;
    for (unsigned i = 0; i < d; ++i) {
        count *= F.size();
        if (count > (1ULL << 26)) throw std::invalid_argument("too many monic polynomials requested");
    }
    std::vector<Poly> out;
    out.reserve(count);
    for (unsigned long long t = 0; t < count; ++t) {
        std::vector<Fe> c(d + 1, 0);
        unsigned long long x = t;
        for (unsigned i = 0; i < d; ++i) {
            c[i] = Fe(x % F.size());
            x /= F.size();
        }
        c[d] = 1;
        out.emplace_back(F, std::move(c));
    }
    return out;
}

}  // namespace dmf
