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

#include "dmf/field.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace dmf {

bool is_prime_number(unsigned long long n)
{
    if (n < 2) return false;
    for (unsigned long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

void prime_power(unsigned q, unsigned& p, unsigned& n)
{
    if (q < 2) throw std::invalid_argument("field order must be at least 2");
    unsigned d = 2;
    while (q % d != 0) ++d;
    p = d;
    n = 0;
    unsigned r = q;
    while (r % p == 0) {
        r /= p;
        ++n;
    }
    if (r != 1) throw std::invalid_argument("field order " + std::to_string(q) + " is not a prime power");
}

namespace {

std::mutex registry_mutex;
std::map<std::tuple<unsigned, unsigned, const FiniteField*, unsigned>, std::unique_ptr<FiniteField>>& registry()
{
    static std::map<std::tuple<unsigned, unsigned, const FiniteField*, unsigned>, std::unique_ptr<FiniteField>> r;
    return r;
}

std::vector<unsigned> prime_factors(unsigned n)
{
    std::vector<unsigned> out;
    for (unsigned d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

/* Dense polynomials over a small field given by callbacks; used only while
 * building tables, so clarity beats speed here. */
struct SetupRing {
    unsigned size;  // base field size
    std::function<Fe(Fe, Fe)> add, mul;
    std::function<Fe(Fe)> neg, inv;

    void trim(std::vector<Fe>& a) const
    {
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
    std::vector<Fe> mulp(const std::vector<Fe>& a, const std::vector<Fe>& b) const
    {
        if (a.empty() || b.empty()) return {};
        std::vector<Fe> c(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = add(c[i + j], mul(a[i], b[j]));
        trim(c);
        return c;
    }
    /* remainder of a modulo monic-or-not m */
    std::vector<Fe> rem(std::vector<Fe> a, const std::vector<Fe>& m) const
    {
        trim(a);
        Fe li = inv(m.back());
        while (a.size() >= m.size()) {
            Fe c = mul(a.back(), li);
            std::size_t s = a.size() - m.size();
            for (std::size_t i = 0; i < m.size(); ++i) a[s + i] = add(a[s + i], neg(mul(c, m[i])));
            trim(a);
        }
        return a;
    }
    std::vector<Fe> from_index(unsigned idx, unsigned len) const
    {
        std::vector<Fe> v(len);
        for (unsigned i = 0; i < len; ++i) {
            v[i] = Fe(idx % size);
            idx /= size;
        }
        return v;
    }
    unsigned to_index(const std::vector<Fe>& v) const
    {
        unsigned idx = 0;
        for (std::size_t i = v.size(); i-- > 0;) idx = idx * size + v[i];
        return idx;
    }
    bool irreducible(const std::vector<Fe>& f) const
    {
        unsigned n = unsigned(f.size() - 1);
        for (unsigned d = 1; 2 * d <= n; ++d) {
            unsigned count = 1;
            for (unsigned i = 0; i < d; ++i) count *= size;
            for (unsigned t = 0; t < count; ++t) {
                std::vector<Fe> g = from_index(t, d);
                g.push_back(1);
                if (rem(f, g).empty()) return false;
            }
        }
        return true;
    }
};

}  // namespace

const FiniteField& FiniteField::get(unsigned p, unsigned n)
{
    if (!is_prime_number(p)) throw std::invalid_argument("characteristic must be prime");
    if (n == 0) throw std::invalid_argument("field degree must be positive");
    unsigned long long q = 1;
    for (unsigned i = 0; i < n; ++i) q *= p;
    if (q > 65536) throw std::invalid_argument("field too large (limit 2^16 elements)");
    if (n > 1) get(p, 1);
    std::lock_guard<std::mutex> lock(registry_mutex);
    auto key = std::make_tuple(p, n, static_cast<const FiniteField*>(nullptr), 1u);
    auto& r = registry();
    auto it = r.find(key);
    if (it != r.end()) return *it->second;
    std::unique_ptr<FiniteField> f(new FiniteField());
    f->build(p, nullptr, n);
    auto& ref = *f;
    r.emplace(key, std::move(f));
    return ref;
}

const FiniteField& FiniteField::of_order(unsigned q)
{
    unsigned p, n;
    prime_power(q, p, n);
    return get(p, n);
}

const FiniteField& FiniteField::extension(const FiniteField& base, unsigned m)
{
    if (m == 0) throw std::invalid_argument("extension degree must be positive");
    if (m == 1) return base;
    unsigned long long s = 1;
    for (unsigned i = 0; i < m; ++i) s *= base.size();
    if (s > 65536) throw std::invalid_argument("extension too large (limit 2^16 elements)");
    std::lock_guard<std::mutex> lock(registry_mutex);
    auto key = std::make_tuple(base.p(), base.degree() * m, &base, m);
    auto& r = registry();
    auto it = r.find(key);
    if (it != r.end()) return *it->second;
    std::unique_ptr<FiniteField> f(new FiniteField());
    f->build(base.p(), &base, m);
    auto& ref = *f;
    r.emplace(key, std::move(f));
    return ref;
}

void FiniteField::build(unsigned p, const FiniteField* base, unsigned m)
{
    p_ = p;
    base_ = base;
    rel_deg_ = m;
    deg_ = base ? base->degree() * m : m;
    size_ = 1;
    for (unsigned i = 0; i < deg_; ++i) size_ *= p;

    SetupRing R;
    if (base) {
        R.size = base->size();
        R.add = [base](Fe a, Fe b) { return base->add(a, b); };
        R.mul = [base](Fe a, Fe b) { return base->mul(a, b); };
        R.neg = [base](Fe a) { return base->neg(a); };
        R.inv = [base](Fe a) { return base->inv(a); };
    } else {
        R.size = p;
        R.add = [p](Fe a, Fe b) { return Fe((unsigned(a) + b) % p); };
        R.mul = [p](Fe a, Fe b) { return Fe((unsigned long long)a * b % p); };
        R.neg = [p](Fe a) { return Fe((p - a) % p); };
        R.inv = [p](Fe a) {
            unsigned long long r = 1, b = a, e = p - 2;
            while (e) {
                if (e & 1) r = r * b % p;
                b = b * b % p;
                e >>= 1;
            }
            return Fe(r);
        };
    }

    if (m == 1) {
        modulus_ = {0, 1};
    } else {
        unsigned count = 1;
        for (unsigned i = 0; i < m; ++i) count *= R.size;
        for (unsigned t = 0; t < count; ++t) {
            std::vector<Fe> f = R.from_index(t, m);
            f.push_back(1);
            if (R.irreducible(f)) {
                modulus_ = f;
                break;
            }
        }
    }

    // multiplication through the setup ring, then log/exp tables
    auto mulidx = [&](unsigned a, unsigned b) -> unsigned {
        if (m == 1) return unsigned(R.mul(Fe(a), Fe(b)));
        auto pa = R.from_index(a, m), pb = R.from_index(b, m);
        R.trim(pa);
        R.trim(pb);
        auto c = R.rem(R.mulp(pa, pb), modulus_);
        c.resize(m, 0);
        return R.to_index(c);
    };
    auto powidx = [&](unsigned a, unsigned long long e) {
        unsigned r = 1, b = a;
        while (e) {
            if (e & 1) r = mulidx(r, b);
            b = mulidx(b, b);
            e >>= 1;
        }
        return r;
    };
    const unsigned n1 = size_ - 1;
    unsigned g = 1;
    if (size_ > 2) {
        auto pf = prime_factors(n1);
        for (g = 2; g < size_; ++g) {
            bool ok = true;
            for (unsigned r : pf)
                if (powidx(g, n1 / r) == 1) {
                    ok = false;
                    break;
                }
            if (ok) break;
        }
    }
    exp_.assign(2 * n1 + 1, 0);
    log_.assign(size_, 0);
    unsigned x = 1;
    for (unsigned i = 0; i < n1; ++i) {
        exp_[i] = Fe(x);
        exp_[i + n1] = Fe(x);
        log_[x] = std::uint16_t(i);
        x = mulidx(x, g);
    }
    exp_[2 * n1] = exp_[0];
    inv_.assign(size_, 0);
    for (unsigned a = 1; a < size_; ++a) inv_[a] = exp_[(n1 - log_[a]) % n1];

    // Zech logarithms: zech_[d] = log(1 + g^d), -1 when 1 + g^d = 0
    zech_.assign(n1, -1);
    for (unsigned d = 0; d < n1; ++d) {
        std::vector<unsigned> da(deg_), db(deg_);
        unsigned a = 1, b = exp_[d];
        for (unsigned i = 0; i < deg_; ++i) {
            da[i] = a % p;
            a /= p;
            db[i] = b % p;
            b /= p;
        }
        unsigned s = 0;
        for (unsigned i = deg_; i-- > 0;) s = s * p + (da[i] + db[i]) % p;
        zech_[d] = s == 0 ? -1 : int(log_[s]);
    }
}

Fe FiniteField::from_int(long long v) const
{
    long long r = v % (long long)p_;
    if (r < 0) r += p_;
    return Fe(r);
}

Fe FiniteField::inv(Fe a) const
{
    if (a == 0) throw std::domain_error("division by zero in " + name());
    return inv_[a];
}

Fe FiniteField::pow(Fe a, long long e) const
{
    if (e == 0) return 1;
    if (a == 0) {
        if (e < 0) throw std::domain_error("division by zero in " + name());
        return 0;
    }
    long long n1 = size_ - 1;
    long long l = (long long)log_[a] * (e % n1) % n1;
    if (l < 0) l += n1;
    return exp_[l];
}

Fe FiniteField::frobenius(Fe a, unsigned k) const
{
    if (a == 0) return 0;
    unsigned long long s = base_ ? base_->size() : p_;
    unsigned long long n1 = size_ - 1, e = 1;
    for (unsigned i = 0; i < k; ++i) e = e * s % n1;
    if (n1 == 1) return a;
    return exp_[(unsigned long long)log_[a] * e % n1];
}

std::vector<unsigned> FiniteField::digits(Fe a) const
{
    std::vector<unsigned> d(deg_);
    unsigned x = a;
    for (unsigned i = 0; i < deg_; ++i) {
        d[i] = x % p_;
        x /= p_;
    }
    return d;
}

Fe FiniteField::from_digits(const std::vector<unsigned>& d) const
{
    if (d.size() > deg_) throw std::invalid_argument("too many digits for " + name());
    unsigned x = 0;
    for (std::size_t i = d.size(); i-- > 0;) {
        if (d[i] >= p_) throw std::invalid_argument("digit out of range for " + name());
        x = x * p_ + d[i];
    }
    return Fe(x);
}

unsigned FiniteField::log(Fe a) const
{
    if (a == 0) throw std::domain_error("log of zero");
    return log_[a];
}

Fe FiniteField::trace_to_prime(Fe a) const
{
    Fe t = 0, x = a;
    for (unsigned i = 0; i < deg_; ++i) {
        t = add(t, x);
        x = pow(x, p_);
    }
    return t;
}

std::string FiniteField::name() const
{
    std::string s = "F_" + std::to_string(size_);
    if (base_) s += " over F_" + std::to_string(base_->size());
    return s;
}

}  // namespace dmf
