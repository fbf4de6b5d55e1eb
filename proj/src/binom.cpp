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

#include "dmf/binom.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace dmf {

mpz_class binom_big(unsigned long long n, unsigned long long k)
{
    mpz_class r;
    if (k > n) return r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

namespace {

/* factorials mod p and their inverses, for digits of Lucas' theorem */
struct FactTable {
    unsigned p;
    std::vector<unsigned> fact, inv_fact;
    explicit FactTable(unsigned pp) : p(pp), fact(pp), inv_fact(pp)
    {
        fact[0] = 1;
        for (unsigned i = 1; i < p; ++i) fact[i] = unsigned((unsigned long long)fact[i - 1] * i % p);
        auto powm = [&](unsigned long long b, unsigned long long e) {
            unsigned long long r = 1;
            b %= p;
            while (e) {
                if (e & 1) r = r * b % p;
                b = b * b % p;
                e >>= 1;
            }
            return unsigned(r);
        };
        inv_fact[p - 1] = powm(fact[p - 1], p - 2);
        for (unsigned i = p - 1; i > 0; --i) inv_fact[i - 1] = unsigned((unsigned long long)inv_fact[i] * i % p);
    }
    unsigned small(unsigned a, unsigned b) const
    {
        if (b > a) return 0;
        return unsigned((unsigned long long)fact[a] * inv_fact[b] % p * inv_fact[a - b] % p);
    }
};

const FactTable& table(unsigned p)
{
    thread_local std::vector<std::pair<unsigned, FactTable>> cache;
    for (auto& e : cache)
        if (e.first == p) return e.second;
    cache.emplace_back(p, FactTable(p));
    return cache.back().second;
}

}  // namespace

unsigned binom_mod_p(unsigned long long n, unsigned long long k, unsigned p)
{
    if (p < 2) throw std::invalid_argument("binom_mod_p needs a prime");
    if (k > n) return 0;
    const FactTable& T = table(p);
    unsigned long long r = 1;
    while (k) {
        unsigned a = unsigned(n % p), b = unsigned(k % p);
        if (b > a) return 0;
        r = r * T.small(a, b) % p;
        n /= p;
        k /= p;
    }
    return unsigned(r);
}

unsigned binom_signed_mod_p(long long n, unsigned long long k, unsigned p)
{
    if (n >= 0) return binom_mod_p((unsigned long long)n, k, p);
    unsigned v = binom_mod_p((unsigned long long)(-n) + k - 1, k, p);
    if ((k & 1) && v) v = p - v;
    return v;
}

unsigned mod_p(const mpz_class& v, unsigned p)
{
    return unsigned(mpz_fdiv_ui(v.get_mpz_t(), p));
}

}  // namespace dmf
