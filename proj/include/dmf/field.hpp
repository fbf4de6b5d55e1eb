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

#ifndef DMF_FIELD_HPP
#define DMF_FIELD_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace dmf {

/* Element of a finite field, stored as its index. The index of
 * c_0 + c_1 y + ... + c_{m-1} y^{m-1} (c_i in the base field) is
 * sum c_i B^i with B the base field size, so every index is also the
 * base-p digit vector of the element over the prime field. */
using Fe = std::uint16_t;

class FiniteField {
   public:
    /* F_{p^n} over F_p. Instances are interned and live for the whole
     * program; the returned reference is stable and thread-safe to use. */
    static const FiniteField& get(unsigned p, unsigned n = 1);
    /* F_q for q a prime power. */
    static const FiniteField& of_order(unsigned q);
    /* F_{q^m} built as a tower over base = F_q, so that F_q sits inside
     * as the indices 0..q-1. */
    static const FiniteField& extension(const FiniteField& base, unsigned m);

    unsigned p() const { return p_; }
    /* degree over F_p */
    unsigned degree() const { return deg_; }
    unsigned size() const { return size_; }
    /* field this one was built over (nullptr for the prime-level fields) */
    const FiniteField* base() const { return base_; }
    /* degree over base() (equals degree() for prime-level fields) */
    unsigned rel_degree() const { return rel_deg_; }
    bool is_prime() const { return deg_ == 1; }
    /* modulus over base(), low coefficient first, monic */
    const std::vector<Fe>& modulus() const { return modulus_; }

    Fe zero() const { return 0; }
    Fe one() const { return 1; }
    Fe from_int(long long v) const;

    Fe add(Fe a, Fe b) const
    {
        if (p_ == 2) return Fe(a ^ b);
        if (deg_ == 1) {
            unsigned s = unsigned(a) + b;
            return Fe(s >= p_ ? s - p_ : s);
        }
        if (a == 0) return b;
        if (b == 0) return a;
        unsigned la = log_[a], lb = log_[b];
        unsigned d = lb >= la ? lb - la : lb + (size_ - 1) - la;
        int z = zech_[d];
        if (z < 0) return 0;
        return exp_[la + unsigned(z)];
    }
    Fe neg(Fe a) const
    {
        if (p_ == 2 || a == 0) return a;
        if (deg_ == 1) return Fe(p_ - a);
        return exp_[log_[a] + (size_ - 1) / 2];
    }
    Fe sub(Fe a, Fe b) const { return add(a, neg(b)); }
    Fe mul(Fe a, Fe b) const
    {
        if (a == 0 || b == 0) return 0;
        if (deg_ == 1) return Fe((unsigned(a) * b) % p_);
        return exp_[unsigned(log_[a]) + log_[b]];
    }
    Fe inv(Fe a) const;
    Fe div(Fe a, Fe b) const { return mul(a, inv(b)); }
    Fe pow(Fe a, long long e) const;
    /* a^(s^k) where s is the size of base() (or p for prime-level fields) */
    Fe frobenius(Fe a, unsigned k = 1) const;

    /* digits of an index over F_p, low first, length degree() */
    std::vector<unsigned> digits(Fe a) const;
    Fe from_digits(const std::vector<unsigned>& d) const;

    /* generator of the multiplicative group used for the log tables */
    Fe generator() const { return exp_.empty() ? Fe(1) : exp_[1]; }
    unsigned log(Fe a) const;

    /* absolute trace to F_p */
    Fe trace_to_prime(Fe a) const;

    std::string name() const;

    FiniteField(const FiniteField&) = delete;
    FiniteField& operator=(const FiniteField&) = delete;

   private:
    FiniteField() = default;
    void build(unsigned p, const FiniteField* base, unsigned m);

    unsigned p_ = 0, deg_ = 0, size_ = 0, rel_deg_ = 0;
    const FiniteField* base_ = nullptr;
    std::vector<Fe> modulus_;
    std::vector<Fe> exp_;
    std::vector<std::uint16_t> log_;
    std::vector<int> zech_;
    std::vector<Fe> inv_;
};

/* true if n is prime (trial division, small n) */
bool is_prime_number(unsigned long long n);
/* decompose q = p^n; throws std::invalid_argument if q is not a prime power */
void prime_power(unsigned q, unsigned& p, unsigned& n);

}  // namespace dmf

#endif
