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

#ifndef DMF_RATF_HPP
#define DMF_RATF_HPP

#include <string>

#include "dmf/poly.hpp"

namespace dmf {

/* Element of K = F_q(θ): num/den with den monic and gcd(num, den) = 1.
 * Zero is 0/1. */
class RatF {
   public:
    RatF() = default;
    explicit RatF(const FiniteField& F) : num_(F), den_(Poly::constant(F, 1)) {}
    RatF(const Poly& a);  // NOLINT: polynomials embed into K
    RatF(const Poly& num, const Poly& den);

    static RatF constant(const FiniteField& F, Fe c) { return RatF(Poly::constant(F, c)); }
    static RatF from_int(const FiniteField& F, long long v) { return constant(F, F.from_int(v)); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    const FiniteField& field() const { return num_.field(); }
    const FiniteField* field_ptr() const { return num_.field_ptr(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_poly() const { return den_.is_one(); }
    /* valuation at infinity: deg(den) - deg(num) */
    int val_inf() const { return den_.degree() - num_.degree(); }

    RatF operator-() const;
    RatF operator+(const RatF& b) const;
    RatF operator-(const RatF& b) const;
    RatF operator*(const RatF& b) const;
    RatF operator/(const RatF& b) const;
    RatF operator*(Fe s) const;
    RatF& operator+=(const RatF& b) { return *this = *this + b; }
    RatF& operator-=(const RatF& b) { return *this = *this - b; }
    RatF& operator*=(const RatF& b) { return *this = *this * b; }
    RatF inv() const;
    RatF pow(long long e) const;
    RatF frobenius() const { return RatF(num_.frobenius(), den_.frobenius()); }

    bool operator==(const RatF& b) const { return num_ == b.num_ && den_ == b.den_; }
    bool operator!=(const RatF& b) const { return !(*this == b); }
    bool operator<(const RatF& b) const { return num_ < b.num_ || (num_ == b.num_ && den_ < b.den_); }

    std::string str() const;

   private:
    Poly num_, den_;
};

/* Textual forms.
 *
 *   poly  ::= "0" | term { "+" term }
 *   term  ::= coeff [ "*" var [ "^" int ] ] | var [ "^" int ]
 *   var   ::= "θ" | "theta"
 *   coeff ::= int | "[" int { "," int } "]"
 *   ratf  ::= poly | "(" poly ")" [ "/" "(" poly ")" ]
 *
 * A coefficient of F_q with q = p^n is written as an integer when n = 1 and
 * as the vector of its n digits over F_p (low digit first) otherwise. The
 * printer emits every term as coeff*θ^e in decreasing e, e.g.
 * "1*θ^3 + 2*θ^0"; whitespace is ignored on input and integers are reduced
 * mod p. */
std::string fe_to_string(const FiniteField& F, Fe c);
Poly parse_poly(const FiniteField& F, const std::string& s);
RatF parse_ratf(const FiniteField& F, const std::string& s);

}  // namespace dmf

#endif
