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

#ifndef DMF_CARLITZ_HPP
#define DMF_CARLITZ_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dmf/ratf.hpp"

namespace dmf {

/* C_a(X) = sum_i c_i X^{q^i}, the Carlitz action of a (C_θ = θX + X^q). */
struct CarlitzPoly {
    Poly a;
    std::vector<Poly> c;  // c[i] is the coefficient of X^{q^i}

    /* evaluate at x in K */
    RatF eval(const RatF& x) const;
    /* composition C_a(C_b(X)) as a q-polynomial */
    CarlitzPoly compose(const CarlitzPoly& b) const;
};

CarlitzPoly carlitz_action(const Poly& a);

/* 𝔠_a(X) = X^{|a|} C_a(1/X) = sum_i c_i X^{|a| - q^i}, stored sparsely. */
struct ReversedCarlitz {
    Poly a;
    unsigned long long norm = 0;  // |a|
    std::vector<std::pair<unsigned long long, Poly>> terms;  // (exponent, coefficient), increasing exponent

    /* dense coefficients of X^0 .. X^{n-1} */
    std::vector<Poly> dense(std::size_t n) const;
};

/* throws std::invalid_argument for a = 0 */
ReversedCarlitz reversed(const Poly& a);

/* D_0 = 1, D_i = (θ^{q^i} - θ) D_{i-1}^q; memoized per field behind a mutex */
Poly carlitz_d(const FiniteField& F, unsigned i);

/* [X^{k-1}] (1/e_C(X) - 1/X) with e_C(X) = sum X^{q^i}/D_i; zero unless (q-1) | k */
RatF zeta_norm(const FiniteField& F, unsigned k);

/* Nonzero normalized zeta values up to a bound, by one series inversion. */
class ZetaTable {
   public:
    ZetaTable(const FiniteField& F, unsigned bound);
    unsigned bound() const { return bound_; }
    RatF at(unsigned k) const;
    const std::map<unsigned, RatF>& entries() const { return vals_; }

   private:
    const FiniteField* F_;
    unsigned bound_;
    std::map<unsigned, RatF> vals_;
};

/* Element of K_θ = K[λ]/(λ^{q-1} + θ), basis 1, λ, ..., λ^{q-2}. */
class CycloElem {
   public:
    CycloElem() = default;
    explicit CycloElem(const FiniteField& F);
    CycloElem(const FiniteField& F, const RatF& c);
    CycloElem(const FiniteField& F, std::vector<RatF> c);

    static CycloElem lambda(const FiniteField& F);
    static CycloElem zero(const FiniteField& F) { return CycloElem(F); }
    static CycloElem one(const FiniteField& F) { return CycloElem(F, RatF::constant(F, 1)); }

    const FiniteField& field() const { return *F_; }
    const std::vector<RatF>& coeffs() const { return c_; }
    std::size_t rank() const { return c_.size(); }

    bool is_zero() const;
    CycloElem operator-() const;
    CycloElem operator+(const CycloElem& b) const;
    CycloElem operator-(const CycloElem& b) const;
    CycloElem operator*(const CycloElem& b) const;
    CycloElem operator*(const RatF& s) const;
    CycloElem operator/(const CycloElem& b) const { return *this * b.inv(); }
    CycloElem& operator+=(const CycloElem& b) { return *this = *this + b; }
    CycloElem& operator-=(const CycloElem& b) { return *this = *this - b; }
    CycloElem inv() const;
    CycloElem pow(long long e) const;
    bool operator==(const CycloElem& b) const { return c_ == b.c_; }
    bool operator!=(const CycloElem& b) const { return !(*this == b); }

    /* "(c0) + (c1)*λ + (c2)*λ^2 ..." with zero components omitted */
    std::string str() const;

   private:
    const FiniteField* F_ = nullptr;
    std::vector<RatF> c_;
};

}  // namespace dmf

#endif
