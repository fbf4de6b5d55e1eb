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

#ifndef DMF_POLY_HPP
#define DMF_POLY_HPP

#include <string>
#include <utility>
#include <vector>

#include "dmf/field.hpp"

namespace dmf {

/* Polynomial in θ over F_q (an element of A = F_q[θ]). Coefficients are
 * stored low degree first with no trailing zeros; the zero polynomial has
 * an empty coefficient vector. Values are immutable in spirit: every
 * operation returns a new object. */
class Poly {
   public:
    Poly() = default;
    explicit Poly(const FiniteField& F) : F_(&F) {}
    Poly(const FiniteField& F, std::vector<Fe> c);

    static Poly constant(const FiniteField& F, Fe c);
    static Poly monomial(const FiniteField& F, Fe c, unsigned e);
    static Poly theta(const FiniteField& F) { return monomial(F, 1, 1); }

    const FiniteField& field() const { return *F_; }
    const FiniteField* field_ptr() const { return F_; }
    const std::vector<Fe>& coeffs() const { return c_; }

    /* -1 for the zero polynomial */
    int degree() const { return int(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    Fe lead() const { return c_.empty() ? Fe(0) : c_.back(); }
    Fe operator[](std::size_t i) const { return i < c_.size() ? c_[i] : Fe(0); }

    Poly operator-() const;
    Poly operator+(const Poly& b) const;
    Poly operator-(const Poly& b) const;
    Poly operator*(const Poly& b) const;
    Poly operator*(Fe s) const;
    Poly& operator+=(const Poly& b) { return *this = *this + b; }
    Poly& operator-=(const Poly& b) { return *this = *this - b; }
    Poly& operator*=(const Poly& b) { return *this = *this * b; }

    /* quotient and remainder; throws std::domain_error on division by zero */
    std::pair<Poly, Poly> divmod(const Poly& b) const;
    Poly operator/(const Poly& b) const { return divmod(b).first; }
    Poly operator%(const Poly& b) const { return divmod(b).second; }
    /* division that must be exact; throws std::logic_error otherwise */
    Poly exact_div(const Poly& b) const;

    Poly monic() const;
    Poly pow(unsigned long long e) const;
    /* the q-th power, i.e. θ ↦ θ^q on the coefficient sequence */
    Poly frobenius() const;
    Poly shift(unsigned e) const;
    Fe eval(Fe x) const;
    /* formal substitution θ ↦ s */
    Poly compose(const Poly& s) const;

    bool operator==(const Poly& b) const { return c_ == b.c_; }
    bool operator!=(const Poly& b) const { return c_ != b.c_; }
    /* total order: by degree, then coefficients from the top */
    bool operator<(const Poly& b) const;

    std::string str() const;

   private:
    const FiniteField* F_ = nullptr;
    std::vector<Fe> c_;
    void trim();
    friend Poly gcd(const Poly&, const Poly&);
};

/* monic gcd; gcd(0, 0) = 0 */
Poly gcd(const Poly& a, const Poly& b);
/* s, t with s a + t b = gcd(a, b) (monic) */
Poly xgcd(const Poly& a, const Poly& b, Poly& s, Poly& t);

/* |a| = q^deg(a) for a != 0 (0 for a = 0); throws std::overflow_error
 * when the value does not fit in 64 bits */
unsigned long long abs_norm(const Poly& a);

/* all monic polynomials of degree d over F_q in a deterministic order
 * (lower coefficients enumerated as base-q integers, increasing) */
std::vector<Poly> monic_polys(const FiniteField& F, unsigned d);

/* Raw multiplication kernels on coefficient vectors (low first, untrimmed
 * input allowed). Large operands go through Kronecker substitution into GMP
 * integers. */
namespace kernel {
std::vector<Fe> mul(const FiniteField& F, const std::vector<Fe>& a, const std::vector<Fe>& b);
/* Bivariate product truncated in the outer variable: A, B are sequences of
 * θ-polynomials (outer index = power of u); returns the first n outer
 * coefficients of A*B. */
std::vector<std::vector<Fe>> mul2(const FiniteField& F, const std::vector<const std::vector<Fe>*>& A,
                                  const std::vector<const std::vector<Fe>*>& B, std::size_t n);
void trim(std::vector<Fe>& a);
}  // namespace kernel

}  // namespace dmf

#endif
