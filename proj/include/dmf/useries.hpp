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

#ifndef DMF_USERIES_HPP
#define DMF_USERIES_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "dmf/carlitz.hpp"

namespace dmf {

/* Truncated Laurent series in u over K.
 *
 * Stored over a common denominator: the coefficient of u^{val+i} is
 * nums[i]/den with den monic and gcd(den, nums...) = 1. All coefficients of
 * exponent < prec are known; prec is an absolute exponent, so a series with
 * val = -2 and prec = 10 carries 12 coefficients. */
class USeries {
   public:
    USeries() = default;
    /* zero series known up to u^prec */
    USeries(const FiniteField& F, long prec, long val = 0);

    static USeries from_coeffs(const FiniteField& F, const std::vector<RatF>& c, long prec, long val = 0);
    static USeries from_polys(const FiniteField& F, std::vector<Poly> nums, const Poly& den, long prec, long val = 0);
    static USeries constant(const RatF& c, long prec);
    static USeries monomial(const RatF& c, long e, long prec);
    static USeries u(const FiniteField& F, long prec) { return monomial(RatF::constant(F, 1), 1, prec); }

    const FiniteField& field() const { return *F_; }
    const FiniteField* field_ptr() const { return F_; }
    long prec() const { return prec_; }
    long val() const { return val_; }
    /* first exponent with nonzero coefficient, prec() if none is known */
    long order() const;
    bool is_zero() const { return order() >= prec_; }

    RatF coeff(long e) const;
    const Poly& den() const { return den_; }
    /* numerator of the coefficient of u^e over den() */
    Poly num(long e) const;
    /* coefficients of u^lo .. u^{hi-1} */
    std::vector<RatF> coeffs(long lo, long hi) const;
    /* true when every known coefficient lies in A */
    bool integral() const { return den_.is_one(); }

    USeries operator-() const;
    USeries operator+(const USeries& b) const;
    USeries operator-(const USeries& b) const;
    USeries operator*(const USeries& b) const;
    USeries operator*(const RatF& s) const;
    USeries operator/(const USeries& b) const { return *this * b.inv(); }
    USeries& operator+=(const USeries& b) { return *this = *this + b; }
    USeries& operator-=(const USeries& b) { return *this = *this - b; }
    USeries& operator*=(const USeries& b) { return *this = *this * b; }

    /* throws std::domain_error if no nonzero coefficient is known */
    USeries inv() const;
    USeries pow(unsigned long long e) const;
    /* f ↦ f^{q^k}: coefficients θ ↦ θ^{q^k}, u ↦ u^{q^k}; precision scales by q^k */
    USeries frobenius(unsigned k = 1) const;
    USeries truncate(long prec) const;
    /* multiply by u^k */
    USeries shift(long k) const;

    /* agreement of all coefficients below min(prec) */
    bool operator==(const USeries& b) const;
    bool operator!=(const USeries& b) const { return !(*this == b); }

    std::string str(long max_terms = 12) const;

   private:
    const FiniteField* F_ = nullptr;
    long val_ = 0, prec_ = 0;
    Poly den_;
    std::vector<Poly> nums_;

    void normalize();
    void align(const USeries& b, std::vector<Poly>& mine, std::vector<Poly>& theirs, Poly& den) const;
    USeries inv_unit_newton() const;
    USeries inv_unit_general() const;
};

/* e_{m,n} = [ε^n] ẽ(ε)^m with ẽ(ε) = sum_i ε^{q^i}/D_i; zero unless m ≡ n mod (q-1) */
RatF hyper_weight(const FiniteField& F, unsigned m, unsigned n);

/* n-th normalized hyperderivative. u ↦ u/(1 + u ẽ(ε)) under z ↦ z + ε, so
 * ∂^n f = sum_m e_{m,n} T_m(f) with T_m(sum a_j u^j) = sum binom(-j, m) a_j u^{j+m}.
 * Coefficient j of the result only uses a_{j-m}, m ≥ 0, so the precision
 * of f is kept. */
USeries hyper(unsigned n, const USeries& f);

/* 𝒢_k = (-1)^{k-1} ∂^{k-1} u, a polynomial of degree ≤ k padded to prec */
USeries goss(const FiniteField& F, unsigned k, long prec);

/* u(az) = u^{|a|}/𝔠_a(u) for monic a, to precision prec */
USeries u_of_az(const Poly& a, long prec);

/* f(u(az)); the result is known up to min(prec, |a| * f.prec()).
 * Throws std::invalid_argument when a is not monic or f has negative valuation. */
USeries subst_uaz(const USeries& f, const Poly& a, long prec);

/* Dense truncated series over a coefficient ring T (used with CycloElem).
 * T needs +, -, *, inv, is_zero and a zero value supplied at construction. */
template <class T>
class Series {
   public:
    Series() = default;
    Series(const T& zero, long prec) : zero_(zero), c_(std::size_t(prec), zero) {}

    long prec() const { return long(c_.size()); }
    const T& operator[](long i) const { return c_[std::size_t(i)]; }
    T& operator[](long i) { return c_[std::size_t(i)]; }
    const T& zero() const { return zero_; }

    Series operator+(const Series& b) const
    {
        Series r(zero_, std::min(prec(), b.prec()));
        for (long i = 0; i < r.prec(); ++i) r[i] = c_[i] + b[i];
        return r;
    }
    Series operator-(const Series& b) const
    {
        Series r(zero_, std::min(prec(), b.prec()));
        for (long i = 0; i < r.prec(); ++i) r[i] = c_[i] - b[i];
        return r;
    }
    Series operator*(const Series& b) const
    {
        Series r(zero_, std::min(prec(), b.prec()));
        for (long i = 0; i < r.prec(); ++i) {
            if (c_[i].is_zero()) continue;
            for (long j = 0; i + j < r.prec(); ++j)
                if (!b[j].is_zero()) r[i + j] = r[i + j] + c_[i] * b[j];
        }
        return r;
    }
    /* requires a unit constant term */
    Series inv() const
    {
        if (c_.empty() || c_[0].is_zero()) throw std::domain_error("series is not a unit");
        Series r(zero_, prec());
        T a0 = c_[0].inv();
        r[0] = a0;
        for (long n = 1; n < prec(); ++n) {
            T s = zero_;
            for (long i = 1; i <= n; ++i)
                if (!c_[i].is_zero()) s = s + c_[i] * r[n - i];
            r[n] = (zero_ - s) * a0;
        }
        return r;
    }

   private:
    T zero_;
    std::vector<T> c_;
};

}  // namespace dmf

#endif
