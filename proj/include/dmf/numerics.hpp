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

#ifndef DMF_NUMERICS_HPP
#define DMF_NUMERICS_HPP

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "dmf/forms.hpp"

namespace dmf {

/* Coefficient field F_{q^m} = FiniteField::extension(F_q, m); F_q sits inside
 * as the indices 0..q-1. Interned. */
struct Ambient {
    unsigned q = 0, m = 0;
    const FiniteField* Fq = nullptr;
    const FiniteField* F = nullptr;

    static const Ambient& get(unsigned q, unsigned m);
    bool in_base(Fe c) const { return c < q; }
    Fe frob(Fe c) const { return F->pow(c, q); }
    /* the smallest-index ζ with ζ^{q-1} = -1; throws std::invalid_argument if
     * F_{q^m} has none (odd q needs m even) */
    Fe zeta() const;
};

/* Truncated Laurent series sum c_n t^n in t = θ^{-1/e} over F_{q^m},
 * e ∈ {1, 2, q-1, 2(q-1)}. Digits are known for n < prec_t(); an exact value
 * has no truncation. Mixed ramification lifts to the lcm. */
class PuiseuxNum {
   public:
    static constexpr long kExact = 1L << 50;

    PuiseuxNum() = default;
    /* exact zero */
    explicit PuiseuxNum(const Ambient& A, unsigned e = 1);

    static PuiseuxNum constant(const Ambient& A, Fe c, unsigned e = 1);
    /* c t^n */
    static PuiseuxNum monomial(const Ambient& A, Fe c, long n, unsigned e = 1);
    static PuiseuxNum theta(const Ambient& A) { return monomial(A, 1, -1); }
    static PuiseuxNum from_poly(const Ambient& A, const Poly& p);
    /* exact when r is a polynomial, otherwise expanded to absolute precision V */
    static PuiseuxNum from_ratf(const Ambient& A, const RatF& r, const mpq_class& V);
    static PuiseuxNum from_digits(const Ambient& A, unsigned e, const std::map<long, Fe>& d, long prec_t = kExact);

    const Ambient& ambient() const { return *A_; }
    unsigned e() const { return e_; }
    bool exact() const { return prec_ >= kExact; }
    /* in units of t */
    long prec_t() const { return prec_; }
    long val_t() const { return c_.empty() ? prec_ : lo_; }
    /* in units of θ^{-1}; exact values report kExact / e */
    mpq_class precision() const { return canonical(prec_); }
    /* valuation, or the precision when no digit is known to be nonzero */
    mpq_class valuation() const { return canonical(val_t()); }
    bool is_zero() const { return c_.empty(); }
    Fe digit(long n) const;
    std::map<long, Fe> digits() const;

    PuiseuxNum with_e(unsigned e) const;
    /* drop everything at valuation >= V */
    PuiseuxNum truncate(const mpq_class& V) const;
    /* all digits in F_q and only integral exponents */
    bool in_base() const;

    PuiseuxNum operator-() const;
    PuiseuxNum operator+(const PuiseuxNum& b) const;
    PuiseuxNum operator-(const PuiseuxNum& b) const;
    PuiseuxNum operator*(const PuiseuxNum& b) const;
    PuiseuxNum operator*(Fe s) const;
    /* x^{q^i}, digitwise in characteristic p */
    PuiseuxNum qpow(unsigned i) const;
    /* σ: q-Frobenius on the digits; throws std::invalid_argument unless e = 1 */
    PuiseuxNum sigma() const;

    /* digits below min(V, both precisions) coincide */
    bool agrees(const PuiseuxNum& b, const mpq_class& V) const;
    /* valuation of the first differing digit, or the smaller precision */
    mpq_class agreement(const PuiseuxNum& b) const;
    /* equal digits and equal precision */
    bool operator==(const PuiseuxNum& b) const;

    std::string str() const;

   private:
    void normalize();
    mpq_class canonical(long n) const
    {
        mpq_class r(n, e_);
        r.canonicalize();
        return r;
    }
    static unsigned common_e(const PuiseuxNum& a, const PuiseuxNum& b);

    const Ambient* A_ = nullptr;
    unsigned e_ = 1;
    long lo_ = 0;
    std::vector<Fe> c_;
    long prec_ = kExact;
};

/* 1/x to absolute precision at most V; throws std::domain_error if x has no
 * known nonzero digit */
PuiseuxNum inverse(const PuiseuxNum& x, const mpq_class& V);
PuiseuxNum divide(const PuiseuxNum& a, const PuiseuxNum& b, const mpq_class& V);
/* x^n for n >= 0 exactly as the arithmetic gives it; n < 0 through inverse at V */
PuiseuxNum power(const PuiseuxNum& x, long n, const mpq_class& V);

/* π̃ = θ (-θ)^{1/(q-1)} prod_{i>=1} (1 - θ^{1-q^i})^{-1} with (-θ)^{1/(q-1)}
 * fixed as ζ θ^{1/(q-1)}, ζ = A.zeta(); e = q-1, absolute precision V */
PuiseuxNum pitilde(const Ambient& A, const mpq_class& V);

/* e_C(x) = sum x^{q^i}/D_i to absolute precision at most V; terms are summed
 * until their valuation is past V and increasing. Throws PrecisionError if
 * that never happens within 64 terms. */
PuiseuxNum carlitz_exp_eval(const PuiseuxNum& x, const mpq_class& V);
/* u(z) = 1/e_C(π̃ z) to absolute precision V; throws PrecisionError when
 * e_C(π̃z) vanishes to the working precision (z in A) */
PuiseuxNum u_eval(const PuiseuxNum& z, const mpq_class& V);

/* inf over x in K_∞ of |z - x|, as a valuation: the first exponent whose digit
 * is not in F_q (+kExact for z in K_∞). Needs e = 1. */
mpq_class imaginary_valuation(const PuiseuxNum& z);

struct SeriesValue {
    PuiseuxNum value;
    /* the value is correct below this valuation */
    mpq_class order;
    /* slope s of the model -val(a_n) <= c + s n fitted to the known coefficients */
    mpq_class growth;
};
/* sum a_n u0^n over the known coefficients of f. The tail estimate extends
 * the growth of the known coefficients (heuristic, not a proof): slope from
 * the upper half of the range, offset from all of it. Throws
 * std::invalid_argument if |u0| >= 1 and PrecisionError when the tail bound
 * stays below V. */
SeriesValue eval_useries(const USeries& f, const PuiseuxNum& u0, const mpq_class& V);

/* E(z) = sum over monic a of a u(az), summed degree by degree until every
 * term of a degree is past V */
PuiseuxNum eisenstein_direct(const PuiseuxNum& z, const mpq_class& V);

struct InversionCheck {
    bool ok = false;
    mpq_class agreement;  // first differing valuation
    PuiseuxNum lhs, rhs;  // E(1/z) and -z^2 (E(z) - 1/(π̃ z))
    std::string detail;
};
/* E(γz) = j(γ;z)^2 det(γ)^{-1} (E(z) - π̃^{-1} c / j(γ;z)) for γ = [[0,1],[1,0]].
 * Both E values come from the u-expansion at u(z) and u(1/z). perturb != 0
 * multiplies the π̃^{-1} term by 1 + perturb. Throws std::invalid_argument if
 * |z|_i < 1 or |1/z|_i < 1. */
InversionCheck verify_inversion_law(const PuiseuxNum& z0, const mpq_class& V, long perturb = 0);

// ---- quadratic extensions ----

/* a + b·gen with a, b unramified (e = 1). gen is 𝔠 with 𝔠^2 + 𝔠 + B = 0
 * (even characteristic) or s with s^2 = 1/θ (odd). */
class QuadExtElem {
   public:
    enum Gen { artin_schreier, inv_sqrt_theta };

    QuadExtElem() = default;
    /* odd characteristic */
    QuadExtElem(PuiseuxNum a, PuiseuxNum b);
    /* even characteristic; B must be the same for both operands of any operation */
    QuadExtElem(PuiseuxNum a, PuiseuxNum b, PuiseuxNum B);

    Gen gen() const { return gen_; }
    const PuiseuxNum& a() const { return a_; }
    const PuiseuxNum& b() const { return b_; }
    const PuiseuxNum& B() const { return B_; }
    const Ambient& ambient() const { return a_.ambient(); }
    /* val(gen): 1/2 for s, val(B)/2 for 𝔠 */
    mpq_class gen_valuation() const;
    /* min(val a, val b + val gen); the two never cancel */
    mpq_class valuation() const;

    QuadExtElem operator+(const QuadExtElem& y) const;
    QuadExtElem operator-(const QuadExtElem& y) const;
    QuadExtElem operator*(const QuadExtElem& y) const;
    bool operator==(const QuadExtElem& y) const { return a_ == y.a_ && b_ == y.b_; }
    bool agrees(const QuadExtElem& y, const mpq_class& V) const { return a_.agrees(y.a_, V) && b_.agrees(y.b_, V); }

    std::string str() const;

   private:
    void check_compatible(const QuadExtElem& y) const;

    Gen gen_ = inv_sqrt_theta;
    PuiseuxNum a_, b_, B_;
};

QuadExtElem quad_inverse(const QuadExtElem& x, const mpq_class& V);

/* Newton-polygon valuations of the roots of x^2 + x + B */
std::pair<mpq_class, mpq_class> artin_schreier_root_valuations(const PuiseuxNum& B);

struct PsiSpec {
    enum Variant { even, odd_I, odd_II };
    Variant variant = odd_I;
    const Ambient* ambient = nullptr;
    PuiseuxNum B;     // even only
    Fe eps = 0;       // even only, in F_q
    Fe alpha = 0;     // even only, in F_{q^2} inside the ambient field
    Fe xi = 0;        // odd: nonzero root of x^q + x; even: alpha

    /* B must lie in K_∞ with 𝔠 of non-integral valuation; needs q even and m even */
    static PsiSpec make_even(const Ambient& A, const PuiseuxNum& B);
    /* need q odd and m even */
    static PsiSpec make_odd_I(const Ambient& A);
    static PsiSpec make_odd_II(const Ambient& A);

    std::string name() const;
};

/* the chosen point of F_{q^2} \ F_q: odd q, the smallest-index ξ with
 * ξ^q = -ξ; even q, α from find_alpha(find_epsilon(n)) */
Fe xi_point(const Ambient& A);

/* throws std::invalid_argument on a variant/generator mismatch */
QuadExtElem psi_apply(const PsiSpec& spec, const QuadExtElem& z);
/* component criteria:
 *   even:   b ∈ K_∞ and a - bα ∈ K_∞
 *   odd-I:  a ∈ K_∞ and b ∈ ξ K_∞
 *   odd-II: a, b ∈ K_∞ */
bool fixed_field_test(const PsiSpec& spec, const QuadExtElem& z);

/* smallest-index ε ∈ F_{2^n} with ε + ε^2 + ... + ε^{2^{n-1}} = 1 */
Fe find_epsilon(unsigned n);
/* α ∈ F_{q^m} with α^2 + α + ε = 0 and α^q = α + 1; throws
 * std::invalid_argument when q is odd or the ambient field has no such α */
Fe find_alpha(const Ambient& A, Fe eps);

/* det(ρ) j(ρ;z0)^{-2} = ψ(z0)/z0 for ρ = [[Tr z0, -Nr z0], [1, 0]], checked
 * as Nr(z0)·z0 = ψ(z0)·z0^2. Tr and Nr come from the K_∞-conjugation of
 * K_∞(z0), not from ψ. psi_identity replaces ψ by the identity (negative
 * control). Throws std::invalid_argument if z0 ∈ K_∞ or K_∞(z0) is not a
 * quadratic extension of a supported shape. */
bool cm_evaluation_identity(const PsiSpec& spec, const QuadExtElem& z0, bool psi_identity = false);

}  // namespace dmf

#endif
