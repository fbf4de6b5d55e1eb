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

#ifndef DMF_FORMS_HPP
#define DMF_FORMS_HPP

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dmf/useries.hpp"

namespace dmf {

/* Raised when a computation needs more u-coefficients than supplied. */
class PrecisionError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

// ---- u-expansions of the generators ----

/* E = sum over monic a of a u(az), truncated at u^prec */
USeries false_eisenstein(const FiniteField& F, long prec);

/* Ê_k = -ζ̃(k) - sum over monic a of 𝒢_k(u(az)); needs (q-1) | k */
USeries eisenstein_norm(const FiniteField& F, unsigned k, long prec);

/* P_j = sum over monic a of u(az)^j for j = 1..J (index 0 unused) */
std::vector<USeries> power_sums(const FiniteField& F, unsigned J, long prec);

/* E, g̃, Δ̃, h̃ at one precision. Normalizations: every series is the
 * π̃^{-w}-rescaled form with w = 1 (E), q-1 (g), q^2-1 (Δ), q+1 (h). */
struct GeneratorSet {
    long prec = 0;
    USeries E, g, delta, h;
};

/* write-once-per-precision cache; the result may carry more precision than asked */
const GeneratorSet& generators(const FiniteField& F, long prec);

/* these throw PrecisionError when prec < q^2 */
USeries generator_g(const FiniteField& F, long prec);
USeries generator_delta(const FiniteField& F, long prec);
/* h̃ with h̃^{q-1} = -Δ̃ and leading term -u */
USeries generator_h(const FiniteField& F, long prec);
/* g̃^{q+1}/Δ̃, valuation -(q-1) */
USeries j_invariant(const FiniteField& F, long prec);

// ---- level θ ----

/* E_u for u = (c1/θ, c2/θ) as a series in u_θ = 1/e_C(π̃z/θ):
 * E_u = sum over b in c1 + θA of X^{|b|}/(𝔠_b(X) + c2 λ X^{|b|}), X = u_θ.
 * Throws std::invalid_argument for c1 = c2 = 0. */
Series<CycloElem> eisenstein_level_theta(const FiniteField& F, Fe c1, Fe c2, long prec);

/* Rewrite a series in u_θ as a series in u = u_θ^q/𝔠_θ(u_θ). Returns nullopt
 * when the input is not a function of u. */
std::optional<Series<CycloElem>> to_u_series(const FiniteField& F, const Series<CycloElem>& f);

struct LevelThetaProduct {
    bool matches = false;     // product = scalar * h̃ to the available precision
    Fe unit = 0;              // scalar = unit * θ^theta_exp * λ^lambda_exp
    long theta_exp = 0;
    unsigned lambda_exp = 0;
    long uprec = 0;
    std::string detail;
};

/* product of E_u over the q+1 pairs (1, c) and (0, 1), compared with h̃ */
LevelThetaProduct level_theta_product(const FiniteField& F, long uprec);

// ---- the polynomial model ----

/* variables of the polynomial model */
enum Var : unsigned { VG = 0, VH = 1, VE = 2, VY = 3, VX = 4 };
using Exps = std::array<unsigned, 5>;

/* Sparse polynomial in g, h, E, Y, X over K. */
class FormPoly {
   public:
    FormPoly() = default;
    explicit FormPoly(const FiniteField& F) : F_(&F) {}
    static FormPoly constant(const RatF& c);
    static FormPoly var(const FiniteField& F, Var v, unsigned e = 1);
    static FormPoly monomial(const RatF& c, const Exps& e);

    const FiniteField& field() const { return *F_; }
    const std::map<Exps, RatF>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    unsigned degree(Var v) const;
    RatF coeff(const Exps& e) const;

    FormPoly operator-() const;
    FormPoly operator+(const FormPoly& b) const;
    FormPoly operator-(const FormPoly& b) const;
    FormPoly operator*(const FormPoly& b) const;
    FormPoly operator*(const RatF& s) const;
    FormPoly& operator+=(const FormPoly& b) { return *this = *this + b; }
    FormPoly& operator-=(const FormPoly& b) { return *this = *this - b; }
    FormPoly pow(unsigned e) const;
    bool operator==(const FormPoly& b) const { return t_ == b.t_; }
    bool operator!=(const FormPoly& b) const { return !(*this == b); }

    /* coefficient of v^i as a polynomial in the remaining variables */
    FormPoly part(Var v, unsigned i) const;
    /* replace v by s */
    FormPoly substitute(Var v, const FormPoly& s) const;

    /* "c*g^a*h^b*E^c*Y^d*X^e" terms joined by " + " */
    std::string str() const;

   private:
    const FiniteField* F_ = nullptr;
    std::map<Exps, RatF> t_;
    void add_term(const Exps& e, const RatF& c);
};

/* weight of a monomial: (q-1)a + (q+1)b + 2(c + d + e) */
long monomial_weight(unsigned q, const Exps& e);
/* type of a monomial mod (q-1): b + c + d + e */
long monomial_type(unsigned q, const Exps& e);

/* Homogeneous element of the polynomial model with weight/type/depth
 * metadata. For quasi-modular forms only g, h, E occur; the depth is the
 * E-degree. Nearly holomorphic forms use Y instead (see NHForm). */
class GradedForm {
   public:
    GradedForm() = default;
    /* checks that every monomial has the given weight and type; throws
     * std::invalid_argument otherwise */
    GradedForm(FormPoly p, long weight, long type);
    /* infers weight and type from the first monomial (zero needs explicit metadata) */
    static GradedForm from_poly(const FormPoly& p);

    const FormPoly& poly() const { return p_; }
    const FiniteField& field() const { return p_.field(); }
    long weight() const { return k_; }
    long type() const { return m_; }
    long depth() const { return long(p_.degree(VE)); }

    GradedForm operator+(const GradedForm& b) const;
    GradedForm operator-(const GradedForm& b) const;
    GradedForm operator*(const GradedForm& b) const;
    GradedForm operator*(const RatF& s) const { return GradedForm(p_ * s, k_, m_); }
    bool operator==(const GradedForm& b) const { return k_ == b.k_ && m_ == b.m_ && p_ == b.p_; }

   private:
    FormPoly p_;
    long k_ = 0, m_ = 0;
};

/* reduce a type into [0, q-1) (0 when q = 2) */
long norm_type(unsigned q, long m);

/* substitute the generator expansions; throws std::invalid_argument if Y or X occurs */
USeries expand(const FormPoly& f, long prec);
inline USeries expand(const GradedForm& f, long prec)
{
    return expand(f.poly(), prec);
}

struct Membership {
    enum Status { member, not_member, inconsistent_truncation } status = not_member;
    FormPoly poly;          // the certificate when status == member
    long first_bad = -1;    // first exponent where the residual is nonzero
    long solve_rows = 0;    // rows used to solve; the rest only verify
    long dim = 0;
};

/* the monomials g^a h^b of weight k and type m, sorted by b */
std::vector<std::pair<unsigned, unsigned>> modular_monomials(unsigned q, long k, long m);

/* Decide whether f lies in M_k^m spanned by g^a h^b. The basis is
 * triangular in the u-order b (leading coefficient (-1)^b), so the solve is
 * elimination on the first dim + guard rows; the remaining coefficients only
 * verify. Throws PrecisionError when f.prec() < 2 dim + k. */
Membership membership(const USeries& f, long k, long m, long guard = 8);

/* E ↦ E - X and Y ↦ Y - X */
FormPoly formal_slash(const FormPoly& f);

/* polynomial in X with series coefficients; X exponents may be negative */
using XPoly = std::map<long, USeries>;

/* ∂^n X^m = (-1)^n binom(m+n-1, n) X^{m+n}, extended to coefficients by Leibniz */
XPoly hasse_on_X(unsigned n, const XPoly& P);

/* Textual forms of the polynomial model.
 *
 *   form   ::= [ "-" ] term { ( "+" | "-" ) term }
 *   term   ::= factor { "*" factor }
 *   factor ::= int | "{" ratf "}" | var [ "^" int ]
 *   var    ::= "g" | "h" | "E" | "Y" | "X"
 *
 * ratf is the syntax of parse_ratf; "−" (U+2212) is accepted for "-".
 * The printer omits unit coefficients and exponents, e.g. "-h^2" or
 * "{1*θ^1 + 1*θ^0}*g*E"; its output parses back to the same polynomial. */
FormPoly parse_form(const FiniteField& F, const std::string& s);
std::string form_to_string(const FormPoly& f);

}  // namespace dmf

#endif
