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

#ifndef DMF_NEARLY_HPP
#define DMF_NEARLY_HPP

#include <map>
#include <string>
#include <vector>

#include "dmf/forms.hpp"

namespace dmf {

/* Nearly holomorphic form: a polynomial in Y over K[g, h, E], where Y stands
 * for 1/(π̃z - π̃ψ(z)) (weight 2, type 1).
 *
 * Y carries NO Hasse action: the Maass-Shimura operator only sees it through
 * the μ-dependent binomials. X (the slash variable) does carry one, see
 * hasse_on_X. The check in formal_equivariance_check hinges on this. */
class NHForm {
   public:
    NHForm() = default;
    /* checks homogeneity like GradedForm; X may not occur */
    NHForm(FormPoly p, long weight, long type);
    /* additionally enforces depth <= weight/2 */
    static NHForm modular(FormPoly p, long weight, long type);
    static NHForm from_graded(const GradedForm& f) { return NHForm(f.poly(), f.weight(), f.type()); }

    const FormPoly& poly() const { return p_; }
    const FiniteField& field() const { return p_.field(); }
    long weight() const { return k_; }
    long type() const { return m_; }
    long depth() const { return long(p_.degree(VY)); }
    /* coefficient of Y^i, a polynomial in g, h, E */
    FormPoly coeff(unsigned i) const { return p_.part(VY, i); }

    NHForm operator+(const NHForm& b) const;
    NHForm operator-(const NHForm& b) const;
    NHForm operator*(const NHForm& b) const;
    NHForm operator*(const RatF& s) const { return NHForm(p_ * s, k_, m_); }
    bool operator==(const NHForm& b) const { return k_ == b.k_ && m_ == b.m_ && p_ == b.p_; }

   private:
    FormPoly p_;
    long k_ = 0, m_ = 0;
};

/* Y-degree -> u-series coefficient */
struct NHSeries {
    long weight = 0, type = 0;
    std::map<unsigned, USeries> y;

    long depth() const;
    bool operator==(const NHSeries& b) const;
};

NHSeries to_series(const NHForm& f, long prec);

/* coefficientwise arithmetic as polynomials in Y; weights add under * */
NHSeries operator+(const NHSeries& a, const NHSeries& b);
NHSeries operator*(const NHSeries& a, const NHSeries& b);
NHSeries operator*(const NHSeries& a, const RatF& s);
/* depth-0 series of the given weight and type */
NHSeries nh_constant(const USeries& f, long weight, long type);

/* E₂ = E - Y */
NHForm e2(const FiniteField& F);

// ---- symbolic hyperderivatives ----

/* ∂^t of g, h or E for t = 0..n as polynomials in g, h, E. Each order is
 * obtained by peeling the δ-image of the generator in the nearly holomorphic
 * model (membership at every layer) and certified against the series engine;
 * failure throws std::logic_error. Cached per field. */
std::vector<FormPoly> generator_derivatives(const FiniteField& F, Var v, unsigned n);

/* ∂^0 f .. ∂^n f for f in K[g, h, E, X], by Leibniz on cached monomial
 * derivative vectors. Throws std::invalid_argument if Y occurs. */
std::vector<FormPoly> hyper_all(const FormPoly& f, unsigned n);
FormPoly symbolic_hyper(unsigned n, const FormPoly& f);

// ---- Maass-Shimura ----

/* δ_k^r on f Y^μ: sum_i binom(k - μ + r - 1, i) ∂^{r-i} f Y^{μ+i}; identity for
 * r = 0. Acts on polynomials in g, h, E, Y, X; k is taken as given and need
 * not match the metadata of the input. Throws std::invalid_argument when
 * k < 2μ for some Y-degree μ present.
 * perturb != 0 adds perturb to binomial i = 1 (fault injection). */
FormPoly maass_shimura(const FormPoly& f, long k, unsigned r, long perturb = 0);
NHForm maass_shimura(const NHForm& f, long k, unsigned r);
/* the same on series coefficients */
NHSeries maass_shimura(const NHSeries& f, long k, unsigned r);

// ---- ι and the structure decomposition ----

/* the Y^0 part */
GradedForm iota(const NHForm& f);
/* E ↦ E - Y; throws std::invalid_argument if f has Y or X */
NHForm inverse_iota(const GradedForm& f);

struct Decomposition {
    bool ok = false;
    std::vector<FormPoly> g;  // g_0..g_r in g, h with F = sum g_j E₂^j
    long failed_layer = -1;
    Membership::Status layer_status = Membership::member;
    std::string detail;

    /* sum g_j E^j */
    FormPoly quasi_modular(const FiniteField& F) const;
};

/* peel the top Y-coefficient (which is (-1)^r g_r), certify g_r by membership
 * at weight k - 2r and type m - r, subtract g_r E₂^r, recurse */
Decomposition decompose(const NHSeries& f);
Decomposition decompose(const NHForm& f, long prec);

// ---- formal equivariance ----

struct EquivarianceResult {
    bool symbolic = false;  // δ(slash F) == slash(δ F) as polynomials
    bool series = false;    // same with u-series coefficients, X through hasse_on_X
    bool ok() const { return symbolic && series; }
    std::string detail;
};

/* δ_k^r(slash F) = slash(δ_k^r F) for F in K[g, h, E, Y] of weight k.
 * prec is the u-precision of the series route. */
EquivarianceResult formal_equivariance_check(const FormPoly& f, long k, unsigned r, long prec, long perturb = 0);

// ---- combinatorial kernels (values in F_p) ----

/* sum_i (-1)^{i-l} binom(k+r-1, i) binom(k+r-1-i, r-j-i) binom(i, l) mod p */
unsigned shimura_kernel(unsigned p, long k, long r, long j, long l);
/* sum_{j=1}^{i} (-1)^j binom(r-(i-j), j) binom(r, i-j) mod p */
unsigned reslash_kernel(unsigned p, long r, long i);

}  // namespace dmf

#endif
