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

#ifndef DMF_OPERATORS_HPP
#define DMF_OPERATORS_HPP

#include <gmpxx.h>

#include <string>
#include <vector>

#include "dmf/nearly.hpp"

namespace dmf {

/* β̃_{r,ν} = (r-ν)! ν! binom(k+r-1, r-ν) binom(w+r-1, ν) over Z, divided by
 * their gcd before reduction mod p */
struct RCCoeffs {
    unsigned r = 0;
    long k = 0, w = 0;
    std::vector<mpz_class> beta_tilde;  // index ν = 0..r
    mpz_class gcd;
    std::vector<unsigned> beta;  // β̃/gcd mod p
};
RCCoeffs rc_coeffs(unsigned p, unsigned r, long k, long w);

/* c̃_1 = (r-1) binom(k+r-1, r-1), c̃_v = r k^{v-1} binom(k+r-1, r-v) for v >= 2 */
struct UCoeffs {
    unsigned r = 0;
    long k = 0;
    std::vector<mpz_class> c_tilde;  // index v = 1..r; entry 0 unused
    mpz_class gcd;
    std::vector<unsigned> c;
};
/* throws std::invalid_argument for r < 2 */
UCoeffs u_coeffs(unsigned p, unsigned r, long k);

/* sum_ν (-1)^{r-ν} β_{r,ν} ∂^ν f ∂^{r-ν} g */
USeries rc_bracket(const USeries& f, long k, const USeries& g, long w, unsigned r);

/* sum_{v=1}^{r} (-1)^{r-v} c_v f^{v-1} (∂f)^{r-v} ∂^v f; throws for r < 2 */
USeries u_operator(const USeries& f, long k, unsigned r);

struct NHIdentity {
    bool y_cancel = false;  // every Y^i, i >= 1, vanishes
    bool y0_match = false;  // Y^0 equals the holomorphic operator
    bool ok() const { return y_cancel && y0_match; }
    std::string detail;
};

/* The bracket rebuilt from δ_k^ν f and δ_w^{r-ν} g in the nearly holomorphic
 * model. perturb is added to β_{r,0} on that side only. */
NHIdentity rc_bracket_nh_identity(const USeries& f, long k, const USeries& g, long w, unsigned r, long perturb = 0);

/* The U-operator rebuilt from f, δ_k f and δ_k^v f. perturb is added to c_1 on
 * that side only. */
NHIdentity u_operator_nh_identity(const USeries& f, long k, unsigned r, long perturb = 0);

}  // namespace dmf

#endif
