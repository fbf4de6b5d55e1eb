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

#ifndef DMF_BINOM_HPP
#define DMF_BINOM_HPP

#include <gmpxx.h>

namespace dmf {

/* exact binomial coefficient, 0 when k > n */
mpz_class binom_big(unsigned long long n, unsigned long long k);

/* binom(n, k) mod p by Lucas' theorem (p prime) */
unsigned binom_mod_p(unsigned long long n, unsigned long long k, unsigned p);

/* binom(n, k) mod p for any integer n, using
 * binom(-j, k) = (-1)^k binom(j + k - 1, k) for j > 0 */
unsigned binom_signed_mod_p(long long n, unsigned long long k, unsigned p);

/* reduce a big integer into [0, p) */
unsigned mod_p(const mpz_class& v, unsigned p);

}  // namespace dmf

#endif
