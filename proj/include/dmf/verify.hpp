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

#ifndef DMF_VERIFY_HPP
#define DMF_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace dmf {

/* one verified identity */
struct Check {
    std::string id;
    std::string anchor;  // the result it exercises, in words
    bool pass = false;
    std::string detail;
};

struct VerifyConfig {
    unsigned q = 3;
    long prec = 300;    // u-precision of the generator and U-operator suites
    long vdigits = 30;  // numeric truncation V in valuation digits
    std::uint64_t seed = 1;
};

/* combinatorics, generators, rankin-cohen, u-operators, structure,
 * equivariance, appendix-a, numerics (in this order) */
const std::vector<std::string>& suite_names();

/* Run one suite, or all of them for "all". Checks come back in a fixed
 * order, so the report is deterministic for fixed (config, seed).
 * Throws std::invalid_argument for an unknown suite or unusable config and
 * PrecisionError when prec is below what a suite needs. */
std::vector<Check> run_suite(const std::string& name, const VerifyConfig& c);

}  // namespace dmf

#endif
