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

#include "dmf/operators.hpp"

#include <stdexcept>

namespace dmf {

namespace {

mpz_class zbinom(long n, long k)
{
    if (k < 0) return 0;
    mpz_class r;
    if (n >= 0) mpz_bin_uiui(r.get_mpz_t(), (unsigned long)n, (unsigned long)k);
    else {
        // binom(n, k) = (-1)^k binom(k - n - 1, k)
        mpz_bin_uiui(r.get_mpz_t(), (unsigned long)(k - n - 1), (unsigned long)k);
        if (k % 2) r = -r;
    }
    return r;
}

mpz_class zfact(long n)
{
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), (unsigned long)n);
    return r;
}

unsigned zmod(const mpz_class& v, unsigned p)
{
    mpz_class m = v % p;
    if (m < 0) m += p;
    return unsigned(m.get_ui());
}

mpz_class gcd_all(const std::vector<mpz_class>& v, std::size_t from)
{
    mpz_class g = 0;
    for (std::size_t i = from; i < v.size(); ++i) g = gcd(g, v[i]);
    return g == 0 ? mpz_class(1) : g;
}

RatF signed_fp(const FiniteField& F, long sign, long v)
{
    return RatF::from_int(F, sign < 0 ? -v : v);
}

}  // namespace

RCCoeffs rc_coeffs(unsigned p, unsigned r, long k, long w)
{
    RCCoeffs c;
    c.r = r;
    c.k = k;
    c.w = w;
    const long R = long(r);
    for (long nu = 0; nu <= R; ++nu)
        c.beta_tilde.push_back(zfact(R - nu) * zfact(nu) * zbinom(k + R - 1, R - nu) * zbinom(w + R - 1, nu));
    c.gcd = gcd_all(c.beta_tilde, 0);
    for (auto& b : c.beta_tilde) c.beta.push_back(zmod(mpz_class(b / c.gcd), p));
    return c;
}

UCoeffs u_coeffs(unsigned p, unsigned r, long k)
{
    if (r < 2) throw std::invalid_argument("U-operator needs r >= 2");
    UCoeffs c;
    c.r = r;
    c.k = k;
    const long R = long(r);
    c.c_tilde.assign(r + 1, 0);
    c.c_tilde[1] = (R - 1) * zbinom(k + R - 1, R - 1);
    mpz_class kp = 1;
    for (long v = 2; v <= R; ++v) {
        kp *= k;
        c.c_tilde[v] = R * kp * zbinom(k + R - 1, R - v);
    }
    c.gcd = gcd_all(c.c_tilde, 1);
    c.c.assign(r + 1, 0);
    for (long v = 1; v <= R; ++v) c.c[v] = zmod(mpz_class(c.c_tilde[v] / c.gcd), p);
    return c;
}

USeries rc_bracket(const USeries& f, long k, const USeries& g, long w, unsigned r)
{
    const FiniteField& F = f.field();
    RCCoeffs c = rc_coeffs(F.p(), r, k, w);
    long prec = std::min(f.prec(), g.prec());
    USeries out(F, prec);
    for (unsigned nu = 0; nu <= r; ++nu) {
        if (!c.beta[nu]) continue;
        out += hyper(nu, f) * hyper(r - nu, g) * signed_fp(F, (r - nu) % 2 ? -1 : 1, c.beta[nu]);
    }
    return out;
}

USeries u_operator(const USeries& f, long k, unsigned r)
{
    const FiniteField& F = f.field();
    UCoeffs c = u_coeffs(F.p(), r, k);
    USeries d1 = hyper(1, f);
    USeries out(F, f.prec());
    for (unsigned v = 1; v <= r; ++v) {
        if (!c.c[v]) continue;
        USeries t = f.pow(v - 1) * d1.pow(r - v) * hyper(v, f);
        out += t * signed_fp(F, (r - v) % 2 ? -1 : 1, c.c[v]);
    }
    return out;
}

namespace {

NHIdentity judge(const NHSeries& s, const USeries& holo)
{
    NHIdentity out;
    out.y_cancel = true;
    for (auto& [i, t] : s.y)
        if (i > 0 && !t.is_zero()) {
            out.y_cancel = false;
            out.detail = "Y^" + std::to_string(i) + " part survives";
            break;
        }
    auto it = s.y.find(0);
    out.y0_match = it == s.y.end() ? holo.is_zero() : it->second == holo;
    if (!out.y0_match) out.detail += (out.detail.empty() ? "" : "; ") + std::string("Y^0 part differs");
    return out;
}

NHSeries nh_pow(const NHSeries& a, unsigned e, long prec)
{
    const FiniteField& F = a.y.begin()->second.field();
    NHSeries r = nh_constant(USeries::constant(RatF::constant(F, 1), prec), 0, 0);
    for (unsigned i = 0; i < e; ++i) r = r * a;
    return r;
}

}  // namespace

NHIdentity rc_bracket_nh_identity(const USeries& f, long k, const USeries& g, long w, unsigned r, long perturb)
{
    const FiniteField& F = f.field();
    RCCoeffs c = rc_coeffs(F.p(), r, k, w);
    NHSeries nf = nh_constant(f, k, 0), ng = nh_constant(g, w, 0);
    NHSeries sum;
    for (unsigned nu = 0; nu <= r; ++nu) {
        long b = long(c.beta[nu]) + (nu == 0 ? perturb : 0);
        if (b % long(F.p()) == 0) continue;
        NHSeries t = maass_shimura(nf, k, nu) * maass_shimura(ng, w, r - nu);
        sum = sum + t * signed_fp(F, (r - nu) % 2 ? -1 : 1, b);
    }
    return judge(sum, rc_bracket(f, k, g, w, r));
}

NHIdentity u_operator_nh_identity(const USeries& f, long k, unsigned r, long perturb)
{
    const FiniteField& F = f.field();
    UCoeffs c = u_coeffs(F.p(), r, k);
    NHSeries nf = nh_constant(f, k, 0);
    NHSeries d1 = maass_shimura(nf, k, 1);
    NHSeries sum;
    for (unsigned v = 1; v <= r; ++v) {
        long b = long(c.c[v]) + (v == 1 ? perturb : 0);
        if (b % long(F.p()) == 0) continue;
        NHSeries t = nh_pow(nf, v - 1, f.prec()) * nh_pow(d1, r - v, f.prec()) * maass_shimura(nf, k, v);
        sum = sum + t * signed_fp(F, (r - v) % 2 ? -1 : 1, b);
    }
    return judge(sum, u_operator(f, k, r));
}

}  // namespace dmf
