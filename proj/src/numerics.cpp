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

#include "dmf/numerics.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "dmf/carlitz.hpp"

namespace dmf {

namespace {

long floor_q(const mpq_class& x)
{
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return r.get_si();
}

long ceil_q(const mpq_class& x)
{
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return r.get_si();
}

// V in θ^{-1} units to t units, clamped so exact sentinels survive
long to_t(const mpq_class& V, unsigned e)
{
    mpq_class x = V * e;
    if (x >= PuiseuxNum::kExact) return PuiseuxNum::kExact;
    if (x <= -PuiseuxNum::kExact) return -PuiseuxNum::kExact;
    return floor_q(x);
}

bool allowed_e(unsigned e, unsigned q)
{
    return e == 1 || e == 2 || e == q - 1 || e == 2 * (q - 1);
}

}  // namespace

// ---- Ambient ----

const Ambient& Ambient::get(unsigned q, unsigned m)
{
    static std::mutex mu;
    static std::map<std::pair<unsigned, unsigned>, std::unique_ptr<Ambient>> reg;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = reg[{q, m}];
    if (!slot) {
        auto a = std::make_unique<Ambient>();
        a->q = q;
        a->m = m;
        a->Fq = &FiniteField::of_order(q);
        a->F = &FiniteField::extension(*a->Fq, m);
        slot = std::move(a);
    }
    return *slot;
}

Fe Ambient::zeta() const
{
    const Fe minus1 = F->neg(1);
    for (unsigned x = 1; x < F->size(); ++x)
        if (F->pow(Fe(x), q - 1) == minus1) return Fe(x);
    throw std::invalid_argument("no (q-1)-th root of -1 in " + F->name() + "; use an even extension degree");
}

// ---- PuiseuxNum ----

PuiseuxNum::PuiseuxNum(const Ambient& A, unsigned e) : A_(&A), e_(e)
{
    if (!allowed_e(e, A.q)) throw std::invalid_argument("ramification index must be 1, 2, q-1 or 2(q-1)");
}

PuiseuxNum PuiseuxNum::constant(const Ambient& A, Fe c, unsigned e)
{
    return monomial(A, c, 0, e);
}

PuiseuxNum PuiseuxNum::monomial(const Ambient& A, Fe c, long n, unsigned e)
{
    PuiseuxNum r(A, e);
    if (c) {
        r.lo_ = n * long(e);
        r.c_ = {c};
    }
    return r;
}

PuiseuxNum PuiseuxNum::from_poly(const Ambient& A, const Poly& p)
{
    PuiseuxNum r(A, 1);
    if (p.is_zero()) return r;
    // θ^k = t^{-k}
    r.lo_ = -long(p.degree());
    r.c_.assign(p.coeffs().rbegin(), p.coeffs().rend());
    r.normalize();
    return r;
}

PuiseuxNum PuiseuxNum::from_ratf(const Ambient& A, const RatF& f, const mpq_class& V)
{
    PuiseuxNum n = from_poly(A, f.num());
    if (f.is_poly()) return n;
    return divide(n, from_poly(A, f.den()), V);
}

PuiseuxNum PuiseuxNum::from_digits(const Ambient& A, unsigned e, const std::map<long, Fe>& d, long prec_t)
{
    PuiseuxNum r(A, e);
    r.prec_ = std::min(prec_t, kExact);
    if (!d.empty()) {
        r.lo_ = d.begin()->first;
        r.c_.assign(std::size_t(d.rbegin()->first - r.lo_ + 1), 0);
        for (auto& [n, c] : d) {
            if (c >= A.F->size()) throw std::invalid_argument("digit outside the coefficient field");
            r.c_[std::size_t(n - r.lo_)] = c;
        }
    }
    r.normalize();
    return r;
}

void PuiseuxNum::normalize()
{
    if (prec_ < kExact && !c_.empty()) {
        long keep = prec_ - lo_;
        if (keep <= 0) c_.clear();
        else if (long(c_.size()) > keep) c_.resize(std::size_t(keep));
    }
    std::size_t z = 0;
    while (z < c_.size() && c_[z] == 0) ++z;
    if (z) {
        c_.erase(c_.begin(), c_.begin() + long(z));
        lo_ += long(z);
    }
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
    if (c_.empty()) lo_ = 0;
}

Fe PuiseuxNum::digit(long n) const
{
    if (n >= prec_) throw std::out_of_range("digit beyond the known precision");
    if (n < lo_ || n >= lo_ + long(c_.size())) return 0;
    return c_[std::size_t(n - lo_)];
}

std::map<long, Fe> PuiseuxNum::digits() const
{
    std::map<long, Fe> d;
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i]) d[lo_ + long(i)] = c_[i];
    return d;
}

PuiseuxNum PuiseuxNum::with_e(unsigned e) const
{
    if (e == e_) return *this;
    if (e % e_) throw std::invalid_argument("ramification index can only be refined");
    const long k = long(e / e_);
    PuiseuxNum r(*A_, e);
    r.prec_ = exact() ? kExact : prec_ * k;
    if (!c_.empty()) {
        r.lo_ = lo_ * k;
        r.c_.assign((c_.size() - 1) * std::size_t(k) + 1, 0);
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i * std::size_t(k)] = c_[i];
    }
    return r;
}

PuiseuxNum PuiseuxNum::truncate(const mpq_class& V) const
{
    PuiseuxNum r = *this;
    r.prec_ = std::min(prec_, to_t(V, e_));
    r.normalize();
    return r;
}

bool PuiseuxNum::in_base() const
{
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i]) continue;
        if ((lo_ + long(i)) % long(e_)) return false;
        if (!A_->in_base(c_[i])) return false;
    }
    return true;
}

unsigned PuiseuxNum::common_e(const PuiseuxNum& a, const PuiseuxNum& b)
{
    if (a.A_ != b.A_) throw std::invalid_argument("PuiseuxNum operands over different coefficient fields");
    return std::lcm(a.e_, b.e_);
}

PuiseuxNum PuiseuxNum::operator-() const
{
    PuiseuxNum r = *this;
    for (auto& c : r.c_) c = A_->F->neg(c);
    return r;
}

PuiseuxNum PuiseuxNum::operator+(const PuiseuxNum& b0) const
{
    const unsigned e = common_e(*this, b0);
    PuiseuxNum a = with_e(e), b = b0.with_e(e);
    PuiseuxNum r(*A_, e);
    r.prec_ = std::min(a.prec_, b.prec_);
    if (a.c_.empty() && b.c_.empty()) return r;
    long lo = a.c_.empty() ? b.lo_ : b.c_.empty() ? a.lo_ : std::min(a.lo_, b.lo_);
    long hi = std::max(a.c_.empty() ? lo : a.lo_ + long(a.c_.size()), b.c_.empty() ? lo : b.lo_ + long(b.c_.size()));
    if (r.prec_ < kExact) hi = std::min(hi, r.prec_);
    if (hi <= lo) {
        r.normalize();
        return r;
    }
    r.lo_ = lo;
    r.c_.assign(std::size_t(hi - lo), 0);
    const FiniteField& F = *A_->F;
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        long n = a.lo_ + long(i);
        if (n < hi) r.c_[std::size_t(n - lo)] = a.c_[i];
    }
    for (std::size_t i = 0; i < b.c_.size(); ++i) {
        long n = b.lo_ + long(i);
        if (n < hi) r.c_[std::size_t(n - lo)] = F.add(r.c_[std::size_t(n - lo)], b.c_[i]);
    }
    r.normalize();
    return r;
}

PuiseuxNum PuiseuxNum::operator-(const PuiseuxNum& b) const
{
    return *this + (-b);
}

PuiseuxNum PuiseuxNum::operator*(const PuiseuxNum& b0) const
{
    const unsigned e = common_e(*this, b0);
    PuiseuxNum a = with_e(e), b = b0.with_e(e);
    PuiseuxNum r(*A_, e);
    if ((a.exact() && a.c_.empty()) || (b.exact() && b.c_.empty())) return r;
    if (a.exact() && b.exact()) r.prec_ = kExact;
    else r.prec_ = std::min(a.prec_ + b.val_t(), b.prec_ + a.val_t());
    r.prec_ = std::min(r.prec_, kExact);
    if (a.c_.empty() || b.c_.empty()) {
        r.normalize();
        return r;
    }
    r.lo_ = a.lo_ + b.lo_;
    long len = long(a.c_.size() + b.c_.size()) - 1;
    if (r.prec_ < kExact) len = std::min(len, r.prec_ - r.lo_);
    if (len <= 0) {
        r.normalize();
        return r;
    }
    r.c_ = kernel::mul(*A_->F, a.c_, b.c_);
    if (long(r.c_.size()) > len) r.c_.resize(std::size_t(len));
    r.normalize();
    return r;
}

PuiseuxNum PuiseuxNum::operator*(Fe s) const
{
    PuiseuxNum r = *this;
    for (auto& c : r.c_) c = A_->F->mul(c, s);
    r.normalize();
    return r;
}

PuiseuxNum PuiseuxNum::qpow(unsigned i) const
{
    long k = 1;
    for (unsigned j = 0; j < i; ++j) k *= long(A_->q);
    PuiseuxNum r(*A_, e_);
    r.prec_ = exact() ? kExact : std::min(prec_ * k, kExact);
    if (c_.empty()) return r;
    r.lo_ = lo_ * k;
    r.c_.assign((c_.size() - 1) * std::size_t(k) + 1, 0);
    for (std::size_t n = 0; n < c_.size(); ++n) {
        Fe c = c_[n];
        for (unsigned j = 0; j < i; ++j) c = A_->frob(c);
        r.c_[n * std::size_t(k)] = c;
    }
    r.normalize();
    return r;
}

PuiseuxNum PuiseuxNum::sigma() const
{
    if (e_ != 1) throw std::invalid_argument("σ is only defined on unramified values");
    PuiseuxNum r = *this;
    for (auto& c : r.c_) c = A_->frob(c);
    return r;
}

bool PuiseuxNum::agrees(const PuiseuxNum& b0, const mpq_class& V) const
{
    const unsigned e = common_e(*this, b0);
    PuiseuxNum a = with_e(e), b = b0.with_e(e);
    long lim = std::min({a.prec_, b.prec_, to_t(V, e)});
    PuiseuxNum d = a - b;
    return d.c_.empty() || d.lo_ >= lim;
}

mpq_class PuiseuxNum::agreement(const PuiseuxNum& b) const
{
    PuiseuxNum d = *this - b;
    return d.valuation();
}

bool PuiseuxNum::operator==(const PuiseuxNum& b) const
{
    const unsigned e = common_e(*this, b);
    PuiseuxNum x = with_e(e), y = b.with_e(e);
    return x.prec_ == y.prec_ && x.lo_ == y.lo_ && x.c_ == y.c_;
}

std::string PuiseuxNum::str() const
{
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i]) continue;
        if (!first) os << " + ";
        first = false;
        os << fe_to_string(*A_->F, c_[i]);
        long n = lo_ + long(i);
        if (n) {
            mpq_class ex(-n, e_);
            ex.canonicalize();
            os << "*θ^" << ex.get_str();
        }
    }
    if (first) os << "0";
    if (!exact()) {
        mpq_class p(prec_, e_);
        p.canonicalize();
        os << " + O(θ^" << mpq_class(-p).get_str() << ")";
    }
    return os.str();
}

PuiseuxNum inverse(const PuiseuxNum& x, const mpq_class& V)
{
    if (x.is_zero()) throw std::domain_error("inverse of a value with no known nonzero digit");
    const Ambient& A = x.ambient();
    const FiniteField& F = *A.F;
    const unsigned e = x.e();
    std::map<long, Fe> d = x.digits();
    const long v = d.begin()->first;
    if (x.exact() && d.size() == 1) return PuiseuxNum::from_digits(A, e, {{-v, F.inv(d.begin()->second)}});
    long prec = to_t(V, e);
    if (!x.exact()) prec = std::min(prec, x.prec_t() - 2 * v);
    const long n = prec + v;  // digits of the result
    if (n <= 0) return PuiseuxNum::from_digits(A, e, {}, prec);
    std::vector<Fe> a(std::size_t(n), 0);
    for (auto& [k, c] : d)
        if (k - v < n) a[std::size_t(k - v)] = c;
    std::vector<Fe> b(std::size_t(n), 0);
    const Fe b0 = F.inv(a[0]);
    b[0] = b0;
    // only the nonzero a_k matter; digit counts stay small relative to n
    std::vector<std::size_t> nz;
    for (std::size_t k = 1; k < a.size(); ++k)
        if (a[k]) nz.push_back(k);
    for (std::size_t m = 1; m < std::size_t(n); ++m) {
        Fe s = 0;
        for (std::size_t k : nz) {
            if (k > m) break;
            if (b[m - k]) s = F.add(s, F.mul(a[k], b[m - k]));
        }
        b[m] = F.neg(F.mul(b0, s));
    }
    std::map<long, Fe> out;
    for (std::size_t m = 0; m < b.size(); ++m)
        if (b[m]) out[long(m) - v] = b[m];
    return PuiseuxNum::from_digits(A, e, out, prec);
}

PuiseuxNum divide(const PuiseuxNum& a, const PuiseuxNum& b, const mpq_class& V)
{
    if (a.exact() && a.is_zero()) return PuiseuxNum(a.ambient(), std::lcm(a.e(), b.e()));
    PuiseuxNum r = a * inverse(b, V - a.valuation() + 1);
    return r.truncate(V);
}

PuiseuxNum power(const PuiseuxNum& x, long n, const mpq_class& V)
{
    if (n < 0) return inverse(power(x, -n, V), V);
    PuiseuxNum r = PuiseuxNum::constant(x.ambient(), 1, x.e()), b = x;
    for (long k = n; k; k >>= 1) {
        if (k & 1) r = r * b;
        if (k > 1) b = b * b;
    }
    return r;
}

// ---- π̃ and the Carlitz exponential ----

PuiseuxNum pitilde(const Ambient& A, const mpq_class& V)
{
    const unsigned q = A.q, e = q - 1;
    const FiniteField& F = *A.F;
    const long P = ceil_q(V * e);
    const long R = P + long(q);  // relative digits; π̃ = ζ t^{-q} · Π
    if (R <= 0) return PuiseuxNum::from_digits(A, e, {}, P);
    std::vector<Fe> c(std::size_t(R), 0);
    c[0] = 1;
    for (long qi = long(q);; qi *= long(q)) {
        long k = long(e) * (qi - 1);
        if (k >= R) break;
        for (long n = k; n < R; ++n) c[std::size_t(n)] = F.add(c[std::size_t(n)], c[std::size_t(n - k)]);
    }
    const Fe z = A.zeta();
    std::map<long, Fe> d;
    for (long n = 0; n < R; ++n)
        if (c[std::size_t(n)]) d[n - long(q)] = F.mul(z, c[std::size_t(n)]);
    return PuiseuxNum::from_digits(A, e, d, P);
}

PuiseuxNum carlitz_exp_eval(const PuiseuxNum& x, const mpq_class& V)
{
    const Ambient& A = x.ambient();
    if (x.exact() && x.is_zero()) return PuiseuxNum(A, x.e());
    const mpq_class v = x.valuation();
    PuiseuxNum sum(A, x.e());
    mpz_class qi = 1;
    for (unsigned i = 0; i < 64; ++i, qi *= A.q) {
        mpq_class low = mpq_class(qi) * (v + i);
        if (low >= V && v + i >= 0) return sum.truncate(V);
        PuiseuxNum Di = PuiseuxNum::from_poly(A, carlitz_d(*A.Fq, i));
        sum = sum + divide(x.qpow(i), Di, V);
    }
    throw PrecisionError("Carlitz exponential: terms did not pass the target valuation");
}

PuiseuxNum u_eval(const PuiseuxNum& z, const mpq_class& V)
{
    const Ambient& A = z.ambient();
    mpq_class guard = 8;
    for (int attempt = 0; attempt < 6; ++attempt) {
        mpq_class W = V + guard;
        PuiseuxNum pz = pitilde(A, W - z.valuation()) * z;
        PuiseuxNum y = carlitz_exp_eval(pz, W);
        if (y.is_zero()) throw PrecisionError("e_C(π̃z) vanishes to working precision (z in A?)");
        PuiseuxNum u = inverse(y, V);
        if (u.precision() >= V) return u.truncate(V);
        guard += V - u.precision() + 4;
    }
    throw PrecisionError("u(z): could not reach the requested precision");
}

mpq_class imaginary_valuation(const PuiseuxNum& z)
{
    if (z.e() != 1) throw std::invalid_argument("imaginary distance needs an unramified value");
    for (auto& [n, c] : z.digits())
        if (!z.ambient().in_base(c)) return mpq_class(n);
    return z.precision();
}

// ---- evaluation of u-expansions ----

SeriesValue eval_useries(const USeries& f, const PuiseuxNum& u0, const mpq_class& V)
{
    const Ambient& A = u0.ambient();
    if (u0.is_zero() || u0.valuation() <= 0) throw std::invalid_argument("u-series evaluation needs |u0| < 1");
    const mpq_class vu = u0.valuation();
    const long N = f.prec(), lo = f.val();
    SeriesValue out;
    out.growth = 0;
    if (lo >= N) {
        out.value = PuiseuxNum(A, u0.e()).truncate(std::min(V, mpq_class(mpq_class(N) * vu)));
        out.order = out.value.precision();
        return out;
    }
    // model -val(a_n) <= c + s n: s from the upper half, c covers the low terms
    std::vector<std::pair<long, long>> nz;  // (n, -val(a_n))
    for (long n = std::max(lo, 1L); n < N; ++n) {
        RatF c = f.coeff(n);
        if (!c.is_zero()) nz.emplace_back(n, -long(c.val_inf()));
    }
    mpq_class s = 0;
    for (auto& [n, d] : nz)
        if (2 * n >= N) s = std::max(s, mpq_class(d, n));
    s.canonicalize();
    mpq_class off = 0;
    for (auto& [n, d] : nz) off = std::max(off, mpq_class(mpq_class(d) - s * n));
    out.growth = s;
    if (vu <= s) throw PrecisionError("coefficient growth outpaces |u0|");
    const mpq_class tail = mpq_class(N) * (vu - s) - off;
    if (tail < V) throw PrecisionError("series precision too low for the requested valuation");

    // Horner in u0 on sum_{n >= lo} a_n u0^{n - lo}
    PuiseuxNum acc(A, u0.e());
    for (long n = N - 1; n >= lo; --n) {
        mpq_class cap = V - mpq_class(n) * vu + 8;
        acc = acc * u0 + PuiseuxNum::from_ratf(A, f.coeff(n), cap);
        acc = acc.truncate(V - mpq_class(std::max(lo, 0L)) * vu + 8);
    }
    if (lo != 0) acc = acc * power(u0, lo, V - acc.valuation() + 8);
    out.value = acc.truncate(V);
    out.order = std::min(out.value.precision(), tail);
    return out;
}

PuiseuxNum eisenstein_direct(const PuiseuxNum& z, const mpq_class& V)
{
    const Ambient& A = z.ambient();
    PuiseuxNum sum(A, 1);
    for (unsigned d = 0; d < 16; ++d) {
        bool all_past = true;
        for (const Poly& a : monic_polys(*A.Fq, d)) {
            PuiseuxNum pa = PuiseuxNum::from_poly(A, a);
            PuiseuxNum term = pa * u_eval(pa * z, V + d);
            if (term.valuation() < V) all_past = false;
            sum = sum + term;
        }
        if (all_past && d > 0) return sum.truncate(V);
    }
    throw PrecisionError("E(z): the direct sum did not settle within degree 16");
}

InversionCheck verify_inversion_law(const PuiseuxNum& z0, const mpq_class& V, long perturb)
{
    const Ambient& A = z0.ambient();
    const FiniteField& F = *A.F;
    InversionCheck out;
    const mpq_class W = V + 4 + 2 * A.q;
    PuiseuxNum zi = inverse(z0, W + 2 * z0.valuation() + 8);
    if (imaginary_valuation(z0) > 0 || imaginary_valuation(zi) > 0)
        throw std::invalid_argument("inversion law needs |z|_i >= 1 and |1/z|_i >= 1");

    PuiseuxNum u1 = u_eval(z0, W), u2 = u_eval(zi, W);
    mpq_class vu = std::min(u1.valuation(), u2.valuation());
    long N = ceil_q(2 * (W + 4) / vu) + 2 * long(A.q);
    SeriesValue E1, E2;
    for (int attempt = 0;; ++attempt) {
        USeries E = false_eisenstein(*A.Fq, N);
        try {
            E1 = eval_useries(E, u1, W);
            E2 = eval_useries(E, u2, W);
            break;
        } catch (const PrecisionError&) {
            if (attempt == 3) throw;
            N *= 2;
        }
    }
    PuiseuxNum pz = pitilde(A, W + 8 - z0.valuation()) * z0;
    PuiseuxNum corr = inverse(pz, W) * F.from_int(1 + perturb);
    out.lhs = E2.value.truncate(E2.order);
    out.rhs = (-(z0 * z0) * (E1.value.truncate(E1.order) - corr)).truncate(W);
    out.agreement = out.lhs.agreement(out.rhs);
    const mpq_class reached = std::min(out.lhs.precision(), out.rhs.precision());
    out.ok = reached >= V && out.agreement >= V;
    std::ostringstream os;
    os << "agreement " << out.agreement.get_str() << ", precision " << reached.get_str() << ", series length " << N;
    out.detail = os.str();
    return out;
}

// ---- quadratic extensions ----

QuadExtElem::QuadExtElem(PuiseuxNum a, PuiseuxNum b) : gen_(inv_sqrt_theta), a_(std::move(a)), b_(std::move(b))
{
    if (a_.e() != 1 || b_.e() != 1) throw std::invalid_argument("quadratic-extension components must be unramified");
    if (&a_.ambient() != &b_.ambient()) throw std::invalid_argument("components over different fields");
    if (a_.ambient().q % 2 == 0) throw std::invalid_argument("the 1/√θ generator needs odd characteristic");
}

QuadExtElem::QuadExtElem(PuiseuxNum a, PuiseuxNum b, PuiseuxNum B)
    : gen_(artin_schreier), a_(std::move(a)), b_(std::move(b)), B_(std::move(B))
{
    if (a_.e() != 1 || b_.e() != 1 || B_.e() != 1)
        throw std::invalid_argument("quadratic-extension components must be unramified");
    if (&a_.ambient() != &b_.ambient() || &a_.ambient() != &B_.ambient())
        throw std::invalid_argument("components over different fields");
    if (a_.ambient().q % 2) throw std::invalid_argument("the Artin-Schreier generator needs even characteristic");
    if (B_.is_zero()) throw std::invalid_argument("B must be nonzero");
}

void QuadExtElem::check_compatible(const QuadExtElem& y) const
{
    if (gen_ != y.gen_) throw std::invalid_argument("quadratic-extension elements with different generators");
    if (gen_ == artin_schreier && !(B_ == y.B_)) throw std::invalid_argument("elements over different B");
}

mpq_class QuadExtElem::gen_valuation() const
{
    if (gen_ == inv_sqrt_theta) return mpq_class(1, 2);
    return artin_schreier_root_valuations(B_).first;
}

mpq_class QuadExtElem::valuation() const
{
    mpq_class va = a_.valuation(), vb = b_.valuation() + gen_valuation();
    if (a_.is_zero()) return vb;
    if (b_.is_zero()) return va;
    return std::min(va, vb);
}

QuadExtElem QuadExtElem::operator+(const QuadExtElem& y) const
{
    check_compatible(y);
    QuadExtElem r = *this;
    r.a_ = a_ + y.a_;
    r.b_ = b_ + y.b_;
    return r;
}

QuadExtElem QuadExtElem::operator-(const QuadExtElem& y) const
{
    check_compatible(y);
    QuadExtElem r = *this;
    r.a_ = a_ - y.a_;
    r.b_ = b_ - y.b_;
    return r;
}

QuadExtElem QuadExtElem::operator*(const QuadExtElem& y) const
{
    check_compatible(y);
    QuadExtElem r = *this;
    PuiseuxNum bd = b_ * y.b_;
    if (gen_ == inv_sqrt_theta) {
        // s^2 = 1/θ = t
        r.a_ = a_ * y.a_ + bd * PuiseuxNum::monomial(a_.ambient(), 1, 1);
        r.b_ = a_ * y.b_ + b_ * y.a_;
    } else {
        // 𝔠^2 = -𝔠 - B
        r.a_ = a_ * y.a_ - bd * B_;
        r.b_ = a_ * y.b_ + b_ * y.a_ - bd;
    }
    return r;
}

std::string QuadExtElem::str() const
{
    return "(" + a_.str() + ") + (" + b_.str() + ")" + (gen_ == inv_sqrt_theta ? "·s" : "·c");
}

QuadExtElem quad_inverse(const QuadExtElem& x, const mpq_class& V)
{
    QuadExtElem conj = x;
    PuiseuxNum N(x.ambient());
    if (x.gen() == QuadExtElem::inv_sqrt_theta) {
        conj = QuadExtElem(x.a(), -x.b());
        N = x.a() * x.a() - x.b() * x.b() * PuiseuxNum::monomial(x.ambient(), 1, 1);
    } else {
        // the other root of X^2 + X + B is -1 - 𝔠
        conj = QuadExtElem(x.a() - x.b(), -x.b(), x.B());
        N = x.a() * x.a() - x.a() * x.b() + x.b() * x.b() * x.B();
    }
    PuiseuxNum ni = inverse(N, V - x.valuation() + N.valuation());
    if (x.gen() == QuadExtElem::inv_sqrt_theta) return QuadExtElem(conj.a() * ni, conj.b() * ni);
    return QuadExtElem(conj.a() * ni, conj.b() * ni, x.B());
}

std::pair<mpq_class, mpq_class> artin_schreier_root_valuations(const PuiseuxNum& B)
{
    if (B.is_zero()) throw std::invalid_argument("B must be nonzero");
    // Newton polygon of X^2 + X + B through (0, v(B)), (1, 0), (2, 0)
    mpq_class vB = B.valuation();
    if (vB >= 0) return {vB, mpq_class(0)};
    mpq_class h = vB / 2;
    return {h, h};
}

// ---- ψ ----

Fe find_epsilon(unsigned n)
{
    const FiniteField& F = FiniteField::get(2, n);
    for (unsigned x = 1; x < F.size(); ++x) {
        Fe s = 0, y = Fe(x);
        for (unsigned i = 0; i < n; ++i) {
            s = F.add(s, y);
            y = F.mul(y, y);
        }
        if (s == 1) return Fe(x);
    }
    throw std::logic_error("no trace-one element");
}

Fe find_alpha(const Ambient& A, Fe eps)
{
    if (A.q % 2) throw std::invalid_argument("α is only defined in even characteristic");
    const FiniteField& F = *A.F;
    for (unsigned x = 0; x < F.size(); ++x) {
        Fe a = Fe(x);
        if (F.add(F.add(F.mul(a, a), a), eps) != 0) continue;
        if (F.pow(a, A.q) == F.add(a, 1)) return a;
    }
    throw std::invalid_argument("no root of x^2 + x + ε with α^q = α + 1 in " + F.name());
}

Fe xi_point(const Ambient& A)
{
    const FiniteField& F = *A.F;
    if (A.q % 2 == 0) {
        unsigned p, n;
        prime_power(A.q, p, n);
        return find_alpha(A, find_epsilon(n));
    }
    for (unsigned x = 1; x < F.size(); ++x)
        if (F.pow(Fe(x), A.q) == F.neg(Fe(x))) return Fe(x);
    throw std::invalid_argument("no nonzero root of x^q + x in " + F.name());
}

PsiSpec PsiSpec::make_even(const Ambient& A, const PuiseuxNum& B)
{
    if (A.q % 2) throw std::invalid_argument("even variant in odd characteristic");
    if (&B.ambient() != &A || B.e() != 1 || !B.in_base()) throw std::invalid_argument("B must lie in K_∞");
    auto [v1, v2] = artin_schreier_root_valuations(B);
    if (v1.get_den() == 1 || v2.get_den() == 1) throw std::invalid_argument("B gives a root of integral valuation");
    PsiSpec s;
    s.variant = even;
    s.ambient = &A;
    s.B = B;
    unsigned p, n;
    prime_power(A.q, p, n);
    s.eps = find_epsilon(n);
    s.alpha = find_alpha(A, s.eps);
    s.xi = s.alpha;
    return s;
}

PsiSpec PsiSpec::make_odd_I(const Ambient& A)
{
    if (A.q % 2 == 0) throw std::invalid_argument("odd variant in even characteristic");
    PsiSpec s;
    s.variant = odd_I;
    s.ambient = &A;
    s.xi = xi_point(A);
    return s;
}

PsiSpec PsiSpec::make_odd_II(const Ambient& A)
{
    PsiSpec s = make_odd_I(A);
    s.variant = odd_II;
    return s;
}

std::string PsiSpec::name() const
{
    switch (variant) {
        case even: return "even";
        case odd_I: return "odd-I";
        default: return "odd-II";
    }
}

namespace {

void check_variant(const PsiSpec& spec, const QuadExtElem& z)
{
    if (&z.ambient() != spec.ambient) throw std::invalid_argument("element and ψ over different fields");
    bool even = spec.variant == PsiSpec::even;
    if (even != (z.gen() == QuadExtElem::artin_schreier)) throw std::invalid_argument("ψ variant does not match the generator");
    if (even && !(z.B() == spec.B)) throw std::invalid_argument("element and ψ use different B");
}

QuadExtElem make_like(const QuadExtElem& z, PuiseuxNum a, PuiseuxNum b)
{
    if (z.gen() == QuadExtElem::inv_sqrt_theta) return QuadExtElem(std::move(a), std::move(b));
    return QuadExtElem(std::move(a), std::move(b), z.B());
}

}  // namespace

QuadExtElem psi_apply(const PsiSpec& spec, const QuadExtElem& z)
{
    check_variant(spec, z);
    PuiseuxNum sa = z.a().sigma(), sb = z.b().sigma();
    switch (spec.variant) {
        case PsiSpec::even: return make_like(z, sa + sb, sb);  // σ(a) + σ(b)(𝔠 + 1)
        case PsiSpec::odd_I: return make_like(z, sa, -sb);
        default: return make_like(z, sa, sb);
    }
}

bool fixed_field_test(const PsiSpec& spec, const QuadExtElem& z)
{
    check_variant(spec, z);
    const FiniteField& F = *spec.ambient->F;
    switch (spec.variant) {
        case PsiSpec::even: return z.b().in_base() && (z.a() - z.b() * spec.alpha).in_base();
        case PsiSpec::odd_I: return z.a().in_base() && (z.b() * F.inv(spec.xi)).in_base();
        default: return z.a().in_base() && z.b().in_base();
    }
}

bool cm_evaluation_identity(const PsiSpec& spec, const QuadExtElem& z0, bool psi_identity)
{
    check_variant(spec, z0);
    const FiniteField& F = *spec.ambient->F;
    QuadExtElem tau = z0;
    if (z0.b().is_zero()) {
        if (z0.a().in_base()) throw std::invalid_argument("z0 lies in K_∞");
        if (!(z0.a().sigma().sigma() == z0.a())) throw std::invalid_argument("z0 is not quadratic over K_∞");
        tau = make_like(z0, z0.a().sigma(), z0.b());
    } else if (z0.gen() == QuadExtElem::inv_sqrt_theta) {
        bool b_ok = z0.b().in_base() || (z0.b() * F.inv(spec.xi)).in_base();
        if (!z0.a().in_base() || !b_ok) throw std::invalid_argument("z0 is not in K_∞(1/√θ) or K_∞(ξ/√θ)");
        tau = make_like(z0, z0.a(), -z0.b());
    } else {
        if (!z0.a().in_base() || !z0.b().in_base()) throw std::invalid_argument("z0 is not in K_∞(𝔠)");
        tau = make_like(z0, z0.a() - z0.b(), -z0.b());
    }
    QuadExtElem tr = z0 + tau, nr = z0 * tau;
    if (!tr.b().is_zero() || !nr.b().is_zero() || !tr.a().in_base() || !nr.a().in_base())
        throw std::logic_error("trace or norm left K_∞");
    // ρ = [[Tr, -Nr], [1, 0]]: det ρ = Nr, j(ρ; z0) = z0, and ρ fixes z0
    QuadExtElem fix = z0 * z0 - tr * z0 + nr;
    if (!fix.a().is_zero() || !fix.b().is_zero()) throw std::logic_error("z0 is not a fixed point of ρ");
    QuadExtElem psi = psi_identity ? z0 : psi_apply(spec, z0);
    QuadExtElem lhs = nr * z0, rhs = psi * z0 * z0;
    return lhs.agrees(rhs, mpq_class(PuiseuxNum::kExact));
}

}  // namespace dmf
