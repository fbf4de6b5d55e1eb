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

#include "dmf/forms.hpp"

#include <cctype>
#include <memory>
#include <mutex>

#include "dmf/binom.hpp"

namespace dmf {

namespace {

RatF sign(const FiniteField& F, long e)
{
    return RatF::from_int(F, e % 2 ? -1 : 1);
}

unsigned long long ipow(unsigned long long b, unsigned e)
{
    unsigned long long r = 1;
    while (e--) r *= b;
    return r;
}

}  // namespace

std::vector<USeries> power_sums(const FiniteField& F, unsigned J, long prec)
{
    const unsigned q = F.size();
    std::vector<USeries> P(J + 1, USeries(F, prec));
    for (unsigned d = 0; (long double)ipow(q, d) < (long double)prec; ++d) {
        const long norm = long(ipow(q, d));
        for (const Poly& a : monic_polys(F, d)) {
            USeries s = u_of_az(a, prec);
            USeries cur = s;
            for (unsigned j = 1; j <= J; ++j) {
                if (long(j) * norm >= prec) break;
                P[j] += cur;
                if (long(j + 1) * norm < prec) cur = (cur * s).truncate(prec);
            }
        }
    }
    return P;
}

USeries false_eisenstein(const FiniteField& F, long prec)
{
    const unsigned q = F.size();
    USeries E(F, prec);
    for (unsigned d = 0; (long double)ipow(q, d) < (long double)prec; ++d)
        for (const Poly& a : monic_polys(F, d)) E += u_of_az(a, prec) * RatF(a);
    return E;
}

namespace {

USeries eisenstein_from_sums(const FiniteField& F, unsigned k, const std::vector<USeries>& P, long prec)
{
    USeries r = USeries::constant(-zeta_norm(F, k), prec);
    USeries gk = goss(F, k, long(k) + 1);
    for (unsigned j = 1; j <= k; ++j) {
        RatF c = gk.coeff(j);
        if (!c.is_zero()) r -= P[j] * c;
    }
    return r;
}

}  // namespace

USeries eisenstein_norm(const FiniteField& F, unsigned k, long prec)
{
    const unsigned q = F.size();
    if (k == 0 || k % (q - 1) != 0) throw std::invalid_argument("normalized Eisenstein series needs (q-1) | k, k > 0");
    return eisenstein_from_sums(F, k, power_sums(F, k, prec), prec);
}

namespace {

GeneratorSet compute_generators(const FiniteField& F, long N)
{
    const unsigned q = F.size();
    const long W = N + long(q) + 1;
    const Poly th = Poly::theta(F);
    auto P = power_sums(F, q * q - 1, W);
    std::vector<USeries> Eh(q + 2);
    for (unsigned i = 1; i <= q + 1; ++i) Eh[i] = eisenstein_from_sums(F, i * (q - 1), P, W);

    // 1/Exp(W) = (1/W)(1 - sum_i Ê_{i(q-1)} V^i) with V = W^{q-1}; R = its inverse in V
    std::vector<USeries> R(q + 2);
    R[0] = USeries::constant(RatF::constant(F, 1), W);
    for (unsigned j = 1; j <= q + 1; ++j) {
        USeries s(F, W);
        for (unsigned i = 1; i <= j; ++i) s += Eh[i] * R[j - i];
        R[j] = s;
    }
    for (unsigned j = 2; j <= q; ++j)
        if (!R[j].is_zero()) throw std::logic_error("exponential coefficient at a non q-power degree is nonzero");

    const USeries& a1 = R[1];
    const USeries& a2 = R[q + 1];
    GeneratorSet G;
    G.prec = N;
    USeries g = a1 * RatF(Poly::monomial(F, 1, q) - th);
    USeries delta = a2 * RatF(Poly::monomial(F, 1, q * q) - th) - g * a1.frobenius().truncate(W);

    // h = -u U^{1/(q-1)} with -Δ̃ = (-u)^{q-1} U and U^{1/(q-1)} = prod_i U^{-q^i}
    USeries U = delta.shift(-long(q - 1)) * sign(F, q);
    if (U.coeff(0) != RatF::constant(F, 1)) throw std::logic_error("discriminant does not start with -u^{q-1}");
    USeries Ui = U.inv();
    USeries w = Ui, fr = Ui;
    for (unsigned long long qi = q; (long double)qi < (long double)W; qi *= q) {
        fr = fr.frobenius().truncate(W);
        w = (w * fr).truncate(W);
    }
    USeries h = -w.shift(1);

    G.E = false_eisenstein(F, N);
    G.g = g.truncate(N);
    G.delta = delta.truncate(N);
    G.h = h.truncate(N);
    return G;
}

std::mutex gen_mutex;

std::map<const FiniteField*, std::shared_ptr<GeneratorSet>>& gen_cache()
{
    static std::map<const FiniteField*, std::shared_ptr<GeneratorSet>> c;
    return c;
}

}  // namespace

const GeneratorSet& generators(const FiniteField& F, long prec)
{
    std::lock_guard<std::mutex> lock(gen_mutex);
    auto& slot = gen_cache()[&F];
    if (!slot || slot->prec < prec) slot = std::make_shared<GeneratorSet>(compute_generators(F, prec));
    // superseded sets stay alive for callers holding a reference
    static std::vector<std::shared_ptr<GeneratorSet>> keep;
    keep.push_back(slot);
    return *slot;
}

USeries generator_g(const FiniteField& F, long prec)
{
    if (prec < long(F.size() * F.size())) throw PrecisionError("g needs at least q^2 coefficients");
    return generators(F, prec).g.truncate(prec);
}

USeries generator_delta(const FiniteField& F, long prec)
{
    if (prec < long(F.size() * F.size())) throw PrecisionError("Δ needs at least q^2 coefficients");
    return generators(F, prec).delta.truncate(prec);
}

USeries generator_h(const FiniteField& F, long prec)
{
    return generators(F, prec).h.truncate(prec);
}

USeries j_invariant(const FiniteField& F, long prec)
{
    const unsigned q = F.size();
    const GeneratorSet& G = generators(F, prec + 2 * long(q - 1));
    USeries r = G.g.pow(q + 1) * G.delta.inv();
    return r.truncate(prec);
}

// ---- level θ ----

Series<CycloElem> eisenstein_level_theta(const FiniteField& F, Fe c1, Fe c2, long prec)
{
    if (c1 == 0 && c2 == 0) throw std::invalid_argument("level-θ Eisenstein series needs a nonzero index pair");
    const unsigned q = F.size();
    const CycloElem zero = CycloElem::zero(F);
    const CycloElem lam = CycloElem::lambda(F);
    Series<CycloElem> E(zero, prec);
    if (prec <= 0) return E;
    const CycloElem c2lam = lam * RatF::constant(F, c2);
    if (c1 == 0) E[0] = c2lam.inv();
    // b = c1 + θβ with deg b ≥ 0; |b| < prec bounds deg β
    unsigned dmax = 0;
    while ((long double)ipow(q, dmax + 1) < (long double)prec) ++dmax;  // deg b ≤ dmax
    std::vector<Poly> betas{Poly(F)};
    for (unsigned d = 0; d + 1 <= dmax; ++d)
        for (const Poly& m : monic_polys(F, d))
            for (unsigned s = 1; s < q; ++s) betas.push_back(m * Fe(s));
    const Poly th = Poly::theta(F);
    for (const Poly& beta : betas) {
        Poly b = Poly::constant(F, c1) + th * beta;
        if (b.is_zero()) continue;
        long norm = long(abs_norm(b));
        if (norm >= prec) continue;
        long n = prec - norm;
        ReversedCarlitz rb = reversed(b);
        Series<CycloElem> den(zero, n);
        for (auto& [e, c] : rb.terms)
            if (long(e) < n) den[long(e)] = CycloElem(F, RatF(c));
        if (norm < n) den[norm] = den[norm] + c2lam;
        Series<CycloElem> t = den.inv();
        for (long i = 0; i < n; ++i) E[norm + i] = E[norm + i] + t[i];
    }
    return E;
}

std::optional<Series<CycloElem>> to_u_series(const FiniteField& F, const Series<CycloElem>& f)
{
    const unsigned q = F.size();
    const long M = f.prec();
    const CycloElem zero = CycloElem::zero(F);
    // u = X^q / (1 + θ X^{q-1})
    Series<CycloElem> c(zero, M);
    c[0] = CycloElem::one(F);
    if (long(q) - 1 < M) c[long(q) - 1] = CycloElem(F, RatF(Poly::theta(F)));
    Series<CycloElem> ci = c.inv(), u(zero, M);
    for (long i = 0; i + long(q) < M; ++i) u[i + long(q)] = ci[i];
    const long K = (M + long(q) - 1) / long(q);
    Series<CycloElem> H(zero, K), r = f, uk(zero, M);
    uk[0] = CycloElem::one(F);
    for (long k = 0; k < K; ++k) {
        for (long e = long(q) * (k - 1) + 1; e < long(q) * k && e < M; ++e)
            if (e >= 0 && !r[e].is_zero()) return std::nullopt;
        const CycloElem lead = r[long(q) * k];
        H[k] = lead;
        if (!lead.is_zero())
            for (long i = long(q) * k; i < M; ++i)
                if (!uk[i].is_zero()) r[i] = r[i] - lead * uk[i];
        if (k + 1 < K) uk = uk * u;
    }
    for (long e = 0; e < M; ++e)
        if (!r[e].is_zero()) return std::nullopt;
    return H;
}

LevelThetaProduct level_theta_product(const FiniteField& F, long uprec)
{
    const unsigned q = F.size();
    LevelThetaProduct out;
    const long M = long(q) * uprec;
    Series<CycloElem> prod = eisenstein_level_theta(F, 0, 1, M);
    for (unsigned c = 0; c < q; ++c) prod = prod * eisenstein_level_theta(F, 1, Fe(c), M);
    auto H = to_u_series(F, prod);
    if (!H) {
        out.detail = "product is not a series in u";
        return out;
    }
    out.uprec = H->prec();
    USeries h = generator_h(F, out.uprec);
    if (out.uprec < 2 || !(*H)[0].is_zero()) {
        out.detail = "product does not vanish at the cusp";
        return out;
    }
    // h̃ = -u + ..., so the scalar is -[u^1] of the product
    CycloElem s = -(*H)[1];
    for (long k = 0; k < out.uprec; ++k) {
        if ((*H)[k] != s * h.coeff(k)) {
            out.detail = "product differs from scalar * h at u^" + std::to_string(k);
            return out;
        }
    }
    int nz = -1;
    for (std::size_t i = 0; i < s.coeffs().size(); ++i) {
        if (s.coeffs()[i].is_zero()) continue;
        if (nz >= 0) {
            out.detail = "scalar is not a single power of λ";
            return out;
        }
        nz = int(i);
    }
    if (nz < 0) {
        out.detail = "scalar vanishes";
        return out;
    }
    const RatF& c = s.coeffs()[std::size_t(nz)];
    auto monomial_deg = [](const Poly& p) -> long {
        for (int i = 0; i < p.degree(); ++i)
            if (p[i]) return -1;
        return p.degree();
    };
    long dn = monomial_deg(c.num()), dd = monomial_deg(c.den());
    if (dn < 0 || dd < 0) {
        out.detail = "scalar coefficient is not a monomial in θ";
        return out;
    }
    out.matches = true;
    out.unit = c.num().lead();
    out.theta_exp = dn - dd;
    out.lambda_exp = unsigned(nz);
    out.detail = "product = scalar * h";
    return out;
}

// ---- polynomial model ----

FormPoly FormPoly::constant(const RatF& c)
{
    return monomial(c, Exps{0, 0, 0, 0, 0});
}

FormPoly FormPoly::var(const FiniteField& F, Var v, unsigned e)
{
    Exps x{0, 0, 0, 0, 0};
    x[v] = e;
    return monomial(RatF::constant(F, 1), x);
}

FormPoly FormPoly::monomial(const RatF& c, const Exps& e)
{
    FormPoly r(c.field());
    r.add_term(e, c);
    return r;
}

void FormPoly::add_term(const Exps& e, const RatF& c)
{
    if (c.is_zero()) return;
    auto it = t_.find(e);
    if (it == t_.end()) {
        t_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
}

unsigned FormPoly::degree(Var v) const
{
    unsigned d = 0;
    for (auto& [e, c] : t_) d = std::max(d, e[v]);
    return d;
}

RatF FormPoly::coeff(const Exps& e) const
{
    auto it = t_.find(e);
    return it == t_.end() ? RatF(*F_) : it->second;
}

FormPoly FormPoly::operator-() const
{
    FormPoly r = *this;
    for (auto& [e, c] : r.t_) c = -c;
    return r;
}

FormPoly FormPoly::operator+(const FormPoly& b) const
{
    FormPoly r = *this;
    if (!r.F_) r.F_ = b.F_;
    for (auto& [e, c] : b.t_) r.add_term(e, c);
    return r;
}

FormPoly FormPoly::operator-(const FormPoly& b) const
{
    return *this + (-b);
}

FormPoly FormPoly::operator*(const FormPoly& b) const
{
    FormPoly r(F_ ? *F_ : *b.F_);
    for (auto& [e1, c1] : t_)
        for (auto& [e2, c2] : b.t_) {
            Exps e;
            for (int i = 0; i < 5; ++i) e[i] = e1[i] + e2[i];
            r.add_term(e, c1 * c2);
        }
    return r;
}

FormPoly FormPoly::operator*(const RatF& s) const
{
    FormPoly r(*F_);
    if (s.is_zero()) return r;
    for (auto& [e, c] : t_) r.t_.emplace(e, c * s);
    return r;
}

FormPoly FormPoly::pow(unsigned e) const
{
    FormPoly r = constant(RatF::constant(*F_, 1)), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

FormPoly FormPoly::part(Var v, unsigned i) const
{
    FormPoly r(*F_);
    for (auto& [e, c] : t_)
        if (e[v] == i) {
            Exps x = e;
            x[v] = 0;
            r.t_.emplace(x, c);
        }
    return r;
}

FormPoly FormPoly::substitute(Var v, const FormPoly& s) const
{
    FormPoly r(*F_);
    std::map<unsigned, FormPoly> pw;
    for (auto& [e, c] : t_) {
        Exps x = e;
        x[v] = 0;
        auto it = pw.find(e[v]);
        if (it == pw.end()) it = pw.emplace(e[v], s.pow(e[v])).first;
        r += monomial(c, x) * it->second;
    }
    return r;
}

std::string FormPoly::str() const
{
    if (t_.empty()) return "0";
    static const char* names[5] = {"g", "h", "E", "Y", "X"};
    std::string s;
    for (auto& [e, c] : t_) {
        if (!s.empty()) s += " + ";
        s += "(" + c.str() + ")";
        for (int i = 0; i < 5; ++i)
            if (e[i]) s += std::string("*") + names[i] + "^" + std::to_string(e[i]);
    }
    return s;
}

long monomial_weight(unsigned q, const Exps& e)
{
    return long(q - 1) * e[VG] + long(q + 1) * e[VH] + 2 * long(e[VE] + e[VY] + e[VX]);
}

long norm_type(unsigned q, long m)
{
    long n = long(q) - 1;
    if (n == 1) return 0;
    m %= n;
    return m < 0 ? m + n : m;
}

long monomial_type(unsigned q, const Exps& e)
{
    return norm_type(q, long(e[VH] + e[VE] + e[VY] + e[VX]));
}

GradedForm::GradedForm(FormPoly p, long weight, long type) : p_(std::move(p)), k_(weight), m_(0)
{
    const unsigned q = p_.field().size();
    m_ = norm_type(q, type);
    for (auto& [e, c] : p_.terms()) {
        if (monomial_weight(q, e) != k_ || monomial_type(q, e) != m_)
            throw std::invalid_argument("monomial of weight " + std::to_string(monomial_weight(q, e)) + " and type " +
                                        std::to_string(monomial_type(q, e)) + " in a form of weight " +
                                        std::to_string(k_) + " and type " + std::to_string(m_));
    }
}

GradedForm GradedForm::from_poly(const FormPoly& p)
{
    if (p.is_zero()) throw std::invalid_argument("the zero polynomial has no weight");
    const unsigned q = p.field().size();
    const Exps& e = p.terms().begin()->first;
    return GradedForm(p, monomial_weight(q, e), monomial_type(q, e));
}

GradedForm GradedForm::operator+(const GradedForm& b) const
{
    if (k_ != b.k_ || m_ != b.m_) throw std::invalid_argument("sum of forms of different weight or type");
    return GradedForm(p_ + b.p_, k_, m_);
}

GradedForm GradedForm::operator-(const GradedForm& b) const
{
    if (k_ != b.k_ || m_ != b.m_) throw std::invalid_argument("difference of forms of different weight or type");
    return GradedForm(p_ - b.p_, k_, m_);
}

GradedForm GradedForm::operator*(const GradedForm& b) const
{
    return GradedForm(p_ * b.p_, k_ + b.k_, m_ + b.m_);
}

USeries expand(const FormPoly& f, long prec)
{
    const FiniteField& F = f.field();
    if (f.degree(VY) || f.degree(VX)) throw std::invalid_argument("only g, h, E have u-expansions");
    const GeneratorSet& G = generators(F, prec);
    const USeries* base[3] = {&G.g, &G.h, &G.E};
    std::map<std::pair<int, unsigned>, USeries> pw;
    auto power = [&](int v, unsigned e) -> const USeries& {
        auto it = pw.find({v, e});
        if (it == pw.end()) it = pw.emplace(std::make_pair(v, e), base[v]->truncate(prec).pow(e).truncate(prec)).first;
        return it->second;
    };
    USeries r(F, prec);
    for (auto& [e, c] : f.terms()) {
        USeries t = USeries::constant(c, prec);
        for (int v = 0; v < 3; ++v)
            if (e[v]) t = (t * power(v, e[v])).truncate(prec);
        r += t;
    }
    return r;
}

std::vector<std::pair<unsigned, unsigned>> modular_monomials(unsigned q, long k, long m)
{
    std::vector<std::pair<unsigned, unsigned>> r;
    if (k < 0) return r;
    const long mt = norm_type(q, m);
    for (long b = 0; long(q + 1) * b <= k; ++b) {
        long rest = k - long(q + 1) * b;
        if (rest % long(q - 1) != 0) continue;
        if (norm_type(q, b) != mt) continue;
        r.emplace_back(unsigned(rest / long(q - 1)), unsigned(b));
    }
    return r;
}

Membership membership(const USeries& f, long k, long m, long guard)
{
    const FiniteField& F = f.field();
    const unsigned q = F.size();
    Membership out;
    out.poly = FormPoly(F);
    auto mons = modular_monomials(q, k, m);
    out.dim = long(mons.size());
    if (f.prec() < 2 * out.dim + k) throw PrecisionError("membership needs at least 2 dim + k = " +
                                                        std::to_string(2 * out.dim + k) + " coefficients");
    long bmax = mons.empty() ? -1 : long(mons.back().second);
    const long N = f.prec();
    out.solve_rows = std::min(N, std::max(out.dim, bmax + 1) + guard);
    long o = f.order();
    if (o < 0) {
        out.status = Membership::not_member;
        out.first_bad = o;
        return out;
    }
    std::map<long, unsigned> byb;
    for (auto& [a, b] : mons) byb[long(b)] = a;
    const GeneratorSet& G = generators(F, N);
    USeries r = f;
    for (long e = 0; e < out.solve_rows; ++e) {
        RatF c = r.coeff(e);
        if (c.is_zero()) continue;
        auto it = byb.find(e);
        if (it == byb.end()) {
            out.status = Membership::not_member;
            out.first_bad = e;
            return out;
        }
        unsigned a = it->second, b = unsigned(e);
        RatF coef = c * sign(F, b).num()[0];
        USeries mono = (G.g.truncate(N).pow(a) * G.h.truncate(N).pow(b)).truncate(N);
        r -= mono * coef;
        out.poly += FormPoly::monomial(coef, Exps{a, b, 0, 0, 0});
    }
    for (long e = out.solve_rows; e < N; ++e)
        if (!r.coeff(e).is_zero()) {
            out.status = Membership::inconsistent_truncation;
            out.first_bad = e;
            return out;
        }
    out.status = Membership::member;
    return out;
}

FormPoly formal_slash(const FormPoly& f)
{
    const FiniteField& F = f.field();
    FormPoly X = FormPoly::var(F, VX);
    return f.substitute(VE, FormPoly::var(F, VE) - X).substitute(VY, FormPoly::var(F, VY) - X);
}

XPoly hasse_on_X(unsigned n, const XPoly& P)
{
    XPoly r;
    for (auto& [m, c] : P) {
        const FiniteField& F = c.field();
        for (unsigned t = 0; t <= n; ++t) {
            unsigned s = n - t;
            unsigned b = binom_signed_mod_p(m + long(s) - 1, s, F.p());
            if (!b) continue;
            RatF coef = RatF::from_int(F, s % 2 ? -long(b) : long(b));
            USeries term = hyper(t, c) * coef;
            long ex = m + long(s);
            auto it = r.find(ex);
            if (it == r.end()) r.emplace(ex, term);
            else it->second += term;
        }
    }
    return r;
}

namespace {

struct FormLexer {
    std::string s;
    std::size_t i = 0;
    explicit FormLexer(const std::string& str) : s(str)
    {
        for (std::size_t k; (k = s.find("\u2212")) != std::string::npos;) s.replace(k, 3, "-");
    }
    void ws()
    {
        while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
    }
    bool eat(char c)
    {
        ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    bool at_end()
    {
        ws();
        return i >= s.size();
    }
    [[noreturn]] void fail(const std::string& what) const
    {
        throw std::invalid_argument("parse error at offset " + std::to_string(i) + " in \"" + s + "\": " + what);
    }
    long long integer()
    {
        ws();
        if (i >= s.size() || !std::isdigit((unsigned char)s[i])) fail("expected integer");
        long long v = 0;
        while (i < s.size() && std::isdigit((unsigned char)s[i])) {
            v = v * 10 + (s[i++] - '0');
            if (v > (1LL << 40)) fail("integer too large");
        }
        return v;
    }
};

FormPoly parse_factor(const FiniteField& F, FormLexer& L)
{
    L.ws();
    if (L.at_end()) L.fail("expected factor");
    char c = L.s[L.i];
    if (std::isdigit((unsigned char)c)) return FormPoly::constant(RatF::from_int(F, L.integer()));
    if (L.eat('{')) {
        std::size_t close = L.s.find('}', L.i);
        if (close == std::string::npos) L.fail("expected }");
        RatF r = parse_ratf(F, L.s.substr(L.i, close - L.i));
        L.i = close + 1;
        return FormPoly::constant(r);
    }
    static const std::string names = "ghEYX";
    std::size_t v = names.find(c);
    if (v == std::string::npos) L.fail("expected g, h, E, Y, X, an integer or {coefficient}");
    ++L.i;
    long long e = 1;
    if (L.eat('^')) {
        e = L.integer();
        if (e > (1 << 20)) L.fail("exponent too large");
    }
    return FormPoly::var(F, Var(v), unsigned(e));
}

FormPoly parse_term(const FiniteField& F, FormLexer& L)
{
    FormPoly t = parse_factor(F, L);
    while (L.eat('*')) t = t * parse_factor(F, L);
    return t;
}

}  // namespace

FormPoly parse_form(const FiniteField& F, const std::string& s)
{
    FormLexer L(s);
    FormPoly r(F);
    bool neg = L.eat('-');
    for (;;) {
        FormPoly t = parse_term(F, L);
        r = neg ? r - t : r + t;
        if (L.eat('+')) neg = false;
        else if (L.eat('-')) neg = true;
        else break;
    }
    if (!L.at_end()) L.fail("trailing input");
    return r;
}

std::string form_to_string(const FormPoly& f)
{
    if (f.is_zero()) return "0";
    const FiniteField& F = f.field();
    static const char* names[5] = {"g", "h", "E", "Y", "X"};
    const RatF one = RatF::constant(F, 1), mone = RatF::from_int(F, -1);
    std::string out;
    for (auto& [e, c] : f.terms()) {
        std::vector<std::string> parts;
        bool neg = c == mone && !(c == one);
        bool unit = c == one || neg;
        for (int i = 0; i < 5; ++i)
            if (e[i]) parts.push_back(std::string(names[i]) + (e[i] > 1 ? "^" + std::to_string(e[i]) : ""));
        if (!unit || parts.empty()) {
            std::string cs;
            const RatF& cc = neg ? one : c;
            if (F.degree() == 1 && cc.is_poly() && cc.num().degree() == 0) cs = std::to_string(cc.num().lead());
            else cs = "{" + cc.str() + "}";
            parts.insert(parts.begin(), cs);
        }
        std::string t;
        for (auto& x : parts) t += (t.empty() ? "" : "*") + x;
        if (out.empty()) out = neg ? "-" + t : t;
        else out += (neg ? " - " : " + ") + t;
    }
    return out;
}

}  // namespace dmf
