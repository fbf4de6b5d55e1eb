#include <gmpxx.h>

#include <random>

#include "doctest.h"
#include "dmf/nearly.hpp"

using namespace dmf;

namespace {

RatF num(const FiniteField& F, long v)
{
    return RatF::from_int(F, v);
}

FormPoly var(const FiniteField& F, Var v, unsigned e = 1)
{
    return FormPoly::var(F, v, e);
}

mpz_class big_binom(long n, long k)
{
    if (k < 0 || n < 0 || k > n) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), (unsigned long)n, (unsigned long)k);
    return r;
}

unsigned reduce(const mpz_class& v, unsigned p)
{
    mpz_class m = v % p;
    if (m < 0) m += p;
    return unsigned(m.get_ui());
}

// random sum of g_j E₂^j with monomial g_j of weight k - 2j and type m - j
FormPoly random_structured(const FiniteField& F, std::mt19937_64& rng, long k, long m, unsigned maxdepth)
{
    const unsigned q = F.size();
    FormPoly r(F);
    FormPoly e2p = var(F, VE) - var(F, VY);
    for (unsigned j = 0; j <= maxdepth && 2 * long(j) <= k; ++j) {
        auto mons = modular_monomials(q, k - 2 * long(j), m - long(j));
        if (mons.empty()) continue;
        auto [a, b] = mons[rng() % mons.size()];
        RatF c = RatF::constant(F, Fe(1 + rng() % (q - 1)));
        if (rng() % 3 == 0) c = c * RatF(Poly::theta(F));
        r += FormPoly::monomial(c, Exps{a, b, 0, 0, 0}) * e2p.pow(j);
    }
    return r;
}

}  // namespace

TEST_CASE("E2")
{
    for (unsigned q : {2u, 3u, 5u}) {
        const FiniteField& F = FiniteField::of_order(q);
        NHForm e = e2(F);
        CHECK(e.coeff(0) == var(F, VE));
        CHECK(e.coeff(1) == -FormPoly::constant(num(F, 1)));
        CHECK(e.weight() == 2);
        CHECK(e.type() == norm_type(q, 1));
        CHECK(e.depth() == 1);
        CHECK(formal_slash(e.poly()).degree(VX) == 0);
        CHECK(iota(e).poly() == var(F, VE));
    }
}

TEST_CASE("Maass-Shimura examples")
{
    for (unsigned q : {2u, 3u, 4u, 5u}) {
        const FiniteField& F = FiniteField::of_order(q);
        const long kd = long(q * q) - 1;
        FormPoly delta = -var(F, VH, q - 1);
        NHForm D(delta, kd, 0);
        CHECK(maass_shimura(D, kd, 0) == D);
        NHForm dD = maass_shimura(D, kd, 1);
        CHECK(dD == e2(F) * D);
        CHECK(dD.weight() == kd + 2);
        // series route of the same identity
        const long N = 3 * long(q * q);
        NHSeries s = maass_shimura(to_series(D, N), kd, 1);
        USeries d = generator_delta(F, N);
        CHECK(s.y.at(0) == generators(F, N).E.truncate(N) * d);
        CHECK(s.y.at(1) == -d);
        // depth 0: δ_k^1 f = ∂f + k f Y
        FormPoly g = var(F, VG);
        FormPoly lhs = maass_shimura(g, q - 1, 1);
        CHECK(lhs == symbolic_hyper(1, g) + g * var(F, VY) * num(F, long(q) - 1));
        // k < 2μ is rejected
        CHECK_THROWS_AS(maass_shimura(var(F, VY, 2), 3, 1), std::invalid_argument);
    }
}

TEST_CASE("symbolic derivatives agree with the series engine")
{
    std::mt19937_64 rng(81);
    for (unsigned q : {2u, 3u, 4u, 5u}) {
        const FiniteField& F = FiniteField::of_order(q);
        const unsigned p = F.p();
        const long N = 60;
        for (int t = 0; t < 4; ++t) {
            Exps e{unsigned(rng() % 3), unsigned(rng() % 2), unsigned(rng() % 3), 0, 0};
            FormPoly f = FormPoly::monomial(RatF(Poly::theta(F)), e) + var(F, VG, q + 1);
            auto d = hyper_all(f, 2 * p);
            USeries fs = expand(f, N);
            for (unsigned n = 0; n <= 2 * p; ++n) CHECK(expand(d[n], N) == hyper(n, fs));
        }
        CHECK_THROWS_AS(hyper_all(var(F, VY), 1), std::invalid_argument);
        // ∂E = -E^2 and ∂h = -Eh
        CHECK(symbolic_hyper(1, var(F, VE)) == -var(F, VE, 2));
        CHECK(symbolic_hyper(1, var(F, VH)) == -(var(F, VE) * var(F, VH)));
    }
}

TEST_CASE("iota intertwines δ and ∂")
{
    std::mt19937_64 rng(83);
    int draws = 0;
    for (unsigned q : {2u, 3u, 4u, 5u}) {
        const FiniteField& F = FiniteField::of_order(q);
        const unsigned p = F.p();
        const long N = 50;
        for (int t = 0; t < 30; ++t) {
            long k = 2 + long(rng() % (3 * q));
            long m = long(rng() % q);
            FormPoly fp = random_structured(F, rng, k, m, 2);
            if (fp.is_zero()) continue;
            NHForm f(fp, k, m);
            unsigned r = unsigned(rng() % (p + 2));
            NHForm d = maass_shimura(f, k, r);
            CHECK(expand(iota(d), N) == hyper(r, expand(iota(f), N)));
            ++draws;
        }
        GradedForm E2(var(F, VE, 2), 4, 2);
        CHECK(iota(inverse_iota(E2)) == E2);
        CHECK_THROWS_AS(inverse_iota(GradedForm(var(F, VY), 2, 1)), std::invalid_argument);
    }
    CHECK(draws >= 50);
}

TEST_CASE("structure decomposition")
{
    std::mt19937_64 rng(87);
    for (unsigned q : {2u, 3u, 4u, 5u}) {
        const FiniteField& F = FiniteField::of_order(q);
        const long N = 8 * long(q * q);
        // E₂² -> (0, 0, 1)
        NHForm e22 = e2(F) * e2(F);
        Decomposition d = decompose(e22, N);
        REQUIRE(d.ok);
        REQUIRE(d.g.size() == 3);
        CHECK(d.g[0].is_zero());
        CHECK(d.g[1].is_zero());
        CHECK(d.g[2] == FormPoly::constant(num(F, 1)));
        // δΔ -> (0, Δ)
        const long kd = long(q * q) - 1;
        NHForm D(-var(F, VH, q - 1), kd, 0);
        Decomposition dd = decompose(maass_shimura(D, kd, 1), N);
        REQUIRE(dd.ok);
        CHECK(dd.g[0].is_zero());
        CHECK(dd.g[1] == -var(F, VH, q - 1));
        // round trip
        for (int t = 0; t < 25; ++t) {
            long k = 2 + long(rng() % (2 * q + 4));
            long m = long(rng() % q);
            FormPoly fp = random_structured(F, rng, k, m, 3);
            if (fp.is_zero()) continue;
            NHForm f(fp, k, m);
            CHECK(2 * f.depth() <= f.weight());
            Decomposition r = decompose(f, N);
            REQUIRE(r.ok);
            FormPoly back(F);
            for (std::size_t j = 0; j < r.g.size(); ++j) back += r.g[j] * (var(F, VE) - var(F, VY)).pow(unsigned(j));
            CHECK(back == fp);
            // ι is injective: a nonzero form has a nonzero image
            CHECK_FALSE(expand(iota(f), N).is_zero());
        }
        // E alone (as a Y-free weight-2 object) is not nearly holomorphic modular
        NHForm bad(var(F, VE), 2, 1);
        Decomposition b = decompose(bad, N);
        CHECK_FALSE(b.ok);
        CHECK(b.failed_layer == 0);
    }
}

TEST_CASE("Leibniz rule for δ")
{
    std::mt19937_64 rng(89);
    for (unsigned q : {2u, 3u, 5u}) {
        const FiniteField& F = FiniteField::of_order(q);
        const unsigned p = F.p();
        for (int t = 0; t < 8; ++t) {
            unsigned mu1 = unsigned(rng() % (p * p + 1)) % 3, mu2 = unsigned(rng() % 3);
            Exps e1{unsigned(rng() % 3), unsigned(rng() % 2), unsigned(rng() % 2), mu1, 0};
            Exps e2x{unsigned(rng() % 2), unsigned(rng() % 3), unsigned(rng() % 2), mu2, 0};
            FormPoly A = FormPoly::monomial(num(F, 1), e1), B = FormPoly::monomial(RatF(Poly::theta(F)), e2x);
            long n = monomial_weight(q, e1), m = monomial_weight(q, e2x);
            if (n < 2 * long(mu1) || m < 2 * long(mu2)) continue;
            FormPoly lhs = maass_shimura(A * B, n + m, 1);
            FormPoly rhs = A * maass_shimura(B, m, 1) + B * maass_shimura(A, n, 1);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("formal equivariance")
{
    for (unsigned q : {2u, 3u, 4u, 5u}) {
        const FiniteField& F = FiniteField::of_order(q);
        const unsigned p = F.p();
        FormPoly g = var(F, VG), h = var(F, VH), E = var(F, VE);
        const long N = 40;
        CHECK(formal_equivariance_check(-h.pow(q - 1), long(q * q) - 1, 1, N).ok());
        CHECK(formal_equivariance_check(E, 2, 2, N).ok());
        for (unsigned r = 0; r <= p + 1; ++r) {
            CHECK(formal_equivariance_check(E * E, 4, r, N).ok());
            CHECK(formal_equivariance_check(g * E, long(q) + 1, r, N).ok());
            // E₂ itself
            CHECK(formal_equivariance_check(E - var(F, VY), 2, r, N).ok());
        }
        // negative control
        EquivarianceResult bad = formal_equivariance_check(g * E, long(q) + 1, 2, N, 1);
        CHECK_FALSE(bad.symbolic);
        CHECK_FALSE(bad.series);
        // the wrong weight parameter breaks the identity
        CHECK_FALSE(formal_equivariance_check(E, 3, 1, N).ok());
    }
}

TEST_CASE("combinatorial kernels")
{
    for (unsigned p : {2u, 3u, 5u}) {
        for (long k = 1; k <= 3 * long(p); ++k)
            for (long r = 1; r <= 3 * long(p); ++r)
                for (long j = 0; j <= r - 1; ++j)
                    for (long l = 0; j + l <= r - 1; ++l) {
                        mpz_class s = 0;
                        for (long i = 0; i <= r; ++i) {
                            mpz_class t = big_binom(k + r - 1, i) * big_binom(k + r - 1 - i, r - j - i) * big_binom(i, l);
                            s += (i - l) % 2 ? -t : t;
                        }
                        CHECK(s == 0);
                        CHECK(shimura_kernel(p, k, r, j, l) == 0);
                    }
        for (long r = 1; r <= 3 * long(p); ++r)
            for (long i = 1; i <= r; ++i) {
                mpz_class s = 0;
                for (long j = 1; j <= i; ++j) {
                    mpz_class t = big_binom(r - (i - j), j) * big_binom(r, i - j);
                    s += j % 2 ? -t : t;
                }
                CHECK(s == -big_binom(r, i));
                CHECK(reslash_kernel(p, r, i) == reduce(-big_binom(r, i), p));
            }
        // off the stated range the first kernel need not vanish
        CHECK(shimura_kernel(p, 1, 1, 1, 0) != 0);
    }
}
