#include <random>

#include "doctest.h"
#include "dmf/operators.hpp"

using namespace dmf;

namespace {

mpz_class fact(long n)
{
    mpz_class r = 1;
    for (long i = 2; i <= n; ++i) r *= i;
    return r;
}

mpz_class binom(long n, long k)
{
    if (k < 0 || k > n) return 0;
    return fact(n) / (fact(k) * fact(n - k));
}

RatF num(const FiniteField& F, long v)
{
    return RatF::from_int(F, v);
}

}  // namespace

TEST_CASE("Rankin-Cohen coefficient tables")
{
    for (unsigned p : {2u, 3u, 5u}) {
        for (long k = 1; k <= 12; ++k)
            for (long w = 1; w <= 12; ++w)
                for (unsigned r = 0; r <= 6; ++r) {
                    RCCoeffs c = rc_coeffs(p, r, k, w);
                    REQUIRE(c.beta_tilde.size() == r + 1);
                    mpz_class g = 0;
                    for (long nu = 0; nu <= long(r); ++nu) {
                        mpz_class expect = fact(long(r) - nu) * fact(nu) * binom(k + long(r) - 1, long(r) - nu) *
                                           binom(w + long(r) - 1, nu);
                        CHECK(c.beta_tilde[nu] == expect);
                        CHECK(c.beta_tilde[nu] % c.gcd == 0);
                        g = gcd(g, mpz_class(c.beta_tilde[nu] / c.gcd));
                        mpz_class m = (c.beta_tilde[nu] / c.gcd) % p;
                        CHECK(c.beta[nu] == m.get_ui());
                    }
                    CHECK(g == 1);
                }
        RCCoeffs z = rc_coeffs(p, 0, 3, 4);
        CHECK(z.beta == std::vector<unsigned>{1});
    }
}

TEST_CASE("U-operator coefficient tables")
{
    for (unsigned p : {2u, 3u, 5u}) {
        for (long k = 1; k <= 12; ++k)
            for (unsigned r = 2; r <= 7; ++r) {
                UCoeffs c = u_coeffs(p, r, k);
                const long R = long(r);
                CHECK(c.c_tilde[1] == (R - 1) * binom(k + R - 1, R - 1));
                mpz_class kp = 1, g = 0;
                for (long v = 2; v <= R; ++v) {
                    kp *= k;
                    CHECK(c.c_tilde[v] == R * kp * binom(k + R - 1, R - v));
                }
                for (long v = 1; v <= R; ++v) {
                    g = gcd(g, mpz_class(c.c_tilde[v] / c.gcd));
                    mpz_class m = (c.c_tilde[v] / c.gcd) % p;
                    CHECK(c.c[v] == m.get_ui());
                }
                CHECK(g == 1);
            }
        CHECK_THROWS_AS(u_coeffs(p, 1, 3), std::invalid_argument);
    }
}

TEST_CASE("Rankin-Cohen brackets")
{
    std::mt19937_64 rng(91);
    for (unsigned q : {2u, 3u, 4u, 5u}) {
        const FiniteField& F = FiniteField::of_order(q);
        const long N = 6 * long(q * q);
        USeries g = generator_g(F, N), h = generator_h(F, N), d = generator_delta(F, N);
        CHECK(rc_bracket(g, q - 1, h, q + 1, 0) == g * h);
        CHECK(rc_bracket(h, q + 1, h, q + 1, 1).is_zero());
        CHECK(rc_bracket(d, long(q * q) - 1, d, long(q * q) - 1, 1).is_zero());

        // [g, h]_1 is a multiple of h^2: weight 2q + 2, type 2; certificate checked at doubled precision
        USeries b = rc_bracket(g, q - 1, h, q + 1, 1);
        Membership m = membership(b, 2 * long(q) + 2, 2);
        REQUIRE(m.status == Membership::member);
        CHECK(m.poly.terms().size() == 1);
        if (q > 3) CHECK(membership(b, 2 * long(q) + 2, 1).status == Membership::not_member);
        const long N2 = 2 * N;
        USeries b2 = rc_bracket(generator_g(F, N2), q - 1, generator_h(F, N2), q + 1, 1);
        CHECK(expand(m.poly, N2) == b2);

        // brackets of modular forms stay modular
        struct In {
            USeries f;
            long k, m;
        };
        std::vector<In> ins{{g, long(q) - 1, 0}, {h, long(q) + 1, 1}, {d, long(q * q) - 1, 0}};
        for (int t = 0; t < 4; ++t) {
            const In& a = ins[rng() % ins.size()];
            const In& c = ins[rng() % ins.size()];
            unsigned r = unsigned(rng() % (q + 2));
            USeries br = rc_bracket(a.f, a.k, c.f, c.k, r);
            Membership mb = membership(br, a.k + c.k + 2 * long(r), a.m + c.m + long(r));
            CHECK(mb.status == Membership::member);
        }
    }
}

TEST_CASE("Rankin-Cohen brackets through the nearly holomorphic model")
{
    for (unsigned q : {2u, 3u, 4u, 5u}) {
        const FiniteField& F = FiniteField::of_order(q);
        const long N = 4 * long(q * q);
        USeries g = generator_g(F, N), h = generator_h(F, N), d = generator_delta(F, N);
        CHECK(rc_bracket_nh_identity(g, q - 1, h, q + 1, 1).ok());
        for (unsigned r = 0; r <= q; ++r) CHECK(rc_bracket_nh_identity(d, long(q * q) - 1, d, long(q * q) - 1, r).ok());
        for (unsigned r = 1; r <= q + 2; ++r) CHECK(rc_bracket_nh_identity(g * g, 2 * long(q) - 2, h, q + 1, r).ok());
        // corrupted β table
        NHIdentity bad = rc_bracket_nh_identity(g, q - 1, h, q + 1, 1, 1);
        CHECK_FALSE(bad.ok());
        CHECK_FALSE(bad.y_cancel);
    }
}

TEST_CASE("U-operator values on the generators")
{
    for (unsigned q : {2u, 3u, 4u, 5u}) {
        const FiniteField& F = FiniteField::of_order(q);
        const long N = 100;
        USeries g = generator_g(F, N), h = generator_h(F, N);
        RatF inv(Poly::constant(F, 1), Poly::monomial(F, 1, q) - Poly::theta(F));
        CHECK(u_operator(h, q + 1, q + 1) == h.pow(q + 3) * inv);
        CHECK(u_operator(g, q - 1, q + 1).is_zero());
        CHECK(u_operator(g, q + 1, q + 1).is_zero());
        // ∂^r g vanishes for 2 <= r <= q-1, which kills the middle terms
        for (unsigned r = 2; r + 1 <= q; ++r) CHECK(u_operator(g, q - 1, r).is_zero());
        // at r = q only (∂g)^q and g^{q-1} ∂^q g survive: the value is c_1 h^q
        UCoeffs c = u_coeffs(F.p(), q, q - 1);
        CHECK(u_operator(g, q - 1, q) == h.pow(q) * num(F, long(c.c[1])));
        CHECK(c.c[1] != 0);
        CHECK_THROWS_AS(u_operator(g, q - 1, 1), std::invalid_argument);
    }
}

TEST_CASE("U-operator preserves modularity")
{
    for (unsigned q : {2u, 3u, 4u}) {
        const FiniteField& F = FiniteField::of_order(q);
        const long N = 120;
        struct In {
            USeries f;
            long k, m;
        };
        std::vector<In> ins{{generator_g(F, N), long(q) - 1, 0},
                            {generator_h(F, N), long(q) + 1, 1},
                            {generator_delta(F, N), long(q * q) - 1, 0}};
        for (const In& a : ins)
            for (unsigned r = 2; r <= 3; ++r) {
                USeries U = u_operator(a.f, a.k, r);
                Membership m = membership(U, a.k * long(r) + 2 * long(r), a.m * long(r) + long(r));
                CHECK(m.status == Membership::member);
            }
    }
}

TEST_CASE("U-operator through the nearly holomorphic model")
{
    for (unsigned q : {2u, 3u, 4u, 5u}) {
        const FiniteField& F = FiniteField::of_order(q);
        const long N = 3 * long(q * q);
        USeries h = generator_h(F, N), d = generator_delta(F, N), g = generator_g(F, N);
        CHECK(u_operator_nh_identity(h, q + 1, 2).ok());
        CHECK(u_operator_nh_identity(d, long(q * q) - 1, 3).ok());
        for (unsigned r = 2; r <= q + 2; ++r) CHECK(u_operator_nh_identity(g, q - 1, r).ok());
        NHIdentity bad = u_operator_nh_identity(h, q + 1, 3, 1);
        CHECK_FALSE(bad.ok());
    }
}
