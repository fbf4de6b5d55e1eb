#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "dmf/binom.hpp"
#include "dmf/ratf.hpp"

using namespace dmf;

namespace {

std::vector<Fe> naive_mul(const FiniteField& F, const std::vector<Fe>& a, const std::vector<Fe>& b)
{
    if (a.empty() || b.empty()) return {};
    std::vector<Fe> c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = F.add(c[i + j], F.mul(a[i], b[j]));
    kernel::trim(c);
    return c;
}

Poly random_poly(const FiniteField& F, std::mt19937_64& rng, int deg)
{
    std::vector<Fe> c(deg + 1);
    for (auto& x : c) x = Fe(rng() % F.size());
    return Poly(F, c);
}

}  // namespace

TEST_CASE("field axioms on random triples")
{
    std::mt19937_64 rng(11);
    for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u, 25u, 27u, 256u, 65536u}) {
        const FiniteField& F = FiniteField::of_order(q);
        CHECK(F.size() == q);
        for (int t = 0; t < 1000; ++t) {
            Fe a = Fe(rng() % q), b = Fe(rng() % q), c = Fe(rng() % q);
            CHECK(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
            CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
            CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
            CHECK(F.add(a, F.neg(a)) == 0);
            if (a) CHECK(F.mul(a, F.inv(a)) == 1);
        }
    }
}

TEST_CASE("addition is digitwise over F_p")
{
    const FiniteField& F = FiniteField::of_order(9);
    for (unsigned a = 0; a < 9; ++a)
        for (unsigned b = 0; b < 9; ++b) {
            auto da = F.digits(Fe(a)), db = F.digits(Fe(b));
            std::vector<unsigned> s{(da[0] + db[0]) % 3, (da[1] + db[1]) % 3};
            CHECK(F.add(Fe(a), Fe(b)) == F.from_digits(s));
        }
}

TEST_CASE("Frobenius fixes exactly F_q inside F_{q^m}")
{
    for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u}) {
        const FiniteField& Fq = FiniteField::of_order(q);
        for (unsigned m = 2; m <= 4; ++m) {
            unsigned long long s = 1;
            for (unsigned i = 0; i < m; ++i) s *= q;
            if (s > 4096) continue;
            const FiniteField& E = FiniteField::extension(Fq, m);
            for (unsigned x = 0; x < E.size(); ++x) {
                bool fixed = E.frobenius(Fe(x)) == Fe(x);
                CHECK(fixed == (x < q));
                if (x < q) {
                    // the subfield is embedded as the first q indices
                    for (unsigned y = 0; y < q; ++y) CHECK(E.mul(Fe(x), Fe(y)) == Fq.mul(Fe(x), Fe(y)));
                }
            }
            std::mt19937_64 rng(q * 10 + m);
            for (int t = 0; t < 200; ++t) {
                Fe a = Fe(rng() % q), x = Fe(rng() % E.size()), y = Fe(rng() % E.size());
                CHECK(E.frobenius(E.add(E.mul(a, x), y)) == E.add(E.mul(a, E.frobenius(x)), E.frobenius(y)));
                CHECK(E.frobenius(x, m) == x);
            }
        }
    }
}

TEST_CASE("polynomial multiplication kernels agree with schoolbook")
{
    std::mt19937_64 rng(5);
    for (unsigned q : {2u, 3u, 4u, 5u, 9u, 251u}) {
        const FiniteField& F = FiniteField::of_order(q);
        for (int deg : {0, 3, 40, 300, 900}) {
            Poly a = random_poly(F, rng, deg), b = random_poly(F, rng, deg / 2 + 7);
            CHECK((a * b).coeffs() == naive_mul(F, a.coeffs(), b.coeffs()));
        }
        // bivariate truncated products
        std::vector<std::vector<Fe>> A(60), B(45);
        for (auto& x : A) x = random_poly(F, rng, int(rng() % 50)).coeffs();
        for (auto& x : B) x = random_poly(F, rng, int(rng() % 70)).coeffs();
        std::vector<const std::vector<Fe>*> pa, pb;
        for (auto& x : A) pa.push_back(&x);
        for (auto& x : B) pb.push_back(&x);
        auto C = kernel::mul2(F, pa, pb, 80);
        for (std::size_t k = 0; k < 80; ++k) {
            std::vector<Fe> ref;
            Poly acc(F);
            for (std::size_t i = 0; i <= k && i < A.size(); ++i)
                if (k - i < B.size()) acc = acc + Poly(F, naive_mul(F, A[i], B[k - i]));
            CHECK(C[k] == acc.coeffs());
        }
    }
}

TEST_CASE("polynomial multiplication over towers")
{
    std::mt19937_64 rng(6);
    for (unsigned q : {2u, 3u, 4u, 8u, 9u}) {
        for (unsigned m : {2u, 3u}) {
            if (q == 9 && m == 3) continue;
            const FiniteField& F = FiniteField::extension(FiniteField::of_order(q), m);
            for (int deg : {0, 5, 60, 400}) {
                Poly a = random_poly(F, rng, deg), b = random_poly(F, rng, deg / 3 + 2);
                CHECK((a * b).coeffs() == naive_mul(F, a.coeffs(), b.coeffs()));
            }
        }
    }
}

TEST_CASE("division, gcd and extended gcd")
{
    std::mt19937_64 rng(7);
    for (unsigned q : {2u, 3u, 4u, 5u}) {
        const FiniteField& F = FiniteField::of_order(q);
        for (int t = 0; t < 50; ++t) {
            Poly a = random_poly(F, rng, int(rng() % 30)), b = random_poly(F, rng, int(rng() % 12));
            if (b.is_zero()) continue;
            auto qr = a.divmod(b);
            CHECK(qr.first * b + qr.second == a);
            CHECK(qr.second.degree() < b.degree());
            Poly s, u;
            Poly g = xgcd(a, b, s, u);
            CHECK(g == gcd(a, b));
            CHECK(s * a + u * b == g);
            if (!g.is_zero()) {
                CHECK((a % g).is_zero());
                CHECK((b % g).is_zero());
            }
        }
    }
}

TEST_CASE("rational functions stay canonical")
{
    std::mt19937_64 rng(9);
    for (unsigned q : {2u, 3u, 4u, 5u}) {
        const FiniteField& F = FiniteField::of_order(q);
        for (int t = 0; t < 100; ++t) {
            Poly a = random_poly(F, rng, int(rng() % 8)), b = random_poly(F, rng, int(rng() % 8));
            Poly c = random_poly(F, rng, int(rng() % 8)), d = random_poly(F, rng, int(rng() % 8));
            if (b.is_zero() || d.is_zero()) continue;
            RatF x(a, b), y(c, d);
            CHECK((x + (-x)).is_zero());
            CHECK((x + (-x)).den().is_one());
            CHECK(x.den().is_monic());
            CHECK(gcd(x.num(), x.den()).degree() <= 0);
            // equality by cross multiplication
            CHECK((x == y) == (a * d == b * c));
            RatF s = x + y, m = x * y;
            CHECK(s.num() * b * d == (a * d + c * b) * s.den());
            CHECK(m.num() * b * d == a * c * m.den());
            if (!y.is_zero()) CHECK((x / y) * y == x);
        }
    }
}

TEST_CASE("textual form round trip")
{
    const FiniteField& F3 = FiniteField::of_order(3);
    Poly a = parse_poly(F3, "1*θ^3 + 2*θ^0");
    CHECK(a.degree() == 3);
    CHECK(a.str() == "1*θ^3 + 2*θ^0");
    CHECK(parse_poly(F3, "theta^2 + -1") == parse_poly(F3, "1*θ^2 + 2*θ^0"));
    CHECK(parse_poly(F3, "0").is_zero());
    RatF r = parse_ratf(F3, "(1*θ^1)/(1*θ^2 + 2*θ^0)");
    CHECK(parse_ratf(F3, r.str()) == r);
    CHECK_THROWS_AS(parse_poly(F3, "1*x^2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_ratf(F3, "(1)/(0)"), std::invalid_argument);

    const FiniteField& F4 = FiniteField::of_order(4);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 50; ++t) {
        Poly n = random_poly(F4, rng, int(rng() % 6)), d = random_poly(F4, rng, int(rng() % 6));
        if (d.is_zero()) continue;
        RatF x(n, d);
        CHECK(parse_ratf(F4, x.str()) == x);
        CHECK(parse_poly(F4, n.str()) == n);
    }
    CHECK(parse_poly(F4, "[0,1]*θ^1").str() == "[0,1]*θ^1");
}

TEST_CASE("binomials")
{
    CHECK(binom_big(4, 2) == 6);
    CHECK(binom_big(9, 0) == 1);
    CHECK(binom_big(3, 5) == 0);
    // Pascal recurrence oracle
    std::vector<std::vector<mpz_class>> P(40);
    for (unsigned n = 0; n < 40; ++n) {
        P[n].assign(n + 1, 1);
        for (unsigned k = 1; k < n; ++k) P[n][k] = P[n - 1][k - 1] + P[n - 1][k];
        for (unsigned k = 0; k <= n; ++k) CHECK(binom_big(n, k) == P[n][k]);
    }
    CHECK(binom_big(7, 3) == 35);
    CHECK(binom_mod_p(5, 2, 3) == 1);
    for (unsigned p : {2u, 3u, 5u, 7u, 65521u}) CHECK(binom_mod_p(p, 1, p) == 0);
    std::mt19937_64 rng(2024);
    const unsigned primes[] = {2, 3, 5, 7, 11, 13, 251};
    // n is drawn log-uniformly up to 10^6 so the exact big integers stay cheap
    std::uniform_real_distribution<double> ud(0.0, 6.0);
    for (int t = 0; t < 10000; ++t) {
        unsigned long long n = (unsigned long long)std::pow(10.0, ud(rng));
        unsigned long long k = rng() % (n + 1);
        unsigned p = primes[rng() % 7];
        REQUIRE(binom_mod_p(n, k, p) == mod_p(binom_big(n, k), p));
    }
    // negative upper index
    CHECK(binom_signed_mod_p(-1, 3, 5) == 4);  // (-1)^3
    CHECK(binom_signed_mod_p(-2, 2, 7) == 3);  // binom(3,2) = 3
}

TEST_CASE("monic polynomial enumeration")
{
    const FiniteField& F3 = FiniteField::of_order(3);
    auto d0 = monic_polys(F3, 0);
    REQUIRE(d0.size() == 1);
    CHECK(d0[0].is_one());
    auto d1 = monic_polys(F3, 1);
    REQUIRE(d1.size() == 3);
    CHECK(d1[0].str() == "1*θ^1");
    CHECK(d1[1].str() == "1*θ^1 + 1*θ^0");
    CHECK(d1[2].str() == "1*θ^1 + 2*θ^0");
    for (unsigned q : {2u, 3u, 4u, 5u})
        for (unsigned d = 0; d <= 4; ++d) {
            auto v = monic_polys(FiniteField::of_order(q), d);
            unsigned long long cnt = 1;
            for (unsigned i = 0; i < d; ++i) cnt *= q;
            CHECK(v.size() == cnt);
            std::set<std::vector<Fe>> uniq;
            for (auto& a : v) {
                CHECK(a.is_monic());
                CHECK(a.degree() == int(d));
                uniq.insert(a.coeffs());
            }
            CHECK(uniq.size() == cnt);
        }
    CHECK(abs_norm(Poly::theta(F3).pow(2)) == 9);
}
