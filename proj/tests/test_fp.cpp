#include "doctest.h"

#include "steenrod/errors.h"
#include "steenrod/fp.h"

#include <random>
#include <vector>

using namespace steenrod;

namespace {

std::vector<std::vector<int>> pascal_mod(int n_max, int p)
{
    std::vector<std::vector<int>> c(n_max + 1, std::vector<int>(n_max + 1, 0));
    for (int n = 0; n <= n_max; ++n) {
        c[n][0] = 1 % p;
        for (int k = 1; k <= n; ++k)
            c[n][k] = (c[n - 1][k - 1] + c[n - 1][k]) % p;
    }
    return c;
}

}  // namespace

TEST_CASE("prime validation")
{
    CHECK(Prime(2).value() == 2);
    CHECK(Prime(7919).value() == 7919);
    CHECK_THROWS_AS(Prime(1), InvalidInput);
    CHECK_THROWS_AS(Prime(0), InvalidInput);
    CHECK_THROWS_AS(Prime(9), InvalidInput);
    CHECK_THROWS_AS(Prime(-3), InvalidInput);
}

TEST_CASE("binomials agree with Pascal's triangle")
{
    for (int p : {2, 3, 5, 7}) {
        auto c = pascal_mod(200, p);
        for (int n = 0; n <= 200; ++n)
            for (int k = 0; k <= 200; ++k)
                REQUIRE(binom_mod_p(n, k, Prime(p)).value() == uint32_t(c[n][k]));
    }
}

TEST_CASE("binomial examples")
{
    CHECK(binom_mod_p(0, 1, Prime(2)).value() == 0);
    CHECK(binom_mod_p(7, 3, Prime(2)).value() == 1);
    CHECK(binom_mod_p(10, 2, Prime(3)).value() == 0);
    CHECK(signed_binom(1, 1, 1, Prime(3)).value() == 2);
    CHECK(signed_binom(2, 4, 2, Prime(5)).value() == 1);
    CHECK(signed_binom(0, 0, 0, Prime(2)).value() == 1);
    CHECK(signed_binom(0, -1, 0, Prime(3)).value() == 0);
    CHECK(signed_binom(0, 3, -1, Prime(3)).value() == 0);
}

TEST_CASE("Vandermonde identity on sampled triples")
{
    std::mt19937_64 rng(11);
    for (int p : {2, 3, 5, 7}) {
        Prime P(p);
        for (int trial = 0; trial < 300; ++trial) {
            int m = int(rng() % 120), n = int(rng() % 120), k = int(rng() % (m + n + 1));
            Fp sum(0, P);
            for (int j = 0; j <= k; ++j)
                sum += binom_mod_p(m, j, P) * binom_mod_p(n, k - j, P);
            REQUIRE(sum == binom_mod_p(m + n, k, P));
        }
    }
}

TEST_CASE("field axioms in F_p")
{
    std::mt19937_64 rng(5);
    for (int p : {2, 3, 5, 7, 101}) {
        Prime P(p);
        for (int trial = 0; trial < 200; ++trial) {
            Fp a(int64_t(rng() % 1000) - 500, P), b(int64_t(rng() % 1000), P), c(int64_t(rng()), P);
            REQUIRE((a + b) * c == a * c + b * c);
            REQUIRE(a - a == Fp(0, P));
            REQUIRE(a + (-a) == Fp(0, P));
            if (!a.is_zero()) {
                REQUIRE(a * a.inverse() == Fp(1, P));
                REQUIRE((b / a) * a == b);
            }
            REQUIRE(a.pow(p) == a);
        }
    }
    CHECK_THROWS_AS(Fp(0, Prime(5)).inverse(), InvalidInput);
    CHECK(Fp(4, Prime(5)).centered() == -1);
    CHECK(Fp(2, Prime(5)).centered() == 2);
}

TEST_CASE("least nonsquares")
{
    CHECK(fp2_nonsquare(Prime(3)).value() == 2);
    CHECK(fp2_nonsquare(Prime(5)).value() == 2);
    CHECK(fp2_nonsquare(Prime(7)).value() == 3);
    CHECK_THROWS_AS(fp2_nonsquare(Prime(2)), InvalidInput);
}

TEST_CASE("F_{p^2} is a field with Frobenius conjugation")
{
    for (int p : {3, 5, 7}) {
        Prime P(p);
        std::vector<Fp2> all;
        for (int a = 0; a < p; ++a)
            for (int b = 0; b < p; ++b)
                all.emplace_back(Fp(a, P), Fp(b, P));
        for (const auto& x : all) {
            REQUIRE(x.pow(uint64_t(p) * p) == x);
            REQUIRE(x.pow(p) == x.conjugate());
            if (!x.is_zero())
                REQUIRE(x * x.inverse() == Fp2::from_base(Fp(1, P)));
        }
        for (std::size_t i = 0; i < all.size(); i += 3)
            for (std::size_t j = 0; j < all.size(); j += 5) {
                REQUIRE(all[i] * all[j] == all[j] * all[i]);
                for (std::size_t k = 0; k < all.size(); k += 7)
                    REQUIRE((all[i] * all[j]) * all[k] == all[i] * (all[j] * all[k]));
            }
        Fp2 w(Fp(0, P), Fp(1, P));
        CHECK(w * w == Fp2::from_base(fp2_nonsquare(P)));
    }
}
