#include "doctest.h"

#include "steenrod/errors.h"
#include "steenrod/operation.h"

#include <functional>
#include <map>
#include <random>

using namespace steenrod;

namespace {

Word random_word(std::mt19937_64& rng, int max_len, int max_index)
{
    Word w;
    int len = int(rng() % (max_len + 1));
    for (int i = 0; i < len; ++i)
        w.push_back(rng() % 3 == 0 ? kBeta : 1 + int(rng() % max_index));
    return w;
}

OpElement random_element(std::mt19937_64& rng, Prime p, int terms, int max_len, int max_index)
{
    OpElement e(p);
    for (int i = 0; i < terms; ++i)
        e.add(random_word(rng, max_len, max_index), Fp(int64_t(rng() % p.value()), p));
    return e;
}

/* Product in the tensor square with the Koszul sign on the middle factors. */
TensorElement tensor_multiply(const TensorElement& x, const TensorElement& y)
{
    const Prime p = x.prime();
    TensorElement r(p, 2);
    for (const auto& [kx, cx] : x.terms())
        for (const auto& [ky, cy] : y.terms()) {
            int sign_exp = bidegree(kx[1], p).t * bidegree(ky[0], p).t;
            OpElement left = multiply(OpElement::monomial(kx[0], p), OpElement::monomial(ky[0], p));
            OpElement right = multiply(OpElement::monomial(kx[1], p), OpElement::monomial(ky[1], p));
            Fp c = Fp(cx, p) * Fp(cy, p) * (sign_exp % 2 ? Fp(-1, p) : Fp(1, p));
            for (const auto& [wl, cl] : left.terms())
                for (const auto& [wr, cr] : right.terms())
                    r.add({wl, wr}, c * Fp(cl, p) * Fp(cr, p));
        }
    return r;
}

TensorElement primitive_coproduct(const OpElement& q)
{
    TensorElement r(q.prime(), 2);
    for (const auto& [w, c] : q.terms()) {
        r.add({w, {}}, Fp(c, q.prime()));
        r.add({{}, w}, Fp(c, q.prime()));
    }
    return r;
}

/* Count dual monomials by walking the generator list explicitly. */
uint64_t brute_dual_count(Bidegree d, int p)
{
    std::vector<std::pair<Bidegree, bool>> gens;  // (bidegree, exterior)
    for (int64_t pi = 1; 2 * pi - 1 <= d.t; pi *= p)
        gens.push_back({{int(2 * pi - 1), int(pi - 1)}, true});
    for (int64_t pj = p; 2 * pj - 2 <= d.t; pj *= p)
        gens.push_back({{int(2 * pj - 2), int(pj - 1)}, false});
    std::function<uint64_t(std::size_t, Bidegree)> go = [&](std::size_t i, Bidegree left) -> uint64_t {
        if (i == gens.size())
            return left == Bidegree{0, 0} ? 1 : 0;
        uint64_t total = 0;
        Bidegree rest = left;
        for (int e = 0;; ++e) {
            if (rest.t < 0 || rest.w < 0)
                break;
            total += go(i + 1, rest);
            if (gens[i].second && e == 1)
                break;
            rest = rest - gens[i].first;
        }
        return total;
    };
    return go(0, d);
}

}  // namespace

TEST_CASE("bidegrees of letters and words")
{
    CHECK(bidegree(Word{}, 3) == Bidegree{0, 0});
    CHECK(bidegree(Word{1}, 3) == Bidegree{4, 2});
    CHECK(bidegree(Word{kBeta, 1}, 2) == Bidegree{3, 1});
    CHECK(bidegree(Word{2, kBeta, 1}, 5) == Bidegree{25, 12});
}

TEST_CASE("Sq in terms of P and beta")
{
    Prime two(2);
    CHECK(sq(0, two) == OpElement::identity(two));
    CHECK(sq(1, two) == OpElement::beta(two));
    CHECK(sq(2, two) == OpElement::power(1, two));
    CHECK(sq(4, two) == OpElement::power(2, two));
    CHECK(sq(5, two) == OpElement::monomial({kBeta, 2}, two));
    CHECK_THROWS_AS(sq(2, Prime(3)), InvalidInput);
}

TEST_CASE("admissibility")
{
    CHECK(is_admissible({1}, 2));
    CHECK_FALSE(is_admissible({1, 1}, 2));
    CHECK(is_admissible({2, 1}, 2));
    CHECK_FALSE(is_admissible({3, kBeta, 1}, 3));
    CHECK(is_admissible({4, kBeta, 1}, 3));
    CHECK(is_admissible({kBeta, 3, 1}, 3));
    CHECK_FALSE(is_admissible({kBeta, kBeta}, 3));
    CHECK(is_admissible({kBeta, 1, kBeta}, 5));
    CHECK(is_admissible({}, 5));
}

TEST_CASE("Adem relation examples")
{
    Prime two(2), three(3);
    CHECK(adem_pp(1, 1, two).is_zero());
    CHECK(adem_pp(1, 1, three) == OpElement::monomial({2}, three, 2));

    OpElement pb = adem_pb(1, 1, three);
    OpElement expected(three);
    expected.add({kBeta, 2}, Fp(1, three));
    expected.add({2, kBeta}, Fp(1, three));
    CHECK(pb == expected);

    CHECK_THROWS_AS(adem_pp(2, 1, two), InvalidInput);
    CHECK_THROWS_AS(adem_pb(3, 1, two), InvalidInput);
    CHECK_THROWS_AS(adem_pp(0, 1, two), InvalidInput);
}

TEST_CASE("rewriting examples")
{
    Prime two(2), three(3);
    CHECK(rewrite_to_admissible(OpElement::monomial({kBeta, kBeta, 1}, three)).is_zero());
    CHECK(rewrite_to_admissible(OpElement::monomial({1, 1}, two)).is_zero());
    OpElement adm = OpElement::monomial({4, kBeta, 1}, three);
    CHECK(rewrite_to_admissible(adm) == adm);
    CHECK(multiply(OpElement::power(1, two), OpElement::identity(two)) == OpElement::power(1, two));
    CHECK(multiply(OpElement::beta(three), OpElement::beta(three)).is_zero());
    CHECK_THROWS_AS(multiply(OpElement::beta(two), OpElement::beta(three)), InvalidInput);
}

TEST_CASE("rewriting is idempotent, admissible, and degree preserving")
{
    std::mt19937_64 rng(2024);
    for (int p : {2, 3, 5}) {
        Prime P(p);
        for (int trial = 0; trial < 300; ++trial) {
            Word w = random_word(rng, 6, 20);
            OpElement e = OpElement::monomial(w, P);
            if (e.is_zero())
                continue;
            OpElement r = rewrite_to_admissible(e);
            REQUIRE(rewrite_to_admissible(r) == r);
            for (const auto& [word, c] : r.terms()) {
                REQUIRE(is_admissible(word, p));
                REQUIRE(bidegree(word, p) == bidegree(w, p));
            }
        }
    }
}

TEST_CASE("composition is associative and unital")
{
    std::mt19937_64 rng(77);
    for (int p : {2, 3, 5}) {
        Prime P(p);
        for (int trial = 0; trial < 80; ++trial) {
            OpElement a = random_element(rng, P, 2, 2, 6);
            OpElement b = random_element(rng, P, 2, 2, 6);
            OpElement c = random_element(rng, P, 2, 2, 6);
            REQUIRE(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
            REQUIRE(multiply(OpElement::identity(P), rewrite_to_admissible(a)) == rewrite_to_admissible(a));
        }
    }
}

TEST_CASE("coproduct examples")
{
    Prime three(3);
    TensorElement unit(three, 2);
    unit.add({{}, {}}, Fp(1, three));
    CHECK(coproduct(OpElement::identity(three)) == unit);

    TensorElement d1(three, 2);
    d1.add({{1}, {}}, Fp(1, three));
    d1.add({{}, {1}}, Fp(1, three));
    CHECK(coproduct(OpElement::power(1, three)) == d1);

    TensorElement db(three, 2);
    db.add({{kBeta}, {}}, Fp(1, three));
    db.add({{}, {kBeta}}, Fp(1, three));
    CHECK(coproduct(OpElement::beta(three)) == db);
}

TEST_CASE("coproduct is multiplicative")
{
    /* An algebra map only exists if the Adem coefficients are right. */
    std::mt19937_64 rng(31);
    for (int p : {2, 3, 5}) {
        Prime P(p);
        for (int trial = 0; trial < 60; ++trial) {
            OpElement a = OpElement::monomial(random_word(rng, 2, 5), P);
            OpElement b = OpElement::monomial(random_word(rng, 2, 5), P);
            REQUIRE(coproduct(multiply(a, b)) == tensor_multiply(coproduct(a), coproduct(b)));
        }
    }
}

TEST_CASE("coassociativity and counit on admissible monomials")
{
    for (int p : {2, 3}) {
        Prime P(p);
        for (const Word& w : admissible_basis(30, P)) {
            OpElement e = OpElement::monomial(w, P);
            TensorElement d = coproduct(e);
            REQUIRE(coproduct_on_leg(d, 0) == coproduct_on_leg(d, 1));
            REQUIRE(counit_on_leg(d, 0) == as_tensor(e));
            REQUIRE(counit_on_leg(d, 1) == as_tensor(e));
            for (const auto& [key, c] : d.terms())
                REQUIRE(bidegree(key[0], p) + bidegree(key[1], p) == bidegree(w, p));
        }
    }
}

TEST_CASE("Milnor primitives")
{
    Prime three(3);
    CHECK(milnor_q(0, three) == OpElement::beta(three));
    CHECK(milnor_q_composite(0, three) == OpElement::beta(three));
    OpElement q1(three);
    q1.add({1, kBeta}, Fp(1, three));
    q1.add({kBeta, 1}, Fp(-1, three));
    CHECK(milnor_q(1, three) == q1);

    for (int p : {2, 3, 5})
        for (int n = 0; n <= 3; ++n) {
            Prime P(p);
            OpElement q = milnor_q(n, P);
            if (n <= 1)
                REQUIRE(q == milnor_q_composite(n, P));
            else
                REQUIRE_FALSE(q == milnor_q_composite(n, P));
            REQUIRE(coproduct(q) == primitive_coproduct(q));
            if (n >= 2) {
                OpElement composite = milnor_q_composite(n, P);
                REQUIRE_FALSE(coproduct(composite) == primitive_coproduct(composite));
            }
            if (n <= 2 && p <= 3)
                REQUIRE(multiply(q, q).is_zero());
        }
}

TEST_CASE("admissible basis enumeration")
{
    Prime two(2), three(3);
    CHECK(admissible_basis(0, two) == std::vector<Word>{Word{}});
    CHECK(admissible_basis(1, three) == std::vector<Word>{Word{}, Word{kBeta}});
    CHECK(admissible_basis_in_degree(5, three) == std::vector<Word>{Word{kBeta, 1}, Word{1, kBeta}});

    /* independent enumeration: filter every reduced word of bounded degree */
    for (int p : {2, 3}) {
        const int max_t = 24;
        std::vector<Word> brute;
        std::function<void(Word&, int)> grow = [&](Word& w, int t) {
            if (is_admissible(w, p) && reduce_word(w))
                brute.push_back(w);
            for (int l = 0;; ++l) {
                int dt = bidegree(Word{l}, p).t;
                if (t + dt > max_t)
                    break;
                w.push_back(l);
                grow(w, t + dt);
                w.pop_back();
            }
        };
        Word w;
        grow(w, 0);
        std::sort(brute.begin(), brute.end(), WordOrder{p});
        REQUIRE(admissible_basis(max_t, Prime(p)) == brute);
    }
}

TEST_CASE("admissible counts match dual monomial counts")
{
    CHECK(milnor_monomial_count({0, 0}, Prime(5)) == 1);
    CHECK(milnor_monomial_count({1, 0}, Prime(3)) == 1);
    CHECK(milnor_monomial_count({4, 2}, Prime(3)) == 1);
    CHECK(milnor_monomial_count({-1, 0}, Prime(3)) == 0);
    for (int p : {2, 3}) {
        std::map<Bidegree, uint64_t> counts;
        for (const Word& w : admissible_basis(60, Prime(p)))
            ++counts[bidegree(w, p)];
        for (int t = 0; t <= 60; ++t)
            for (int w = 0; w <= t; ++w) {
                uint64_t dual = milnor_monomial_count({t, w}, Prime(p));
                REQUIRE(dual == brute_dual_count({t, w}, p));
                REQUIRE(counts[{t, w}] == dual);
            }
    }
}

TEST_CASE("printing")
{
    Prime three(3);
    OpElement e(three);
    e.add({2, kBeta, 1}, Fp(2, three));
    e.add({}, Fp(1, three));
    CHECK(e.to_string() == "1 + 2 P^2 beta P^1");
    CHECK(OpElement(three).to_string() == "0");
    CHECK(OpElement::monomial({}, three, 2).to_string() == "2");
}
