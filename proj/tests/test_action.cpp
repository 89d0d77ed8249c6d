#include "steenrod/action.h"
#include "steenrod/errors.h"
#include "steenrod/presentations.h"
#include "support.h"

#include <doctest.h>

#include <map>

using namespace steenrod;
using steenrod::testing::random_homogeneous;
using steenrod::testing::random_word;

namespace {

/* H*(B mu_p) by hand: basis u^e v^k keyed as (e, k). */
using Closed = std::map<std::pair<int, int>, int64_t>;

Closed closed_letter(int letter, const Closed& x, int p)
{
    Closed out;
    for (const auto& [m, c] : x) {
        auto [e, k] = m;
        if (letter == kBeta) {
            if (e)
                out[{0, k + 1}] += c;
            continue;
        }
        int64_t b = binom_mod_p(uint64_t(k), uint64_t(letter), Prime(p)).value();
        if (b)
            out[{e, k + letter * (p - 1)}] += b * c;
    }
    for (auto it = out.begin(); it != out.end();) {
        it->second = ((it->second % p) + p) % p;
        it = it->second ? std::next(it) : out.erase(it);
    }
    return out;
}

RingElement closed_to_ring(const Closed& x, const PresentationPtr& pres)
{
    RingElement r = RingElement::zero(pres);
    for (const auto& [m, c] : x)
        if (m.first + 2 * m.second <= pres->degree_bound())
            r.add({uint16_t(m.first), uint16_t(m.second)}, Fp(c, pres->prime()));
    return r;
}

/* Apply a tensor element a (x) b to x (x) y with the Koszul sign, multiplying the results. */
RingElement cartan_apply(const TensorElement& d, const RingElement& x, int tx, const RingElement& y,
                         ActionEvaluator& ev)
{
    const Prime p = x.prime();
    RingElement out = RingElement::zero(x.presentation());
    for (const auto& [key, c] : d.terms()) {
        int tb = bidegree(key[1], p.value()).t;
        Fp s = Fp(c, p) * Fp((tb * tx) % 2 ? -1 : 1, p);
        out += (ev.word(key[0], x) * ev.word(key[1], y)).scaled(s);
    }
    return out;
}

}  // namespace

TEST_CASE("action on B mu_p matches the closed form")
{
    std::mt19937_64 rng(0xB0);
    for (int pv : {2, 3, 5, 7}) {
        Prime p(pv);
        const int bound = 60;
        auto r = bmu_p_power(1, p, bound);
        ActionEvaluator ev(r.action);
        for (int trial = 0; trial < 200; ++trial) {
            Word w = random_word(p, 40, rng);
            int e = int(rng() % 2), k = int(rng() % 8);
            Closed x{{{e, k}, 1}};
            RingElement rx = closed_to_ring(x, r.pres);
            Closed expect = x;
            for (auto it = w.rbegin(); it != w.rend(); ++it)
                expect = closed_letter(*it, expect, pv);
            CHECK(ev.word(w, rx) == closed_to_ring(expect, r.pres));
        }
    }
}

TEST_CASE("default action rules")
{
    Prime p(3);
    auto r = bmu_p_power(1, p, 30);
    auto u = RingElement::generator(r.pres, "u"), v = RingElement::generator(r.pres, "v");
    /* P^1 on (2,1) is the p-th power, P^1(u) = 0 by instability */
    CHECK(apply_operation(OpElement::power(1, p), v, r.action).value == v.pow(3));
    CHECK(apply_operation(OpElement::power(1, p), u, r.action).value.is_zero());
    CHECK(apply_operation(OpElement::power(2, p), v, r.action).value.is_zero());
    CHECK(apply_operation(OpElement::beta(p), u * v, r.action).value == v * v);
    CHECK(apply_operation(OpElement::identity(p), u, r.action).value == u);

    auto past = apply_operation(OpElement::power(3, p), v.pow(12), r.action);
    CHECK(past.value.is_zero());
    CHECK(past.truncated);
}

TEST_CASE("undetermined values are reported")
{
    Prime p(3);
    auto pres = RingPresentation::create(p, {{"g", {3, 1}, GeneratorKind::exterior}, {"h", {4, 1}}, {"k", {7, 3}, GeneratorKind::exterior}}, {}, 20);
    ActionSpec spec(pres);
    auto g = RingElement::generator(pres, "g");
    CHECK_THROWS_AS(apply_operation(OpElement::beta(p), g, spec), MissingAction);
    spec.set_beta("g", RingElement::generator(pres, "h"));
    CHECK(apply_operation(OpElement::beta(p), g, spec).value == RingElement::generator(pres, "h"));
    /* P^1(g) lands in (7,3), which has basis k */
    CHECK_THROWS_AS(apply_operation(OpElement::power(1, p), g, spec), MissingAction);
    CHECK_THROWS_AS(spec.set_power("g", 1, RingElement::generator(pres, "h")), InvalidInput);
    CHECK_THROWS_AS(spec.set_power("g", 0, RingElement::zero(pres)), InvalidInput);

    auto grass = grassmannian_window(Prime(2));
    auto z = RingElement::generator(grass.pres, "z");
    auto x = RingElement::generator(grass.pres, "x");
    CHECK(apply_operation(OpElement::power(3, Prime(2)), z, grass.action).value == z * z);
    CHECK(apply_operation(OpElement::power(4, Prime(2)), z, grass.action).value.is_zero());
    CHECK_THROWS_AS(apply_operation(OpElement::power(1, Prime(2)), x.pow(6), grass.action), WindowExceeded);
}

TEST_CASE("action respects the Adem relations")
{
    std::mt19937_64 rng(0xAD);
    for (int pv : {2, 3, 5}) {
        Prime p(pv);
        for (auto kind : {"bmu:2", "chern:2", "bundle:2", "bmu:1*elliptic:ordinary:bx"}) {
            auto r = standard_presentation(kind, p, 36);
            ActionEvaluator ev(r.action);
            int nonzero = 0;
            for (int trial = 0; trial < 200; ++trial) {
                Word w = random_word(p, 24, rng);
                auto x = random_homogeneous(r.pres, 8, rng);
                auto admissible = rewrite_to_admissible(OpElement::monomial(w, p));
                auto lhs = ev.word(w, x);
                auto rhs = ev.element(admissible, x);
                if (lhs.truncated() || rhs.truncated())
                    continue;
                nonzero += !lhs.is_zero();
                CHECK(lhs == rhs);
            }
            CHECK(nonzero >= 10);
        }
    }
}

TEST_CASE("action satisfies the Cartan formula of the coproduct")
{
    std::mt19937_64 rng(0xCA);
    for (int pv : {2, 3, 5}) {
        Prime p(pv);
        for (auto kind : {"bmu:2", "chern:2", "bmu:1*elliptic:ordinary:bx"}) {
            auto r = standard_presentation(kind, p, 40);
            ActionEvaluator ev(r.action);
            int nonzero = 0;
            for (int trial = 0; trial < 200; ++trial) {
                auto op = rewrite_to_admissible(OpElement::monomial(random_word(p, 20, rng), p));
                auto x = random_homogeneous(r.pres, 8, rng);
                auto y = random_homogeneous(r.pres, 8, rng);
                auto dx = x.homogeneous_degree();
                if (!dx || op.is_zero())
                    continue;
                auto lhs = ev.element(op, x * y);
                auto rhs = cartan_apply(coproduct(op), x, dx->t, y, ev);
                if (lhs.truncated() || rhs.truncated())
                    continue;
                nonzero += !lhs.is_zero();
                CHECK(lhs == rhs);
            }
            CHECK(nonzero >= 10);
        }
    }
}

TEST_CASE("Milnor primitives act as derivations")
{
    std::mt19937_64 rng(0x30);
    for (int pv : {2, 3}) {
        Prime p(pv);
        auto r = bmu_p_power(2, p, 60);
        for (int n = 0; n <= 3; ++n) {
            for (int trial = 0; trial < 10; ++trial) {
                auto x = random_homogeneous(r.pres, 6, rng);
                auto fast = milnor_apply(n, x, r.action);
                auto slow = apply_operation(milnor_q(n, p), x, r.action);
                CHECK(fast.value == slow.value);
            }
        }
        /* Q_n(u) = v^{p^n} */
        auto u1 = RingElement::generator(r.pres, "u1"), v1 = RingElement::generator(r.pres, "v1");
        CHECK(milnor_apply(2, u1, r.action).value == v1.pow(unsigned(pv * pv)));
    }
}

TEST_CASE("total power is multiplicative")
{
    std::mt19937_64 rng(0x70);
    Prime p(3);
    auto r = bmu_p_power(2, p, 30);
    for (int trial = 0; trial < 20; ++trial) {
        auto x = random_homogeneous(r.pres, 6, rng);
        auto y = random_homogeneous(r.pres, 6, rng);
        auto dx = x.homogeneous_degree();
        if (!dx)
            continue;
        /* beta contributes only through B^n; P_total = sum P^n is multiplicative on its own */
        OpElement pt(p);
        for (int n = 0; 4 * n <= 30; ++n)
            pt.add(n ? Word{n} : Word{}, Fp(1, p));
        ActionEvaluator ev(r.action);
        auto lhs = ev.element(pt, x * y);
        auto rhs = ev.element(pt, x) * ev.element(pt, y);
        CHECK(lhs == rhs);
    }
}
