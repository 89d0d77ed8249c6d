#include "steenrod/errors.h"
#include "steenrod/parse.h"
#include "steenrod/presentations.h"
#include "support.h"

#include <doctest.h>

#include <random>

using namespace steenrod;

namespace {

OpExpression random_expression(Prime p, std::mt19937_64& rng, int depth);

OpAtom random_atom(Prime p, std::mt19937_64& rng, int depth)
{
    OpAtom a;
    int pick = int(rng() % (depth < 2 ? 6 : 5));
    switch (pick) {
    case 0:
        a.kind = OpAtom::Kind::power;
        a.index = int(rng() % 7);
        break;
    case 1:
        a.kind = OpAtom::Kind::bockstein_power;
        a.index = int(rng() % 4);
        break;
    case 2:
        a.kind = OpAtom::Kind::beta;
        break;
    case 3:
        a.kind = OpAtom::Kind::milnor;
        a.index = int(rng() % 2);
        break;
    case 4:
        if (p.value() == 2) {
            a.kind = OpAtom::Kind::sq;
            a.index = int(rng() % 9);
        }
        else {
            a.kind = OpAtom::Kind::power;
            a.index = 12 + int(rng() % 5);
        }
        break;
    default:
        a.kind = OpAtom::Kind::group;
        a.group.push_back(random_expression(p, rng, depth + 1));
    }
    return a;
}

OpExpression random_expression(Prime p, std::mt19937_64& rng, int depth)
{
    OpExpression e;
    int n = 1 + int(rng() % 3);
    for (int i = 0; i < n; ++i) {
        OpTerm t;
        t.negative = rng() % 3 == 0;
        t.explicit_coefficient = rng() % 3 == 0;
        if (t.explicit_coefficient)
            t.coefficient = int64_t(rng() % 12);
        int atoms = int(rng() % 3) + (t.explicit_coefficient ? 0 : 1);
        for (int k = 0; k < atoms; ++k)
            t.atoms.push_back(random_atom(p, rng, depth));
        e.terms.push_back(t);
    }
    return e;
}

std::size_t error_offset(const std::string& text, Prime p)
{
    try {
        parse_operation(text, p);
    }
    catch (const ParseError& e) {
        return e.offset();
    }
    FAIL("no parse error for " << text);
    return 0;
}

}  // namespace

TEST_CASE("printed expressions parse back to the same tree")
{
    std::mt19937_64 rng(1201);
    for (int p : {2, 3, 5}) {
        for (int trial = 0; trial < 300; ++trial) {
            OpExpression e = random_expression(Prime(p), rng, 0);
            std::string text = print(e);
            CAPTURE(text);
            CHECK(parse_operation(text, Prime(p)) == e);
            CHECK(print(parse_operation(text, Prime(p))) == text);
        }
    }
}

TEST_CASE("normal forms print in the input grammar")
{
    std::mt19937_64 rng(77);
    for (int p : {2, 3, 5}) {
        const Prime P(p);
        for (int trial = 0; trial < 100; ++trial) {
            OpElement x(P);
            for (int k = 0; k < 3; ++k)
                x.add(testing::random_word(P, 6 * (p - 1) * 2, rng), Fp(int64_t(1 + rng() % (p - 1)), P));
            OpElement normal = rewrite_to_admissible(x);
            CAPTURE(normal.to_string());
            CHECK(evaluate(parse_operation(normal.to_string(), P), P) == normal);
        }
    }
}

TEST_CASE("evaluation of small expressions")
{
    const Prime p3(3);
    CHECK(evaluate(parse_operation("P^1 beta", p3), p3) == OpElement::monomial({1, kBeta}, p3));
    CHECK(evaluate(parse_operation("P^1 P^1", p3), p3) == OpElement::monomial({2}, p3, 2));
    CHECK(evaluate(parse_operation("Q_1", p3), p3) ==
          rewrite_to_admissible(OpElement::monomial({1, kBeta}, p3) - OpElement::monomial({kBeta, 1}, p3)));
    CHECK(evaluate(parse_operation("B^2", p3), p3) == OpElement::monomial({kBeta, 2}, p3));
    CHECK(evaluate(parse_operation("beta beta", p3), p3).is_zero());
    CHECK(evaluate(parse_operation("3 P^1", p3), p3).is_zero());
    CHECK(evaluate(parse_operation("-P^1 + 4 P^1", p3), p3).is_zero());
    CHECK(evaluate(parse_operation("1", p3), p3) == OpElement::identity(p3));
    CHECK(evaluate(parse_operation("P^0", p3), p3) == OpElement::identity(p3));
    CHECK(evaluate(parse_operation("(P^1 + beta) P^1", p3), p3) ==
          evaluate(parse_operation("P^1 P^1 + beta P^1", p3), p3));
    CHECK(evaluate(parse_operation("P^{12}", p3), p3) == OpElement::power(12, p3));

    const Prime p2(2);
    // tau Sq^3 Sq^1 vanishes in the tau = 0 quotient
    CHECK(evaluate(parse_operation("Sq^2 Sq^2", p2), p2).is_zero());
    CHECK(evaluate(parse_operation("Sq^2 Sq^3", p2), p2) == evaluate(parse_operation("Sq^5 + Sq^4 Sq^1", p2), p2));
    CHECK(evaluate(parse_operation("Sq^1 Sq^2", p2), p2) == OpElement::monomial({kBeta, 1}, p2));
    CHECK(evaluate(parse_operation("Sq^3", p2), p2) == OpElement::monomial({kBeta, 1}, p2));
}

TEST_CASE("unicode input normalizes to the ASCII grammar")
{
    const Prime p3(3);
    CHECK(normalize_unicode("P\xC2\xB9\xCE\xB2") == "P^1beta");
    CHECK(normalize_unicode("P\xC2\xB9\xC2\xB2") == "P^12");
    CHECK(normalize_unicode("Q\xE2\x82\x81") == "Q_1");
    CHECK(normalize_unicode("a \xE2\x88\x92 b") == "a - b");
    CHECK(evaluate(parse_operation("P\xC2\xB9\xCE\xB2 \xE2\x88\x92 \xCE\xB2P\xC2\xB9", p3), p3) ==
          evaluate(parse_operation("Q_1", p3), p3));
    CHECK(evaluate(parse_operation("P\xC2\xB9\xE2\x88\x98P\xC2\xB9", p3), p3) ==
          evaluate(parse_operation("P^1 P^1", p3), p3));
}

TEST_CASE("parse errors carry the byte offset of the offending input")
{
    const Prime p3(3), p2(2);
    CHECK(error_offset("Sq^3", p3) == 0);
    CHECK(error_offset("P^1 Sq^3", p3) == 4);
    CHECK(error_offset("P^1 +", p3) == 5);
    CHECK(error_offset("P^", p3) == 2);
    CHECK(error_offset("P^1 )", p3) == 4);
    CHECK(error_offset("(P^1", p3) == 4);
    CHECK(error_offset("P^1 % beta", p3) == 4);
    CHECK(error_offset("Q_99", p3) == 0);
    CHECK(error_offset("P^9999999", p3) == 2);
    CHECK(error_offset("", p2) == 0);
    // the beta letter is two bytes, so the stray '%' sits at byte 5 of the raw input
    CHECK(error_offset("P\xC2\xB9\xCE\xB2%", p3) == 5);
    CHECK_NOTHROW(parse_operation("Sq^3", p2));

    try {
        parse_operation("P^1 ?", p3);
        FAIL("expected a parse error");
    }
    catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("byte 4") != std::string::npos);
        CHECK_FALSE(e.expected().empty());
    }
}

TEST_CASE("deep nesting is rejected rather than overflowing")
{
    const Prime p3(3);
    std::string text(100, '(');
    text += "P^1";
    text += std::string(100, ')');
    CHECK_THROWS_AS(parse_operation(text, p3), ParseError);
    std::string ok(20, '(');
    ok += "P^1";
    ok += std::string(20, ')');
    CHECK(evaluate(parse_operation(ok, p3), p3) == OpElement::power(1, p3));
}

TEST_CASE("class expressions")
{
    auto ring = standard_presentation("bmu:2", Prime(3), 20);
    const auto& pres = ring.pres;
    auto u1 = RingElement::generator(pres, *pres->index_of("u1"));
    auto u2 = RingElement::generator(pres, *pres->index_of("u2"));
    auto v1 = RingElement::generator(pres, *pres->index_of("v1"));
    auto v2 = RingElement::generator(pres, *pres->index_of("v2"));

    CHECK(parse_class("u1^2", pres).is_zero());
    CHECK(parse_class("u1 u2", pres) == u1 * u2);
    CHECK(parse_class("u2*u1", pres) == -(u1 * u2));
    CHECK(parse_class("v1^3 u2 - u1 v2^{3}", pres) == v1.pow(3) * u2 - u1 * v2.pow(3));
    CHECK(parse_class("2(v1 + v2)^2", pres) == (v1 + v2).pow(2) * RingElement::scalar(pres, Fp(2, Prime(3))));
    CHECK(parse_class("-1", pres) == RingElement::scalar(pres, Fp(-1, Prime(3))));
    CHECK(parse_class("3 v1", pres).is_zero());

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        RingElement x = testing::random_element(pres, 12, rng);
        CAPTURE(x.to_string());
        CHECK(parse_class(x.to_string(), pres) == x);
    }

    try {
        parse_class("u1 + w3", pres);
        FAIL("expected a parse error");
    }
    catch (const ParseError& e) {
        CHECK(e.offset() == 5);
        CHECK(std::string(e.what()).find("w3") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_class("u1 +", pres), ParseError);
    CHECK_THROWS_AS(parse_class("v1^", pres), ParseError);
}
