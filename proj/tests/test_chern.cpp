#include "steenrod/chern.h"
#include "steenrod/errors.h"
#include "support.h"

#include <doctest.h>

using namespace steenrod;

namespace {

Poly c(int i, int r, Prime p)
{
    return Poly::variable(p, chern_weights(r), std::size_t(i - 1));
}

/* Power sums p_1..p_k in c1..cr by Newton's identities, c_i = 0 past r. */
std::vector<Poly> newton_power_sums(int k, int r, Prime p)
{
    auto e = [&](int i) { return i <= r ? c(i, r, p) : Poly(p, chern_weights(r)); };
    std::vector<Poly> ps{Poly(p, chern_weights(r))};
    for (int n = 1; n <= k; ++n) {
        Poly s = e(n).scaled(Fp(int64_t(n) * (n % 2 ? 1 : -1), p));
        for (int i = 1; i < n; ++i)
            s = s + (e(i) * ps[std::size_t(n - i)]).scaled(Fp(i % 2 ? 1 : -1, p));
        ps.push_back(s);
    }
    return ps;
}

Poly random_chern(int r, int max_weight, Prime p, std::mt19937_64& rng)
{
    Poly f(p, chern_weights(r));
    for (int k = 0; k < 5; ++k) {
        Poly::Exps e(std::size_t(r), 0);
        int left = 1 + int(rng() % max_weight);
        for (int i = r; i >= 1; --i) {
            e[i - 1] = uint16_t(left / i ? rng() % (left / i + 1) : 0);
            left -= i * e[i - 1];
        }
        f.add(e, Fp(int64_t(rng() % p.value()), p));
    }
    return f;
}

}  // namespace

TEST_CASE("elementary expansion inverts root substitution")
{
    std::mt19937_64 rng(0xE1);
    for (int pv : {2, 3, 5}) {
        Prime p(pv);
        for (int r = 1; r <= 4; ++r)
            for (int trial = 0; trial < 20; ++trial) {
                Poly f = random_chern(r, 6, p, rng);
                CHECK(elementary_expand(SymmetricPoly(chern_to_roots(f, r), r)).poly() == f);
            }
    }
    Prime p(3);
    Poly a1 = Poly::variable(p, root_weights(2), 0);
    CHECK_THROWS_AS(SymmetricPoly(a1, 2), InvalidInput);
    CHECK_NOTHROW(SymmetricPoly(elementary_symmetric(2, 3, p), 3));
}

TEST_CASE("operations on Chern classes agree with Newton's identities")
{
    for (int pv : {2, 3, 5}) {
        Prime p(pv);
        /* P^1(c1) = p_p for a bundle of rank >= p */
        int r = pv + 1;
        auto ps = newton_power_sums(pv, r, p);
        CHECK(act_on_chern(OpElement::power(1, p), c(1, r, p), r).poly() == ps[std::size_t(pv)]);

        /* P^1(c_r) = c_r p_{p-1} for a rank r bundle */
        for (int rank = 1; rank <= 4; ++rank) {
            auto q = newton_power_sums(pv - 1, rank, p);
            Poly expect = c(rank, rank, p) * q[std::size_t(pv - 1)];
            CHECK(act_on_chern(OpElement::power(1, p), c(rank, rank, p), rank, false).poly() == expect);
        }
    }
    Prime p(3);
    CHECK_THROWS_AS(act_on_chern(OpElement::power(1, p), c(1, 1, p), 1), InvalidInput);
    CHECK_THROWS_AS(act_on_chern(OpElement::power(1, p), c(2, 2, p), 1, false), InvalidInput);
    CHECK(act_on_chern(OpElement::beta(p), c(1, 1, p), 1).poly().is_zero());
}

TEST_CASE("Chern class tables match the root ring")
{
    for (int pv : {2, 3}) {
        Prime p(pv);
        const int bound = 24;
        auto classes = chern_classes(3, p, bound);
        auto roots = chern_roots(3, p, bound);
        auto to_roots = [&](const RingElement& x) {
            RingElement out = RingElement::zero(roots.pres);
            std::vector<RingElement> e;
            for (int k = 1; k <= 3; ++k) {
                Poly ek = elementary_symmetric(k, 3, p);
                RingElement v = RingElement::zero(roots.pres);
                for (const auto& [m, coef] : ek.terms())
                    v.add(m, Fp(coef, p));
                e.push_back(v);
            }
            for (const auto& [m, coef] : x.terms()) {
                RingElement term = RingElement::scalar(roots.pres, Fp(coef, p));
                for (int k = 0; k < 3; ++k)
                    term = term * e[std::size_t(k)].pow(m[std::size_t(k)]);
                out += term;
            }
            return out;
        };
        for (const auto& w : admissible_basis(12, p))
            for (int i = 1; i <= 3; ++i) {
                auto ci = RingElement::generator(classes.pres, "c" + std::to_string(i));
                auto lhs = apply_operation(OpElement::monomial(w, p), ci, classes.action);
                auto rhs = apply_operation(OpElement::monomial(w, p), to_roots(ci), roots.action);
                if (lhs.truncated || rhs.truncated)
                    continue;
                CHECK(to_roots(lhs.value) == rhs.value);
            }
    }
}

TEST_CASE("total Stiefel-Whitney classes")
{
    Prime p(3);
    Poly w = total_sw(VirtualBundle{{{2, false}}}, p, 4);
    Poly expect = Poly::constant(p, chern_weights(2), 1) + c(1, 2, p).pow(2) - c(2, 2, p).scaled(Fp(2, p)) +
                  c(2, 2, p).pow(2);
    CHECK(w == expect);
    CHECK(w.to_string(chern_names(2)) == "c2^2 + c1^2 + c2 + 1");

    for (int pv : {2, 3, 5})
        for (int r = 1; r <= 3; ++r) {
            Prime q(pv);
            Poly plus = total_sw(VirtualBundle{{{r, false}}}, q, 8);
            Poly minus = total_sw(VirtualBundle{{{r, true}}}, q, 8);
            CHECK((plus * minus).truncated(8) == Poly::constant(q, chern_weights(r), 1));
        }

    VirtualBundle two{{{1, false}, {1, false}}};
    CHECK(two.names() == std::vector<std::string>{"c1", "d1"});
    Poly w2 = total_sw(two, Prime(2), 4);
    CHECK(w2.to_string(two.names()) == "c1*d1 + c1 + d1 + 1");
}

TEST_CASE("Thom class and root expansion give the same Stiefel-Whitney classes")
{
    for (int pv : {2, 3, 5})
        for (int r = 1; r <= 3; ++r)
            for (int j = 0; j <= 3; ++j) {
                Prime p(pv);
                CHECK(sw_class(j, r, p) == sw_class_roots(j, r, p));
            }
}

TEST_CASE("inverse Todd-type genus")
{
    Prime p(5);
    Poly a(p, {1});
    a.add({1}, Fp(1, p));
    CHECK(todd_inverse(a, VirtualBundle{{{3, false}}}, 6) == Poly::constant(p, chern_weights(3), 1));

    Poly psi = a;
    psi.add({2}, Fp(1, p));
    Poly total_chern = todd_inverse(psi, VirtualBundle{{{2, false}}}, 6);
    CHECK(total_chern == Poly::constant(p, chern_weights(2), 1) + c(1, 2, p) + c(2, 2, p));
    Poly inverse = todd_inverse(psi, VirtualBundle{{{2, true}}}, 6);
    CHECK((total_chern * inverse).truncated(6) == Poly::constant(p, chern_weights(2), 1));

    Poly bad(p, {1});
    bad.add({2}, Fp(1, p));
    CHECK_THROWS_AS(todd_inverse(bad, VirtualBundle{{{1, false}}}, 4), InvalidInput);
}

TEST_CASE("Wu formula for projective space")
{
    for (int pv : {2, 3, 5})
        for (int n = 0; n <= 6; ++n) {
            Prime p(pv);
            auto space = proj_space(n, p);
            auto h = RingElement::generator(space.pres, "h");
            for (int k = 0; k <= n; ++k) {
                auto report = verify_wu_proj(n, h.pow(unsigned(k)));
                CHECK_MESSAGE(report.equal, "p=" << pv << " n=" << n << " k=" << k << " lhs " << report.lhs
                                                 << " rhs " << report.rhs);
            }
        }
    auto other = proj_space(3, Prime(3));
    CHECK_THROWS_AS(verify_wu_proj(2, RingElement::generator(other.pres, "h")), InvalidInput);
}

TEST_CASE("Wu formula for the zero section")
{
    std::mt19937_64 rng(0x2E);
    for (int pv : {2, 3})
        for (int r = 1; r <= 2; ++r) {
            Prime p(pv);
            ThomModel model = thom_model(r, p, 16);
            for (int trial = 0; trial < 10; ++trial) {
                Poly f = random_chern(r, 2, p, rng);
                auto z = chern_poly_to_ring(f, model.ring.pres);
                auto report = verify_wu_zero(model, z);
                CHECK_MESSAGE(report.equal, "p=" << pv << " r=" << r << " z=" << report.class_text);
            }
        }
}
