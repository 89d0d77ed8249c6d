#pragma once

#include "steenrod/operation.h"
#include "steenrod/ring.h"

#include <doctest.h>

#include <random>

namespace doctest {
template <>
struct StringMaker<steenrod::RingElement> {
    static String convert(const steenrod::RingElement& x) { return x.to_string().c_str(); }
};
}  // namespace doctest

namespace steenrod::testing {

/* Random homogeneous element of bidegree d, or zero when the bidegree is empty. */
inline RingElement random_in(const PresentationPtr& pres, Bidegree d, std::mt19937_64& rng)
{
    RingElement x = RingElement::zero(pres);
    const uint32_t p = pres->prime().value();
    for (const auto& m : pres->basis_in(d))
        x.add(m, Fp(int64_t(rng() % p), pres->prime()));
    return x;
}

/* Random homogeneous element of some bidegree with 1 <= t <= max_t that has a basis. */
inline RingElement random_homogeneous(const PresentationPtr& pres, int max_t, std::mt19937_64& rng)
{
    auto basis = pres->basis_up_to(max_t);
    if (basis.size() <= 1)
        return RingElement::one(pres);
    const Monomial& pick = basis[1 + rng() % (basis.size() - 1)];
    return random_in(pres, pres->degree(pick), rng);
}

/* Random inhomogeneous element from monomials of degree <= max_t. */
inline RingElement random_element(const PresentationPtr& pres, int max_t, std::mt19937_64& rng, int terms = 4)
{
    auto basis = pres->basis_up_to(max_t);
    RingElement x = RingElement::zero(pres);
    const uint32_t p = pres->prime().value();
    for (int i = 0; i < terms; ++i)
        x.add(basis[rng() % basis.size()], Fp(int64_t(1 + rng() % (p - 1)), pres->prime()));
    return x;
}

/* Random word (not necessarily admissible) of topological degree <= max_t. */
inline Word random_word(Prime p, int max_t, std::mt19937_64& rng, int max_letters = 4)
{
    Word w;
    int t = 0;
    const int step = 2 * (p.value() - 1);
    int n = 1 + int(rng() % max_letters);
    for (int k = 0; k < n; ++k) {
        int letter;
        if (rng() % 3 == 0)
            letter = kBeta;
        else
            letter = 1 + int(rng() % 3 == 0 ? rng() % 4 : 0);
        int dt = letter == kBeta ? 1 : letter * step;
        if (t + dt > max_t)
            break;
        if (letter == kBeta && !w.empty() && w.back() == kBeta)
            continue;
        w.push_back(letter);
        t += dt;
    }
    return w;
}

}  // namespace steenrod::testing
