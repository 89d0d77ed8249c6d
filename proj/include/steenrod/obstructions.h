#pragma once

#include "steenrod/action.h"
#include "steenrod/ring.h"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace steenrod {

enum class Verdict { obstructed, unobstructed, inconclusive };

std::string to_string(Verdict v);

struct SubCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ObstructionReport {
    std::string check;
    Verdict verdict = Verdict::inconclusive;
    std::string witness;
    std::vector<std::pair<std::string, std::string>> parameters;
    std::vector<SubCheck> checks;

    /* Every sub-check passed. */
    bool consistent() const;
};

/* q with divisor * q == target, by linear algebra on the monomial basis of the quotient bidegree. */
std::optional<RingElement> divide_homogeneous(const RingElement& target, const RingElement& divisor);

/* Sq^2 obstruction for alpha x^2 + beta y in the Grassmannian window over F_2. */
ObstructionReport grassmannian_p2_check();

/* Smallest even m >= 4 with -(m-2)/2 a nonsquare unit mod p. */
int oddp_find_m(Prime p);

/* P^1 obstruction for alpha c1^2 + c2 with m Chern roots. */
ObstructionReport oddp_check(Prime p, int m);

/* Q_n(x) for 1 <= n <= n_max; the first nonzero value obstructs lifting. */
ObstructionReport mgl_screen(const RingElement& x, const ActionSpec& spec, int n_max);

enum class BxRegime { zero, formal };

/* Q_1 of v1 u2 x - u1 v2 x + u1 u2 beta(x) on (B mu_p)^2 times an ordinary elliptic curve. */
ObstructionReport tate_counterexample(Prime p, BxRegime regime);

/* Q_n ... Q_1 Q_0 (u_1 ... u_m) in (B mu_p)^m. */
ObstructionReport qi_nonvanishing(int n, int m, Prime p);

}  // namespace steenrod
