#pragma once

#include "steenrod/action.h"
#include "steenrod/ring.h"

#include <string>

namespace steenrod {

/* A presentation together with its operation table. */
struct StandardRing {
    PresentationPtr pres;
    ActionSpec action;
};

/* (B mu_p)^s: u_i exterior (1,1), v_i polynomial (2,1), beta(u_i) = v_i. Names u, v for s = 1, else u1, v1, u2, ... */
StandardRing bmu_p_power(int s, Prime p, int degree_bound);

enum class EllipticKind { ordinary, supersingular };

/*
 * Cohomology of an elliptic curve: ordinary has basis 1, x (1,0), z (1,1), y (2,1); supersingular has 1, y.
 * With formal_bx, an extra class bx (2,0) receives beta(x). Products of positive-degree classes vanish.
 */
StandardRing elliptic(EllipticKind kind, bool formal_bx, Prime p, int degree_bound);

/* Chern classes x, y, z of bidegrees (2,1), (4,2), (6,3), free below topological degree 14. */
StandardRing grassmannian_window(Prime p);

/* Free polynomial ring on Chern roots a1..am of bidegree (2,1). */
StandardRing chern_roots(int m, Prime p, int degree_bound);

/* Free polynomial ring on c1..cr, c_i of bidegree (2i, i), operations from r Chern roots. */
StandardRing chern_classes(int r, Prime p, int degree_bound);

/* F_p[h]/(h^{n+1}), h of bidegree (2,1). */
StandardRing proj_space(int n, Prime p);

/*
 * P(E + O) for E of rank r: c1..cr and hx of bidegree (2,1) with hx * t = 0,
 * where t = sum_i (-1)^{r-i} c_i hx^{r-i}.
 */
StandardRing proj_bundle(int r, Prime p, int degree_bound);

/* The ring with no generators. */
StandardRing point(Prime p);

StandardRing tensor(const StandardRing& a, const StandardRing& b, int degree_bound);

/* Builds a presentation from a compact name such as "bmu:2", "elliptic:ordinary:bx", "proj:3". */
StandardRing standard_presentation(const std::string& kind, Prime p, int degree_bound);

}  // namespace steenrod
