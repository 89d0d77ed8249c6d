#pragma once

#include "steenrod/operation.h"
#include "steenrod/poly.h"
#include "steenrod/presentations.h"

#include <string>
#include <vector>

namespace steenrod {

/* Variable weights for roots a1..am (all 1) and for Chern classes c1..cr (weight i). */
std::vector<int> root_weights(int m);
std::vector<int> chern_weights(int r);
std::vector<std::string> root_names(int m);
std::vector<std::string> chern_names(int r);

/* e_k(a_1, ..., a_m) as a polynomial in the roots. */
Poly elementary_symmetric(int k, int m, Prime p);

/* A polynomial in m root variables, checked to be symmetric on construction. */
class SymmetricPoly {
public:
    SymmetricPoly(Poly poly, int m);
    const Poly& poly() const { return poly_; }
    int roots() const { return m_; }

private:
    Poly poly_;
    int m_;
};

/* A polynomial in c1..cr truncated at a root weight (c_i has weight i, topological degree 2i). */
class ChernSeries {
public:
    ChernSeries(Poly poly, int truncation);
    const Poly& poly() const { return poly_; }
    int rank() const { return int(poly_.nvars()); }
    int truncation() const { return truncation_; }
    bool operator==(const ChernSeries& o) const { return poly_ == o.poly_ && truncation_ == o.truncation_; }
    std::string to_string() const;

private:
    Poly poly_;
    int truncation_;
};

/* Rewrite a symmetric polynomial in the elementary symmetric polynomials, e_i -> c_i. */
ChernSeries elementary_expand(const SymmetricPoly& s);

/* Substitute c_i = e_i(a_1..a_m); classes c_i with i > m become 0. */
Poly chern_to_roots(const Poly& chern, int m);

/*
 * Apply an operation to a polynomial whose weight-1 variables are Chern roots (beta = 0,
 * P(a) = a + a^p); weight-0 variables are treated as scalars.
 */
Poly act_on_roots(const OpElement& op, const Poly& roots_poly);

/*
 * Apply an operation to a polynomial in c1..cr through m roots, re-expanded in c1..cm.
 * With require_stable, m must be at least the root degree of the result.
 */
ChernSeries act_on_chern(const OpElement& op, const Poly& chern, int m, bool require_stable = true);

/* A formal sum of bundles with signs; each summand has its own block of Chern classes. */
struct VirtualBundle {
    struct Summand {
        int rank;
        bool negative;
    };
    std::vector<Summand> summands;

    std::vector<int> weights() const;
    std::vector<std::string> names() const;
};

/* Total Stiefel-Whitney class from roots: prod (1 + a^{p-1}), truncated at the given root weight. */
Poly total_sw(const VirtualBundle& e, Prime p, int truncation);

/* w_j of a rank-r bundle as t^{-1} P^j(t) in the Thom model. */
ChernSeries sw_class(int j, int r, Prime p);
/* w_j of a rank-r bundle from the root expansion. */
ChernSeries sw_class_roots(int j, int r, Prime p);

/*
 * Product over the roots of psi(a)/a for a one-variable series psi with zero constant term and
 * unit linear coefficient, expanded in Chern classes; minus summands use the series inverse.
 */
Poly todd_inverse(const Poly& psi, const VirtualBundle& e, int truncation);

struct ThomModel {
    int rank;
    StandardRing ring;
};

ThomModel thom_model(int r, Prime p, int degree_bound);
RingElement thom_class(const ThomModel& model);

/* Convert a polynomial in c1..cr into the Chern classes of a ring that names them c1..cr. */
RingElement chern_poly_to_ring(const Poly& chern, const PresentationPtr& pres);

/* Pushforward to the point: coefficient of h^n. */
Fp pushforward_proj(int n, const RingElement& x);
/* i_!(z) = z t. */
RingElement pushforward_zero_section(const RingElement& z, const ThomModel& model);

struct WuReport {
    bool equal = false;
    std::string lhs;
    std::string rhs;
    std::string class_text;
};

/* P(p_!(x)) against p_!(w * P(x)) for P^n -> point, w = w(T)^{-1}. */
WuReport verify_wu_proj(int n, const RingElement& x);
/* P(i_!(z)) against i_!(w(N) P(z)) for the zero section of a rank-r bundle. */
WuReport verify_wu_zero(const ThomModel& model, const RingElement& z);

}  // namespace steenrod
