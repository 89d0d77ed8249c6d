#pragma once

#include "steenrod/bidegree.h"
#include "steenrod/fp.h"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace steenrod {

enum class GeneratorKind { polynomial, exterior, nilpotent };

struct GeneratorSpec {
    std::string name;
    Bidegree degree;
    GeneratorKind kind = GeneratorKind::polynomial;
    int order = 0;  // nilpotent only: g^order = 0
};

/* Exponent vector over the generators of a presentation, in generator order. */
using Monomial = std::vector<uint16_t>;

class RingPresentation;

struct MonomialOrder {
    const RingPresentation* pres;
    bool operator()(const Monomial& a, const Monomial& b) const;
};

using RingTerms = std::map<Monomial, uint32_t, MonomialOrder>;

/* Rewrite rule lhs -> rhs; rhs is a list of (monomial, coefficient). */
struct Relation {
    Monomial lhs;
    std::vector<std::pair<Monomial, uint32_t>> rhs;
};

/*
 * A finitely presented bigraded-commutative F_p-algebra, truncated above degree_bound.
 *
 * If window is set, forming any monomial of topological degree >= window throws WindowExceeded
 * instead of truncating.
 */
class RingPresentation {
public:
    static std::shared_ptr<const RingPresentation> create(Prime p, std::vector<GeneratorSpec> generators,
                                                          std::vector<Relation> relations, int degree_bound,
                                                          std::optional<int> window = std::nullopt);

    Prime prime() const { return p_; }
    const std::vector<GeneratorSpec>& generators() const { return gens_; }
    const std::vector<Relation>& relations() const { return rels_; }
    int degree_bound() const { return degree_bound_; }
    std::optional<int> window() const { return window_; }
    std::size_t size() const { return gens_.size(); }

    std::optional<std::size_t> index_of(const std::string& name) const;
    std::size_t require_index(const std::string& name) const;

    Bidegree degree(const Monomial& m) const;
    Monomial unit() const { return Monomial(gens_.size(), 0); }
    Monomial generator_monomial(std::size_t i) const;

    /* Sign s with a * b = s * (a + b) when the factors are sorted into generator order. */
    bool merge_is_negative(const Monomial& a, const Monomial& b) const;
    /* Violates an exterior or nilpotent bound. */
    bool kind_zero(const Monomial& m) const;
    /* Not divisible by any relation left-hand side and not killed by a kind rule. */
    bool is_normal(const Monomial& m) const;

    /*
     * Adds c * m to out after reducing to normal form. Terms above degree_bound are dropped and
     * reported through truncated.
     */
    void accumulate(const Monomial& m, Fp c, RingTerms& out, bool& truncated) const;

    /* Normal monomials of topological degree <= max_t, canonical order. */
    std::vector<Monomial> basis_up_to(int max_t) const;
    /* Normal monomials of exactly the given bidegree. */
    std::vector<Monomial> basis_in(Bidegree d) const;

    std::string monomial_to_string(const Monomial& m) const;

    RingTerms empty_terms() const { return RingTerms(MonomialOrder{this}); }

private:
    RingPresentation(Prime p, std::vector<GeneratorSpec> generators, std::vector<Relation> relations, int degree_bound,
                     std::optional<int> window);
    void validate() const;
    void check_confluence() const;
    void reduce_into(const Monomial& m, Fp c, RingTerms& out, bool& truncated, std::size_t& budget) const;
    void enumerate(int max_t, std::optional<Bidegree> exact, std::vector<Monomial>& out) const;

    Prime p_;
    std::vector<GeneratorSpec> gens_;
    std::vector<Relation> rels_;
    int degree_bound_;
    std::optional<int> window_;
};

using PresentationPtr = std::shared_ptr<const RingPresentation>;

/* Element of a presentation in normal form. */
class RingElement {
public:
    explicit RingElement(PresentationPtr pres);

    static RingElement zero(PresentationPtr pres) { return RingElement(std::move(pres)); }
    static RingElement one(PresentationPtr pres);
    static RingElement generator(PresentationPtr pres, const std::string& name);
    static RingElement generator(PresentationPtr pres, std::size_t index);
    static RingElement monomial(PresentationPtr pres, const Monomial& m, int64_t coefficient = 1);
    static RingElement scalar(PresentationPtr pres, Fp c);

    const PresentationPtr& presentation() const { return pres_; }
    Prime prime() const { return pres_->prime(); }
    const RingTerms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool truncated() const { return truncated_; }
    void mark_truncated() { truncated_ = true; }

    /* Adds c * m, reducing m to normal form. */
    void add(const Monomial& m, Fp c);
    Fp coefficient(const Monomial& m) const;

    RingElement operator+(const RingElement& o) const;
    RingElement operator-(const RingElement& o) const;
    RingElement operator-() const;
    RingElement operator*(const RingElement& o) const;
    RingElement& operator+=(const RingElement& o);
    RingElement scaled(Fp c) const;
    RingElement pow(unsigned n) const;

    /* Structural equality of the terms; the truncation flag is not compared. */
    bool operator==(const RingElement& o) const;

    std::optional<Bidegree> homogeneous_degree() const;
    std::string to_string() const;

private:
    void check_same(const RingElement& o) const;

    PresentationPtr pres_;
    RingTerms terms_;
    bool truncated_ = false;
};

/* Product of monomials in normal form: accumulates c * a * b into out. */
void multiply_monomials(const RingPresentation& pres, const Monomial& a, const Monomial& b, Fp c, RingTerms& out,
                        bool& truncated);

/* Tensor product of presentations; generator names must be disjoint. */
PresentationPtr tensor(const RingPresentation& a, const RingPresentation& b, int degree_bound);

/* Image of an element under the inclusion of a tensor factor, generators shifted by offset. */
RingElement embed(const RingElement& x, PresentationPtr target, std::size_t offset);

}  // namespace steenrod
