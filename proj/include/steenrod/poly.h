#pragma once

#include "steenrod/fp.h"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace steenrod {

/*
 * Sparse polynomial over F_p in a fixed list of variables.
 * Each variable carries a weight; weighted degree drives truncation.
 */
class Poly {
public:
    using Exps = std::vector<uint16_t>;
    using Terms = std::map<Exps, uint32_t>;

    Poly(Prime p, std::vector<int> weights);

    static Poly constant(Prime p, std::vector<int> weights, int64_t c);
    static Poly variable(Prime p, std::vector<int> weights, std::size_t i);

    Prime prime() const { return p_; }
    const std::vector<int>& weights() const { return weights_; }
    std::size_t nvars() const { return weights_.size(); }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const Exps& e, Fp c);
    Fp coefficient(const Exps& e) const;
    Fp constant_term() const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly scaled(Fp c) const;
    Poly pow(unsigned n) const;
    bool operator==(const Poly& o) const { return weights_ == o.weights_ && terms_ == o.terms_; }

    int weighted_degree(const Exps& e) const;
    /* Largest weighted degree of a term; -1 for zero. */
    int max_degree() const;
    Poly truncated(int max_weight) const;
    Poly homogeneous_part(int weight) const;

    /* Substitute values[i] for variable i; all values share one variable list. */
    Poly substitute(const std::vector<Poly>& values) const;
    /* Inverse of a series with invertible constant term, up to the given weight. */
    Poly series_inverse(int max_weight) const;

    Fp2 evaluate(const std::vector<Fp2>& values) const;

    std::string to_string(const std::vector<std::string>& names) const;

private:
    void check_same(const Poly& o) const;

    Prime p_;
    std::vector<int> weights_;
    Terms terms_;
};

}  // namespace steenrod
