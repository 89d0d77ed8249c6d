#pragma once

#include "steenrod/bidegree.h"
#include "steenrod/fp.h"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace steenrod {

/*
 * A monomial word in the Bockstein and the power operations.
 *
 * Letters are stored in written order: the leftmost letter is applied last.
 * Letter 0 is the Bockstein, letter i > 0 is P^i. B^i is the two-letter word {0, i}.
 */
using Word = std::vector<int>;

constexpr int kBeta = 0;

Bidegree letter_bidegree(int letter, int p);
Bidegree bidegree(const Word& word, int p);

/* Validates letters; nullopt when two Bocksteins are adjacent (the word is zero).
   P^0 is the identity and is never stored as a letter. */
std::optional<Word> reduce_word(const Word& word);

/* Canonical order: (t, w, length, letters) with beta < P^1 < P^2 < ... */
struct WordOrder {
    int p;
    bool operator()(const Word& a, const Word& b) const;
};

bool is_admissible(const Word& word, int p);

std::string word_to_string(const Word& word);

/* An F_p-linear combination of words, kept in canonical order with nonzero coefficients. */
class OpElement {
public:
    using Terms = std::map<Word, uint32_t, WordOrder>;

    explicit OpElement(Prime p) : p_(p), terms_(WordOrder{p.value()}) {}

    static OpElement identity(Prime p) { return monomial({}, p); }
    static OpElement monomial(const Word& word, Prime p, int64_t coefficient = 1);
    static OpElement power(int i, Prime p) { return monomial({i}, p); }
    static OpElement beta(Prime p) { return monomial({kBeta}, p); }

    Prime prime() const { return p_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    /* Adds c * word; words containing beta beta are dropped. */
    void add(const Word& word, Fp c);

    OpElement operator+(const OpElement& o) const;
    OpElement operator-(const OpElement& o) const;
    OpElement operator-() const;
    OpElement scaled(Fp c) const;
    bool operator==(const OpElement& o) const { return p_ == o.p_ && terms_ == o.terms_; }

    /* Bidegree when every term shares one; nullopt for zero or inhomogeneous elements. */
    std::optional<Bidegree> homogeneous_degree() const;

    std::string to_string() const;

private:
    Prime p_;
    Terms terms_;
};

/* Sq^{2i} = P^i, Sq^{2i+1} = beta P^i. Only for p = 2. */
OpElement sq(int n, Prime p);

/* Right-hand side of the Adem relation for P^a P^b, 0 < a < p b. */
OpElement adem_pp(int a, int b, Prime p);
/* Right-hand side of the Adem relation for P^a beta P^b, 0 < a <= p b. */
OpElement adem_pb(int a, int b, Prime p);

/* Rewrite every word to admissible form with the Adem relations and beta^2 = 0. */
OpElement rewrite_to_admissible(const OpElement& e);

/* Composition e1 o e2, reduced to admissible form. */
OpElement multiply(const OpElement& e1, const OpElement& e2);

/* Element of a tensor power of the algebra; legs are admissible words. */
class TensorElement {
public:
    using Key = std::vector<Word>;
    struct KeyOrder {
        int p;
        bool operator()(const Key& a, const Key& b) const;
    };
    using Terms = std::map<Key, uint32_t, KeyOrder>;

    TensorElement(Prime p, std::size_t arity) : p_(p), arity_(arity), terms_(KeyOrder{p.value()}) {}

    Prime prime() const { return p_; }
    std::size_t arity() const { return arity_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const Key& key, Fp c);
    bool operator==(const TensorElement& o) const { return arity_ == o.arity_ && terms_ == o.terms_; }
    std::string to_string() const;

private:
    Prime p_;
    std::size_t arity_;
    Terms terms_;
};

/* Cartan coproduct, extended multiplicatively with the Koszul sign; legs rewritten to admissible form. */
TensorElement coproduct(const OpElement& e);
/* Apply the coproduct to one leg of a tensor, producing arity + 1 legs. */
TensorElement coproduct_on_leg(const TensorElement& x, std::size_t leg);
/* Apply the counit to one leg, producing arity - 1 legs. */
TensorElement counit_on_leg(const TensorElement& x, std::size_t leg);
TensorElement as_tensor(const OpElement& e);

/* Milnor primitive: Q_0 = beta, Q_{k+1} = P^{p^k} Q_k - Q_k P^{p^k}. */
OpElement milnor_q(int n, Prime p);
/*
 * q_n beta - beta q_n with q_n the composite P^{p^{n-1}} ... P^p P^1.
 * Agrees with milnor_q for n <= 1 only; for n >= 2 it is not primitive.
 */
OpElement milnor_q_composite(int n, Prime p);

/* Admissible words of topological degree <= max_t, canonical order. */
std::vector<Word> admissible_basis(int max_t, Prime p);
/* Admissible words of exactly topological degree t, canonical order. */
std::vector<Word> admissible_basis_in_degree(int t, Prime p);

/* Number of monomials in the tau_i, zeta_j of the dual algebra with the given bidegree. */
uint64_t milnor_monomial_count(Bidegree d, Prime p);

/* Memo of Adem expansions, shared across threads; used by the table cache. */
struct AdemKey {
    int p;
    char kind;  // 'P' for P^a P^b, 'B' for P^a beta P^b
    int a, b;
    auto operator<=>(const AdemKey&) const = default;
};
std::map<AdemKey, std::vector<std::pair<Word, uint32_t>>> adem_memo_snapshot();
void adem_memo_insert(const AdemKey& key, const std::vector<std::pair<Word, uint32_t>>& terms);
void adem_memo_clear();
/* Uncached evaluation of an Adem expansion; the cache uses it to audit entries. */
std::vector<std::pair<Word, uint32_t>> adem_expansion(const AdemKey& key);

}  // namespace steenrod
