#pragma once

#include "steenrod/operation.h"
#include "steenrod/ring.h"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace steenrod {

/*
 * Values of beta and P^i on the generators of a presentation.
 *
 * Anything not listed falls back to the defaults: P^0 = id, P^k(g) = g^p for g of bidegree (2k, k),
 * P^i(g) = 0 when t - w < i and w <= i, and zero when the target bidegree has no basis element.
 * Anything still undetermined is a MissingAction error.
 */
class ActionSpec {
public:
    explicit ActionSpec(PresentationPtr pres);

    const PresentationPtr& presentation() const { return pres_; }

    void set_beta(const std::string& generator, const RingElement& value);
    void set_power(const std::string& generator, int i, const RingElement& value);
    /* P^i(g) = 0 for every i >= 1. */
    void set_powers_vanish(const std::string& generator);

    const std::optional<RingElement>& beta_of(std::size_t g) const { return beta_[g]; }
    const std::map<std::pair<std::size_t, int>, RingElement>& power_table() const { return power_; }
    bool powers_vanish(std::size_t g) const { return vanish_.count(g) > 0; }

    /* Resolved value of beta or P^i on one generator; truncated is set when the target is past the bound. */
    RingElement beta_on_generator(std::size_t g, bool& truncated) const;
    RingElement power_on_generator(std::size_t g, int i, bool& truncated) const;

private:
    void check_value(std::size_t g, Bidegree shift, const RingElement& value, const std::string& what) const;
    bool target_empty(Bidegree target, bool& truncated) const;

    PresentationPtr pres_;
    std::vector<std::optional<RingElement>> beta_;
    std::map<std::pair<std::size_t, int>, RingElement> power_;
    std::set<std::size_t> vanish_;
};

struct ActionResult {
    RingElement value;
    bool truncated = false;
};

/*
 * Applies letters to ring elements, memoizing letter values on monomials.
 * One evaluator serves one spec; it is not thread safe.
 */
class ActionEvaluator {
public:
    explicit ActionEvaluator(const ActionSpec& spec);

    RingElement letter(int letter, const RingElement& y);
    RingElement word(const Word& w, const RingElement& x);
    RingElement element(const OpElement& op, const RingElement& x);
    bool truncated() const { return truncated_; }

private:
    const RingElement& on_monomial(int letter, const Monomial& m);
    const RingElement& on_generator(int letter, std::size_t g);

    const ActionSpec& spec_;
    std::map<std::pair<int, Monomial>, RingElement> memo_;
    std::map<std::pair<int, std::size_t>, RingElement> generator_memo_;
    bool truncated_ = false;
};

ActionResult apply_operation(const OpElement& op, const RingElement& x, const ActionSpec& spec);

/* Sum of P^n(x) and B^n(x) = beta P^n(x) over all n. */
ActionResult total_power(const RingElement& x, const ActionSpec& spec);

/* Q_n(x) via the derivation law on monomials; agrees with apply_operation(milnor_q(n), x). */
ActionResult milnor_apply(int n, const RingElement& x, const ActionSpec& spec);

/* Action on the tensor product: factor tables embedded side by side. */
ActionSpec tensor(const ActionSpec& a, const ActionSpec& b, PresentationPtr product);

}  // namespace steenrod
