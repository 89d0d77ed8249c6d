#pragma once

#include "steenrod/operation.h"
#include "steenrod/ring.h"

#include <cstdint>
#include <string>
#include <vector>

namespace steenrod {

struct OpExpression;

struct OpAtom {
    enum class Kind { power, bockstein_power, sq, beta, milnor, group };
    Kind kind = Kind::beta;
    int index = 0;
    std::vector<OpExpression> group;  // exactly one element for Kind::group
    bool operator==(const OpAtom&) const;
};

struct OpTerm {
    bool negative = false;
    bool explicit_coefficient = false;
    int64_t coefficient = 1;
    std::vector<OpAtom> atoms;  // composed left to right, leftmost outermost
    bool operator==(const OpTerm&) const = default;
};

struct OpExpression {
    std::vector<OpTerm> terms;
    bool operator==(const OpExpression&) const = default;
};

/* Replace beta, superscript and subscript digits, the minus sign and composition dots with ASCII. */
std::string normalize_unicode(const std::string& text);

/*
 * expr := term (('+' | '-') term)*, term := int? atom+ | int,
 * atom := P^n | B^n | Sq^n | beta | Q_n | (expr). Sq^n is rejected unless p = 2.
 */
OpExpression parse_operation(const std::string& text, Prime p);
std::string print(const OpExpression& e);
OpElement evaluate(const OpExpression& e, Prime p);

/* Sums of integer multiples of monomials in generator names: "v1*u2*x - u1 v2 x + 2 y^3". */
RingElement parse_class(const std::string& text, const PresentationPtr& pres);

}  // namespace steenrod
