#include "steenrod/parse.h"

#include "steenrod/errors.h"

#include <cctype>
#include <utility>

namespace steenrod {

bool OpAtom::operator==(const OpAtom&) const = default;

namespace {

struct Normalized {
    std::string text;
    std::vector<std::size_t> origin;  // byte offset in the input for every output byte, plus one past the end
};

Normalized normalize_with_map(const std::string& in)
{
    Normalized out;
    enum class Run { none, super, sub } run = Run::none;
    auto emit = [&](const std::string& s, std::size_t at) {
        for (char c : s) {
            out.text += c;
            out.origin.push_back(at);
        }
    };
    std::size_t i = 0;
    while (i < in.size()) {
        const auto b0 = static_cast<unsigned char>(in[i]);
        const auto b1 = i + 1 < in.size() ? static_cast<unsigned char>(in[i + 1]) : 0u;
        const auto b2 = i + 2 < in.size() ? static_cast<unsigned char>(in[i + 2]) : 0u;
        int super = -1, sub = -1;
        std::string replacement;
        std::size_t len = 1;
        if (b0 == 0xC2 && (b1 == 0xB2 || b1 == 0xB3)) {
            super = b1 - 0xB0;
            len = 2;
        }
        else if (b0 == 0xC2 && b1 == 0xB9) {
            super = 1;
            len = 2;
        }
        else if (b0 == 0xE2 && b1 == 0x81 && (b2 == 0xB0 || (b2 >= 0xB4 && b2 <= 0xB9))) {
            super = b2 - 0xB0;
            len = 3;
        }
        else if (b0 == 0xE2 && b1 == 0x82 && b2 >= 0x80 && b2 <= 0x89) {
            sub = b2 - 0x80;
            len = 3;
        }
        else if (b0 == 0xCE && b1 == 0xB2) {
            replacement = "beta";
            len = 2;
        }
        else if (b0 == 0xE2 && b1 == 0x88 && b2 == 0x92) {
            replacement = "-";
            len = 3;
        }
        else if ((b0 == 0xE2 && b1 == 0x88 && b2 == 0x98) || (b0 == 0xE2 && b1 == 0x8B && b2 == 0x85)) {
            replacement = " ";
            len = 3;
        }
        else if (b0 == 0xC2 && b1 == 0xB7) {
            replacement = " ";
            len = 2;
        }

        if (super >= 0) {
            if (run != Run::super)
                emit("^", i);
            emit(std::string(1, char('0' + super)), i);
            run = Run::super;
        }
        else if (sub >= 0) {
            if (run != Run::sub)
                emit("_", i);
            emit(std::string(1, char('0' + sub)), i);
            run = Run::sub;
        }
        else {
            emit(replacement.empty() ? std::string(1, in[i]) : replacement, i);
            run = Run::none;
        }
        i += len;
    }
    out.origin.push_back(in.size());
    return out;
}

class Cursor {
public:
    explicit Cursor(const std::string& text) : n_(normalize_with_map(text)) {}

    void skip_ws()
    {
        while (pos_ < n_.text.size() && std::isspace(static_cast<unsigned char>(n_.text[pos_])))
            ++pos_;
    }
    bool at_end()
    {
        skip_ws();
        return pos_ >= n_.text.size();
    }
    char peek()
    {
        skip_ws();
        return pos_ < n_.text.size() ? n_.text[pos_] : '\0';
    }
    bool starts_with(const std::string& s)
    {
        skip_ws();
        return n_.text.compare(pos_, s.size(), s) == 0;
    }
    bool accept(const std::string& s)
    {
        if (!starts_with(s))
            return false;
        pos_ += s.size();
        return true;
    }
    void expect(const std::string& s)
    {
        if (!accept(s))
            fail("unexpected " + describe(), {"'" + s + "'"});
    }
    std::size_t offset()
    {
        skip_ws();
        return n_.origin[pos_];
    }
    std::size_t raw_pos() const { return pos_; }
    std::size_t origin(std::size_t raw) const { return n_.origin[raw]; }

    int64_t integer(int64_t limit)
    {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ >= n_.text.size() || !std::isdigit(static_cast<unsigned char>(n_.text[pos_])))
            fail("unexpected " + describe(), {"integer"});
        int64_t v = 0;
        while (pos_ < n_.text.size() && std::isdigit(static_cast<unsigned char>(n_.text[pos_]))) {
            v = v * 10 + (n_.text[pos_] - '0');
            if (v > limit)
                throw ParseError("integer too large (limit " + std::to_string(limit) + ")", n_.origin[start], {});
            ++pos_;
        }
        return v;
    }

    std::string identifier()
    {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < n_.text.size() &&
               (std::isalnum(static_cast<unsigned char>(n_.text[pos_])) || n_.text[pos_] == '_'))
            ++pos_;
        return n_.text.substr(start, pos_ - start);
    }

    std::string describe()
    {
        skip_ws();
        if (pos_ >= n_.text.size())
            return "end of input";
        return "'" + std::string(1, n_.text[pos_]) + "'";
    }

    [[noreturn]] void fail(const std::string& message, std::vector<std::string> expected)
    {
        throw ParseError(message, offset(), std::move(expected));
    }

    [[noreturn]] void fail_at(std::size_t raw, const std::string& message)
    {
        throw ParseError(message, n_.origin[raw], {});
    }

private:
    Normalized n_;
    std::size_t pos_ = 0;
};

constexpr int64_t kIndexLimit = 100000;
constexpr int64_t kCoefficientLimit = int64_t(1) << 40;

const std::vector<std::string> kAtomStarts{"P^", "B^", "Sq^", "beta", "Q_", "("};

/* ---------------- operations ---------------- */

OpExpression parse_op_expr(Cursor& c, Prime p, int depth);

bool atom_ahead(Cursor& c)
{
    for (const auto& s : kAtomStarts)
        if (c.starts_with(s))
            return true;
    return false;
}

int64_t braced_index(Cursor& c)
{
    bool brace = c.accept("{");
    int64_t v = c.integer(kIndexLimit);
    if (brace)
        c.expect("}");
    return v;
}

OpAtom parse_atom(Cursor& c, Prime p, int depth)
{
    OpAtom a;
    c.skip_ws();
    std::size_t start = c.raw_pos();
    if (c.accept("Sq^")) {
        a.kind = OpAtom::Kind::sq;
        a.index = int(braced_index(c));
        if (p.value() != 2)
            c.fail_at(start, "Sq^n is only defined for p = 2");
    }
    else if (c.accept("P^")) {
        a.kind = OpAtom::Kind::power;
        a.index = int(braced_index(c));
    }
    else if (c.accept("B^")) {
        a.kind = OpAtom::Kind::bockstein_power;
        a.index = int(braced_index(c));
    }
    else if (c.accept("beta")) {
        a.kind = OpAtom::Kind::beta;
    }
    else if (c.accept("Q_")) {
        a.kind = OpAtom::Kind::milnor;
        a.index = int(braced_index(c));
        if (a.index > 16)
            c.fail_at(start, "Milnor index too large");
    }
    else if (c.accept("(")) {
        if (depth > 64)
            c.fail_at(start, "expression nested too deeply");
        a.kind = OpAtom::Kind::group;
        a.group.push_back(parse_op_expr(c, p, depth + 1));
        c.expect(")");
    }
    else {
        c.fail("unexpected " + c.describe(), kAtomStarts);
    }
    return a;
}

OpTerm parse_op_term(Cursor& c, Prime p, int depth, bool negative)
{
    OpTerm t;
    t.negative = negative;
    if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
        t.explicit_coefficient = true;
        t.coefficient = c.integer(kCoefficientLimit);
    }
    while (atom_ahead(c))
        t.atoms.push_back(parse_atom(c, p, depth));
    if (!t.explicit_coefficient && t.atoms.empty()) {
        std::vector<std::string> expected{"integer"};
        expected.insert(expected.end(), kAtomStarts.begin(), kAtomStarts.end());
        c.fail("unexpected " + c.describe(), expected);
    }
    return t;
}

OpExpression parse_op_expr(Cursor& c, Prime p, int depth)
{
    OpExpression e;
    bool negative = c.accept("-");
    e.terms.push_back(parse_op_term(c, p, depth, negative));
    for (;;) {
        if (c.accept("+"))
            e.terms.push_back(parse_op_term(c, p, depth, false));
        else if (c.accept("-"))
            e.terms.push_back(parse_op_term(c, p, depth, true));
        else
            break;
    }
    return e;
}

std::string print_atom(const OpAtom& a)
{
    switch (a.kind) {
    case OpAtom::Kind::power:
        return "P^" + std::to_string(a.index);
    case OpAtom::Kind::bockstein_power:
        return "B^" + std::to_string(a.index);
    case OpAtom::Kind::sq:
        return "Sq^" + std::to_string(a.index);
    case OpAtom::Kind::beta:
        return "beta";
    case OpAtom::Kind::milnor:
        return "Q_" + std::to_string(a.index);
    case OpAtom::Kind::group:
        return "(" + print(a.group.at(0)) + ")";
    }
    return "";
}

OpElement evaluate_atom(const OpAtom& a, Prime p)
{
    switch (a.kind) {
    case OpAtom::Kind::power:
        return a.index ? OpElement::power(a.index, p) : OpElement::identity(p);
    case OpAtom::Kind::bockstein_power:
        return a.index ? OpElement::monomial({kBeta, a.index}, p) : OpElement::beta(p);
    case OpAtom::Kind::sq:
        return sq(a.index, p);
    case OpAtom::Kind::beta:
        return OpElement::beta(p);
    case OpAtom::Kind::milnor:
        return milnor_q(a.index, p);
    case OpAtom::Kind::group:
        return evaluate(a.group.at(0), p);
    }
    return OpElement(p);
}

/* ---------------- classes ---------------- */

RingElement parse_class_expr(Cursor& c, const PresentationPtr& pres, int depth);

bool factor_ahead(Cursor& c)
{
    char ch = c.peek();
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '(';
}

RingElement parse_factor(Cursor& c, const PresentationPtr& pres, int depth)
{
    const Prime p = pres->prime();
    char ch = c.peek();
    RingElement base(pres);
    if (std::isdigit(static_cast<unsigned char>(ch))) {
        return RingElement::scalar(pres, Fp(c.integer(kCoefficientLimit), p));
    }
    if (ch == '(') {
        c.skip_ws();
        std::size_t start = c.raw_pos();
        c.expect("(");
        if (depth > 64)
            c.fail_at(start, "expression nested too deeply");
        base = parse_class_expr(c, pres, depth + 1);
        c.expect(")");
    }
    else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        c.skip_ws();
        std::size_t start = c.raw_pos();
        std::string name = c.identifier();
        auto index = pres->index_of(name);
        if (!index) {
            std::vector<std::string> names;
            for (const auto& g : pres->generators())
                names.push_back(g.name);
            throw ParseError("unknown generator '" + name + "'", c.origin(start), names);
        }
        base = RingElement::generator(pres, *index);
    }
    else {
        c.fail("unexpected " + c.describe(), {"integer", "generator", "'('"});
    }
    if (c.accept("^")) {
        bool brace = c.accept("{");
        int64_t e = c.integer(4096);
        if (brace)
            c.expect("}");
        base = base.pow(unsigned(e));
    }
    return base;
}

RingElement parse_class_term(Cursor& c, const PresentationPtr& pres, int depth)
{
    RingElement t = parse_factor(c, pres, depth);
    for (;;) {
        if (c.accept("*"))
            t = t * parse_factor(c, pres, depth);
        else if (factor_ahead(c))
            t = t * parse_factor(c, pres, depth);
        else
            break;
    }
    return t;
}

RingElement parse_class_expr(Cursor& c, const PresentationPtr& pres, int depth)
{
    bool negative = c.accept("-");
    if (!negative)
        c.accept("+");
    RingElement e = parse_class_term(c, pres, depth);
    if (negative)
        e = -e;
    for (;;) {
        if (c.accept("+"))
            e += parse_class_term(c, pres, depth);
        else if (c.accept("-"))
            e += -parse_class_term(c, pres, depth);
        else
            break;
    }
    return e;
}

}  // namespace

std::string normalize_unicode(const std::string& text)
{
    return normalize_with_map(text).text;
}

OpExpression parse_operation(const std::string& text, Prime p)
{
    Cursor c(text);
    OpExpression e = parse_op_expr(c, p, 0);
    if (!c.at_end())
        c.fail("unexpected " + c.describe(), {"'+'", "'-'", "end of input"});
    return e;
}

std::string print(const OpExpression& e)
{
    std::string s;
    for (std::size_t i = 0; i < e.terms.size(); ++i) {
        const OpTerm& t = e.terms[i];
        if (i == 0)
            s += t.negative ? "-" : "";
        else
            s += t.negative ? " - " : " + ";
        std::string body;
        if (t.explicit_coefficient)
            body = std::to_string(t.coefficient);
        for (const auto& a : t.atoms) {
            if (!body.empty())
                body += ' ';
            body += print_atom(a);
        }
        s += body;
    }
    return s;
}

OpElement evaluate(const OpExpression& e, Prime p)
{
    OpElement total(p);
    for (const auto& t : e.terms) {
        OpElement v = OpElement::identity(p);
        for (const auto& a : t.atoms)
            v = multiply(v, evaluate_atom(a, p));
        Fp c = Fp(t.coefficient, p);
        total = total + v.scaled(t.negative ? -c : c);
    }
    return total;
}

RingElement parse_class(const std::string& text, const PresentationPtr& pres)
{
    Cursor c(text);
    RingElement e = parse_class_expr(c, pres, 0);
    if (!c.at_end())
        c.fail("unexpected " + c.describe(), {"'+'", "'-'", "'*'", "end of input"});
    return e;
}

}  // namespace steenrod
