#include "steenrod/ring.h"

#include "steenrod/errors.h"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

namespace steenrod {

namespace {

constexpr std::size_t kReductionBudget = 10'000'000;

Fp sign(bool negative, Prime p)
{
    return Fp(negative ? -1 : 1, p);
}

bool divides(const Monomial& a, const Monomial& m)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > m[i])
            return false;
    return true;
}

Monomial difference(const Monomial& m, const Monomial& a)
{
    Monomial r = m;
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = uint16_t(r[i] - a[i]);
    return r;
}

Monomial sum(const Monomial& a, const Monomial& b)
{
    Monomial r = a;
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (int(r[i]) + b[i] > 0xffff)
            throw InvalidInput("exponent overflow");
        r[i] = uint16_t(r[i] + b[i]);
    }
    return r;
}

bool valid_name(const std::string& s)
{
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
        return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

}  // namespace

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const
{
    Bidegree da = pres->degree(a), db = pres->degree(b);
    if (da != db)
        return da < db;
    return a > b;
}

PresentationPtr RingPresentation::create(Prime p, std::vector<GeneratorSpec> generators,
                                         std::vector<Relation> relations, int degree_bound, std::optional<int> window)
{
    std::shared_ptr<RingPresentation> pres(
        new RingPresentation(p, std::move(generators), std::move(relations), degree_bound, window));
    pres->validate();
    pres->check_confluence();
    return pres;
}

RingPresentation::RingPresentation(Prime p, std::vector<GeneratorSpec> generators, std::vector<Relation> relations,
                                   int degree_bound, std::optional<int> window)
    : p_(p), gens_(std::move(generators)), rels_(std::move(relations)), degree_bound_(degree_bound), window_(window)
{
}

void RingPresentation::validate() const
{
    if (degree_bound_ < 0)
        throw InvalidInput("degree_bound must be nonnegative");
    std::set<std::string> names;
    for (const auto& g : gens_) {
        if (!valid_name(g.name))
            throw InvalidInput("invalid generator name '" + g.name + "'");
        if (!names.insert(g.name).second)
            throw InvalidInput("duplicate generator name '" + g.name + "'");
        if (g.degree.t <= 0)
            throw InvalidInput("generator '" + g.name + "' must have positive topological degree");
        if (g.kind == GeneratorKind::nilpotent && g.order < 1)
            throw InvalidInput("nilpotent generator '" + g.name + "' needs order >= 1");
        if (g.kind == GeneratorKind::polynomial && g.degree.t % 2 && p_.value() != 2)
            throw InvalidInput("odd-degree generator '" + g.name + "' must be exterior or nilpotent for odd p");
    }
    for (const auto& r : rels_) {
        if (r.lhs.size() != gens_.size())
            throw InvalidInput("relation has the wrong number of exponents");
        if (r.lhs == unit())
            throw InvalidInput("relation left-hand side must be a nonconstant monomial");
        if (kind_zero(r.lhs))
            throw InvalidInput("relation left-hand side " + monomial_to_string(r.lhs) + " is already zero");
        for (const auto& [m, c] : r.rhs) {
            if (m.size() != gens_.size())
                throw InvalidInput("relation has the wrong number of exponents");
            if (degree(m) != degree(r.lhs))
                throw InvalidInput("relation " + monomial_to_string(r.lhs) + " is not homogeneous");
            if (m == r.lhs)
                throw InvalidInput("relation " + monomial_to_string(r.lhs) + " rewrites to itself");
        }
    }
}

std::optional<std::size_t> RingPresentation::index_of(const std::string& name) const
{
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].name == name)
            return i;
    return std::nullopt;
}

std::size_t RingPresentation::require_index(const std::string& name) const
{
    auto i = index_of(name);
    if (!i)
        throw InvalidInput("unknown generator '" + name + "'");
    return *i;
}

Bidegree RingPresentation::degree(const Monomial& m) const
{
    Bidegree d;
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i])
            d += Bidegree{gens_[i].degree.t * m[i], gens_[i].degree.w * m[i]};
    return d;
}

Monomial RingPresentation::generator_monomial(std::size_t i) const
{
    Monomial m = unit();
    m.at(i) = 1;
    return m;
}

bool RingPresentation::merge_is_negative(const Monomial& a, const Monomial& b) const
{
    /* moving each odd factor of b left past the odd factors of a with larger index */
    unsigned parity = 0, odd_b_before = 0;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        if (gens_[i].degree.t % 2 == 0)
            continue;
        parity ^= (a[i] & 1u) & (odd_b_before & 1u);
        odd_b_before += b[i];
    }
    return parity & 1u;
}

bool RingPresentation::kind_zero(const Monomial& m) const
{
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        const auto& g = gens_[i];
        if (g.kind == GeneratorKind::exterior && m[i] >= 2)
            return true;
        if (g.kind == GeneratorKind::nilpotent && m[i] >= g.order)
            return true;
        /* odd classes square to zero by graded commutativity unless p = 2 */
        if (g.degree.t % 2 && p_.value() != 2 && m[i] >= 2)
            return true;
    }
    return false;
}

bool RingPresentation::is_normal(const Monomial& m) const
{
    if (kind_zero(m))
        return false;
    for (const auto& r : rels_)
        if (divides(r.lhs, m))
            return false;
    return true;
}

void RingPresentation::accumulate(const Monomial& m, Fp c, RingTerms& out, bool& truncated) const
{
    std::size_t budget = kReductionBudget;
    reduce_into(m, c, out, truncated, budget);
}

void RingPresentation::reduce_into(const Monomial& m, Fp c, RingTerms& out, bool& truncated,
                                   std::size_t& budget) const
{
    if (c.is_zero())
        return;
    if (budget-- == 0)
        throw InvalidInput("relations do not terminate");
    const int t = degree(m).t;
    if (window_ && t >= *window_)
        throw WindowExceeded("monomial " + monomial_to_string(m) + " of degree " + std::to_string(t) +
                             " is outside the window (degree < " + std::to_string(*window_) + ")");
    if (kind_zero(m))
        return;
    if (t > degree_bound_) {
        truncated = true;
        return;
    }
    for (const auto& r : rels_) {
        if (!divides(r.lhs, m))
            continue;
        Monomial rest = difference(m, r.lhs);
        Fp base = c * sign(merge_is_negative(r.lhs, rest), p_);
        for (const auto& [rm, rc] : r.rhs)
            reduce_into(sum(rm, rest), base * Fp(rc, p_) * sign(merge_is_negative(rm, rest), p_), out, truncated,
                        budget);
        return;
    }
    auto [it, inserted] = out.try_emplace(m, c.value());
    if (!inserted) {
        Fp s = Fp(it->second, p_) + c;
        if (s.is_zero())
            out.erase(it);
        else
            it->second = s.value();
    }
}

void RingPresentation::check_confluence() const
{
    auto top_step = [&](const Relation& r, const Monomial& m) {
        RingTerms out = empty_terms();
        bool truncated = false;
        Monomial rest = difference(m, r.lhs);
        Fp base = sign(merge_is_negative(r.lhs, rest), p_);
        for (const auto& [rm, rc] : r.rhs)
            accumulate(sum(rm, rest), base * Fp(rc, p_) * sign(merge_is_negative(rm, rest), p_), out, truncated);
        return out;
    };
    auto in_range = [&](const Monomial& m) {
        int t = degree(m).t;
        return t <= degree_bound_ && !(window_ && t >= *window_);
    };
    for (std::size_t i = 0; i < rels_.size(); ++i) {
        const auto& ri = rels_[i];
        /* overlaps with the exterior and nilpotent rules */
        for (std::size_t g = 0; g < gens_.size(); ++g) {
            if (!ri.lhs[g])
                continue;
            int limit = 0;
            if (gens_[g].kind == GeneratorKind::exterior || (gens_[g].degree.t % 2 && p_.value() != 2))
                limit = 2;
            else if (gens_[g].kind == GeneratorKind::nilpotent)
                limit = gens_[g].order;
            if (!limit)
                continue;
            Monomial l = ri.lhs;
            l[g] = uint16_t(limit);
            if (in_range(l) && !top_step(ri, l).empty())
                throw InvalidInput("relations are not confluent at " + monomial_to_string(l));
        }
        for (std::size_t j = i + 1; j < rels_.size(); ++j) {
            const auto& rj = rels_[j];
            bool share = false;
            Monomial l = ri.lhs;
            for (std::size_t g = 0; g < gens_.size(); ++g) {
                share = share || (ri.lhs[g] && rj.lhs[g]);
                l[g] = std::max(ri.lhs[g], rj.lhs[g]);
            }
            if (!share || !in_range(l))
                continue;
            if (top_step(ri, l) != top_step(rj, l))
                throw InvalidInput("relations are not confluent at " + monomial_to_string(l));
        }
    }
}

void RingPresentation::enumerate(int max_t, std::optional<Bidegree> exact, std::vector<Monomial>& out) const
{
    Monomial m = unit();
    std::function<void(std::size_t, int)> go = [&](std::size_t i, int t) {
        if (i == gens_.size()) {
            if (exact && degree(m) != *exact)
                return;
            if (is_normal(m))
                out.push_back(m);
            return;
        }
        const auto& g = gens_[i];
        int cap = 0xffff;
        if (g.kind == GeneratorKind::exterior)
            cap = 1;
        else if (g.kind == GeneratorKind::nilpotent)
            cap = g.order - 1;
        for (int e = 0; e <= cap && t + e * g.degree.t <= max_t; ++e) {
            m[i] = uint16_t(e);
            go(i + 1, t + e * g.degree.t);
        }
        m[i] = 0;
    };
    go(0, 0);
    std::sort(out.begin(), out.end(), MonomialOrder{this});
}

std::vector<Monomial> RingPresentation::basis_up_to(int max_t) const
{
    if (window_ && max_t >= *window_)
        throw WindowExceeded("basis requested beyond the window");
    if (max_t > degree_bound_)
        throw InvalidInput("basis requested beyond the degree bound");
    std::vector<Monomial> out;
    enumerate(max_t, std::nullopt, out);
    return out;
}

std::vector<Monomial> RingPresentation::basis_in(Bidegree d) const
{
    std::vector<Monomial> out;
    if (d.t < 0 || d.t > degree_bound_ || (window_ && d.t >= *window_))
        return out;
    enumerate(d.t, d, out);
    return out;
}

std::string RingPresentation::monomial_to_string(const Monomial& m) const
{
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (!m[i])
            continue;
        if (!s.empty())
            s += '*';
        s += gens_[i].name;
        if (m[i] > 1)
            s += '^' + std::to_string(m[i]);
    }
    return s.empty() ? "1" : s;
}

/* ---------------- RingElement ---------------- */

RingElement::RingElement(PresentationPtr pres) : pres_(std::move(pres)), terms_(MonomialOrder{pres_.get()})
{
    if (!pres_)
        throw InvalidInput("null presentation");
}

RingElement RingElement::one(PresentationPtr pres)
{
    return scalar(std::move(pres), Fp(1, pres->prime()));
}

RingElement RingElement::scalar(PresentationPtr pres, Fp c)
{
    RingElement e(pres);
    e.add(pres->unit(), c);
    return e;
}

RingElement RingElement::generator(PresentationPtr pres, const std::string& name)
{
    std::size_t i = pres->require_index(name);
    return generator(std::move(pres), i);
}

RingElement RingElement::generator(PresentationPtr pres, std::size_t index)
{
    RingElement e(pres);
    e.add(pres->generator_monomial(index), Fp(1, pres->prime()));
    return e;
}

RingElement RingElement::monomial(PresentationPtr pres, const Monomial& m, int64_t coefficient)
{
    if (m.size() != pres->size())
        throw InvalidInput("monomial has the wrong number of exponents");
    RingElement e(pres);
    e.add(m, Fp(coefficient, pres->prime()));
    return e;
}

void RingElement::add(const Monomial& m, Fp c)
{
    pres_->accumulate(m, c, terms_, truncated_);
}

Fp RingElement::coefficient(const Monomial& m) const
{
    auto it = terms_.find(m);
    return Fp(it == terms_.end() ? 0 : it->second, prime());
}

void RingElement::check_same(const RingElement& o) const
{
    if (pres_ != o.pres_)
        throw InvalidInput("ring elements belong to different presentations");
}

RingElement& RingElement::operator+=(const RingElement& o)
{
    check_same(o);
    const Prime p = prime();
    for (const auto& [m, c] : o.terms_) {
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            Fp s = Fp(it->second, p) + Fp(c, p);
            if (s.is_zero())
                terms_.erase(it);
            else
                it->second = s.value();
        }
    }
    truncated_ = truncated_ || o.truncated_;
    return *this;
}

RingElement RingElement::operator+(const RingElement& o) const
{
    RingElement r = *this;
    r += o;
    return r;
}

RingElement RingElement::operator-(const RingElement& o) const
{
    return *this + (-o);
}

RingElement RingElement::operator-() const
{
    return scaled(Fp(-1, prime()));
}

RingElement RingElement::scaled(Fp c) const
{
    RingElement r(pres_);
    r.truncated_ = truncated_;
    if (c.is_zero())
        return r;
    for (const auto& [m, v] : terms_)
        r.terms_.emplace_hint(r.terms_.end(), m, (Fp(v, prime()) * c).value());
    return r;
}

RingElement RingElement::operator*(const RingElement& o) const
{
    check_same(o);
    RingElement r(pres_);
    r.truncated_ = truncated_ || o.truncated_;
    const Prime p = prime();
    for (const auto& [a, ca] : terms_)
        for (const auto& [b, cb] : o.terms_)
            multiply_monomials(*pres_, a, b, Fp(ca, p) * Fp(cb, p), r.terms_, r.truncated_);
    return r;
}

RingElement RingElement::pow(unsigned n) const
{
    RingElement r = one(pres_);
    for (unsigned i = 0; i < n; ++i)
        r = r * *this;
    return r;
}

bool RingElement::operator==(const RingElement& o) const
{
    return pres_ == o.pres_ && terms_ == o.terms_;
}

std::optional<Bidegree> RingElement::homogeneous_degree() const
{
    if (terms_.empty())
        return std::nullopt;
    Bidegree d = pres_->degree(terms_.begin()->first);
    for (const auto& [m, c] : terms_)
        if (pres_->degree(m) != d)
            return std::nullopt;
    return d;
}

std::string RingElement::to_string() const
{
    if (terms_.empty())
        return "0";
    std::string s;
    for (const auto& [m, c] : terms_) {
        if (!s.empty())
            s += " + ";
        bool unit = std::all_of(m.begin(), m.end(), [](uint16_t e) { return e == 0; });
        if (unit)
            s += std::to_string(c);
        else if (c == 1)
            s += pres_->monomial_to_string(m);
        else
            s += std::to_string(c) + "*" + pres_->monomial_to_string(m);
    }
    return s;
}

void multiply_monomials(const RingPresentation& pres, const Monomial& a, const Monomial& b, Fp c, RingTerms& out,
                        bool& truncated)
{
    Monomial m = a;
    for (std::size_t i = 0; i < b.size(); ++i)
        m[i] = uint16_t(m[i] + b[i]);
    if (pres.merge_is_negative(a, b))
        c = -c;
    pres.accumulate(m, c, out, truncated);
}

PresentationPtr tensor(const RingPresentation& a, const RingPresentation& b, int degree_bound)
{
    if (!(a.prime() == b.prime()))
        throw InvalidInput("tensor factors have different primes");
    std::vector<GeneratorSpec> gens = a.generators();
    gens.insert(gens.end(), b.generators().begin(), b.generators().end());
    const std::size_t na = a.size(), nb = b.size();
    auto pad = [&](const Monomial& m, std::size_t offset) {
        Monomial r(na + nb, 0);
        std::copy(m.begin(), m.end(), r.begin() + offset);
        return r;
    };
    std::vector<Relation> rels;
    for (const auto& [src, offset] : {std::pair{&a, std::size_t(0)}, std::pair{&b, na}})
        for (const auto& r : src->relations()) {
            Relation nr{pad(r.lhs, offset), {}};
            for (const auto& [m, c] : r.rhs)
                nr.rhs.emplace_back(pad(m, offset), c);
            rels.push_back(std::move(nr));
        }
    std::optional<int> window = a.window();
    if (b.window())
        window = window ? std::min(*window, *b.window()) : b.window();
    return RingPresentation::create(a.prime(), std::move(gens), std::move(rels), degree_bound, window);
}

RingElement embed(const RingElement& x, PresentationPtr target, std::size_t offset)
{
    const auto& src = *x.presentation();
    if (offset + src.size() > target->size())
        throw InvalidInput("embedding does not fit the target presentation");
    for (std::size_t i = 0; i < src.size(); ++i) {
        const auto& g = src.generators()[i];
        const auto& h = target->generators()[offset + i];
        if (g.name != h.name || g.degree != h.degree)
            throw InvalidInput("embedding does not match generator '" + g.name + "'");
    }
    RingElement r(target);
    for (const auto& [m, c] : x.terms()) {
        Monomial n = target->unit();
        std::copy(m.begin(), m.end(), n.begin() + offset);
        r.add(n, Fp(c, x.prime()));
    }
    if (x.truncated())
        r.mark_truncated();
    return r;
}

}  // namespace steenrod
