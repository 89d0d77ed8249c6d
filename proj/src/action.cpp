#include "steenrod/action.h"

#include "steenrod/errors.h"

#include <functional>

namespace steenrod {

namespace {

bool is_unit(const Monomial& m)
{
    for (auto e : m)
        if (e)
            return false;
    return true;
}

}  // namespace

ActionSpec::ActionSpec(PresentationPtr pres) : pres_(std::move(pres)), beta_(pres_->size())
{
}

void ActionSpec::check_value(std::size_t g, Bidegree shift, const RingElement& value, const std::string& what) const
{
    if (value.presentation() != pres_)
        throw InvalidInput(what + " belongs to a different presentation");
    if (value.is_zero())
        return;
    auto d = value.homogeneous_degree();
    Bidegree want = pres_->generators()[g].degree + shift;
    if (!d || *d != want)
        throw InvalidInput(what + " must be homogeneous of bidegree (" + std::to_string(want.t) + "," +
                           std::to_string(want.w) + ")");
}

void ActionSpec::set_beta(const std::string& generator, const RingElement& value)
{
    std::size_t g = pres_->require_index(generator);
    check_value(g, {1, 0}, value, "beta(" + generator + ")");
    beta_[g] = value;
}

void ActionSpec::set_power(const std::string& generator, int i, const RingElement& value)
{
    std::size_t g = pres_->require_index(generator);
    if (i < 1)
        throw InvalidInput("power action entries need i >= 1");
    const int p = pres_->prime().value();
    check_value(g, {2 * i * (p - 1), i * (p - 1)}, value, "P^" + std::to_string(i) + "(" + generator + ")");
    power_.insert_or_assign({g, i}, value);
}

void ActionSpec::set_powers_vanish(const std::string& generator)
{
    vanish_.insert(pres_->require_index(generator));
}

bool ActionSpec::target_empty(Bidegree target, bool& truncated) const
{
    if (pres_->window() && target.t >= *pres_->window())
        throw WindowExceeded("operation target degree " + std::to_string(target.t) + " is outside the window");
    if (target.t > pres_->degree_bound()) {
        truncated = true;
        return true;
    }
    return pres_->basis_in(target).empty();
}

RingElement ActionSpec::beta_on_generator(std::size_t g, bool& truncated) const
{
    if (beta_[g])
        return *beta_[g];
    const auto& gen = pres_->generators()[g];
    if (target_empty(gen.degree + Bidegree{1, 0}, truncated))
        return RingElement::zero(pres_);
    throw MissingAction("beta(" + gen.name + ") is not determined by the action table");
}

RingElement ActionSpec::power_on_generator(std::size_t g, int i, bool& truncated) const
{
    if (i == 0)
        return RingElement::generator(pres_, g);
    if (vanish_.count(g))
        return RingElement::zero(pres_);
    if (auto it = power_.find({g, i}); it != power_.end())
        return it->second;
    const auto& gen = pres_->generators()[g];
    const int t = gen.degree.t, w = gen.degree.w, p = pres_->prime().value();
    if (t == 2 * w && i == w) {
        RingElement x = RingElement::generator(pres_, g);
        RingElement r = x.pow(p);
        truncated = truncated || r.truncated();
        return r;
    }
    if (t - w < i && w <= i)
        return RingElement::zero(pres_);
    if (target_empty(gen.degree + Bidegree{2 * i * (p - 1), i * (p - 1)}, truncated))
        return RingElement::zero(pres_);
    throw MissingAction("P^" + std::to_string(i) + "(" + gen.name + ") is not determined by the action table");
}

/* ---------------- evaluation ---------------- */

ActionEvaluator::ActionEvaluator(const ActionSpec& spec) : spec_(spec)
{
}

const RingElement& ActionEvaluator::on_generator(int letter, std::size_t g)
{
    auto key = std::pair{letter, g};
    if (auto it = generator_memo_.find(key); it != generator_memo_.end())
        return it->second;
    bool truncated = false;
    RingElement v = letter == kBeta ? spec_.beta_on_generator(g, truncated)
                                    : spec_.power_on_generator(g, letter, truncated);
    if (truncated)
        v.mark_truncated();
    return generator_memo_.emplace(key, std::move(v)).first->second;
}

const RingElement& ActionEvaluator::on_monomial(int letter, const Monomial& m)
{
    auto key = std::pair{letter, m};
    if (auto it = memo_.find(key); it != memo_.end())
        return it->second;

    const auto& pres = spec_.presentation();
    RingElement result(pres);
    if (!is_unit(m)) {
        std::size_t g = 0;
        while (m[g] == 0)
            ++g;
        Monomial rest = m;
        --rest[g];
        if (is_unit(rest)) {
            result = on_generator(letter, g);
        }
        else {
            /* m = g * rest with no sign, since g comes first in generator order */
            RingElement gen = RingElement::generator(pres, g);
            RingElement tail = RingElement::monomial(pres, rest);
            if (letter == kBeta) {
                result = on_generator(kBeta, g) * tail;
                RingElement second = gen * on_monomial(kBeta, rest);
                if (pres->generators()[g].degree.t % 2)
                    second = -second;
                result += second;
            }
            else {
                result = on_generator(letter, g) * tail + gen * on_monomial(letter, rest);
                for (int r = 1; r < letter; ++r) {
                    const RingElement& left = on_generator(r, g);
                    if (left.is_zero() && !left.truncated())
                        continue;
                    result += left * on_monomial(letter - r, rest);
                }
            }
        }
    }
    return memo_.emplace(std::move(key), std::move(result)).first->second;
}

RingElement ActionEvaluator::letter(int letter, const RingElement& y)
{
    if (y.presentation() != spec_.presentation())
        throw InvalidInput("class belongs to a different presentation than the action table");
    const Prime p = y.prime();
    RingElement out(y.presentation());
    if (y.truncated())
        out.mark_truncated();
    for (const auto& [m, c] : y.terms()) {
        const RingElement& v = on_monomial(letter, m);
        out += v.scaled(Fp(c, p));
    }
    truncated_ = truncated_ || out.truncated();
    return out;
}

RingElement ActionEvaluator::word(const Word& w, const RingElement& x)
{
    RingElement y = x;
    for (auto it = w.rbegin(); it != w.rend(); ++it)
        y = letter(*it, y);
    truncated_ = truncated_ || y.truncated();
    return y;
}

RingElement ActionEvaluator::element(const OpElement& op, const RingElement& x)
{
    if (!(op.prime() == x.prime()))
        throw InvalidInput("operation and class have different primes");
    RingElement out(x.presentation());
    for (const auto& [w, c] : op.terms())
        out += word(w, x).scaled(Fp(c, op.prime()));
    return out;
}

ActionResult apply_operation(const OpElement& op, const RingElement& x, const ActionSpec& spec)
{
    ActionEvaluator ev(spec);
    RingElement v = ev.element(op, x);
    bool truncated = ev.truncated() || v.truncated();
    return {std::move(v), truncated};
}

ActionResult total_power(const RingElement& x, const ActionSpec& spec)
{
    const int p = x.prime().value();
    const int bound = spec.presentation()->degree_bound();
    OpElement total(x.prime());
    for (int n = 0; 2 * n * (p - 1) <= bound; ++n) {
        Word pn;
        if (n > 0)
            pn.push_back(n);
        Word bn{kBeta};
        bn.insert(bn.end(), pn.begin(), pn.end());
        total.add(pn, Fp(1, x.prime()));
        total.add(bn, Fp(1, x.prime()));
    }
    return apply_operation(total, x, spec);
}

ActionResult milnor_apply(int n, const RingElement& x, const ActionSpec& spec)
{
    if (x.presentation() != spec.presentation())
        throw InvalidInput("class belongs to a different presentation than the action table");
    const auto& pres = spec.presentation();
    const Prime p = x.prime();
    const OpElement q = milnor_q(n, p);
    ActionEvaluator ev(spec);
    std::map<std::size_t, RingElement> on_gen;
    std::map<Monomial, RingElement> memo;
    bool truncated = x.truncated();

    std::function<const RingElement&(const Monomial&)> on_mono = [&](const Monomial& m) -> const RingElement& {
        if (auto it = memo.find(m); it != memo.end())
            return it->second;
        RingElement r(pres);
        if (!is_unit(m)) {
            std::size_t g = 0;
            while (m[g] == 0)
                ++g;
            Monomial rest = m;
            --rest[g];
            auto it = on_gen.find(g);
            if (it == on_gen.end())
                it = on_gen.emplace(g, ev.element(q, RingElement::generator(pres, g))).first;
            r = it->second * RingElement::monomial(pres, rest);
            if (!is_unit(rest)) {
                RingElement second = RingElement::generator(pres, g) * on_mono(rest);
                if (pres->generators()[g].degree.t % 2)
                    second = -second;
                r += second;
            }
        }
        return memo.emplace(m, std::move(r)).first->second;
    };

    RingElement out(pres);
    for (const auto& [m, c] : x.terms())
        out += on_mono(m).scaled(Fp(c, p));
    truncated = truncated || ev.truncated() || out.truncated();
    if (truncated)
        out.mark_truncated();
    return {std::move(out), truncated};
}

ActionSpec tensor(const ActionSpec& a, const ActionSpec& b, PresentationPtr product)
{
    ActionSpec r(product);
    for (const auto& [src, offset] : {std::pair{&a, std::size_t(0)}, std::pair{&b, a.presentation()->size()}}) {
        const auto& gens = src->presentation()->generators();
        for (std::size_t g = 0; g < gens.size(); ++g) {
            if (src->beta_of(g))
                r.set_beta(gens[g].name, embed(*src->beta_of(g), product, offset));
            if (src->powers_vanish(g))
                r.set_powers_vanish(gens[g].name);
        }
        for (const auto& [key, value] : src->power_table())
            r.set_power(gens[key.first].name, key.second, embed(value, product, offset));
    }
    return r;
}

}  // namespace steenrod
