#include "steenrod/poly.h"

#include "steenrod/errors.h"

#include <algorithm>

namespace steenrod {

Poly::Poly(Prime p, std::vector<int> weights) : p_(p), weights_(std::move(weights))
{
}

Poly Poly::constant(Prime p, std::vector<int> weights, int64_t c)
{
    Poly r(p, std::move(weights));
    r.add(Exps(r.nvars(), 0), Fp(c, p));
    return r;
}

Poly Poly::variable(Prime p, std::vector<int> weights, std::size_t i)
{
    Poly r(p, std::move(weights));
    Exps e(r.nvars(), 0);
    e.at(i) = 1;
    r.add(e, Fp(1, p));
    return r;
}

void Poly::add(const Exps& e, Fp c)
{
    if (e.size() != weights_.size())
        throw InvalidInput("polynomial exponent vector has the wrong length");
    if (c.is_zero())
        return;
    auto [it, inserted] = terms_.try_emplace(e, c.value());
    if (!inserted) {
        Fp s = Fp(it->second, p_) + c;
        if (s.is_zero())
            terms_.erase(it);
        else
            it->second = s.value();
    }
}

Fp Poly::coefficient(const Exps& e) const
{
    auto it = terms_.find(e);
    return Fp(it == terms_.end() ? 0 : it->second, p_);
}

Fp Poly::constant_term() const
{
    return coefficient(Exps(nvars(), 0));
}

void Poly::check_same(const Poly& o) const
{
    if (!(p_ == o.p_) || weights_ != o.weights_)
        throw InvalidInput("polynomials over different variables");
}

Poly Poly::operator+(const Poly& o) const
{
    check_same(o);
    Poly r = *this;
    for (const auto& [e, c] : o.terms_)
        r.add(e, Fp(c, p_));
    return r;
}

Poly Poly::operator-(const Poly& o) const
{
    return *this + (-o);
}

Poly Poly::operator-() const
{
    return scaled(Fp(-1, p_));
}

Poly Poly::scaled(Fp c) const
{
    Poly r(p_, weights_);
    for (const auto& [e, v] : terms_)
        r.add(e, Fp(v, p_) * c);
    return r;
}

Poly Poly::operator*(const Poly& o) const
{
    check_same(o);
    Poly r(p_, weights_);
    Exps e(nvars());
    for (const auto& [a, ca] : terms_)
        for (const auto& [b, cb] : o.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i)
                e[i] = uint16_t(a[i] + b[i]);
            r.add(e, Fp(ca, p_) * Fp(cb, p_));
        }
    return r;
}

Poly Poly::pow(unsigned n) const
{
    Poly r = constant(p_, weights_, 1);
    Poly base = *this;
    while (n) {
        if (n & 1)
            r = r * base;
        n >>= 1;
        if (n)
            base = base * base;
    }
    return r;
}

int Poly::weighted_degree(const Exps& e) const
{
    int d = 0;
    for (std::size_t i = 0; i < e.size(); ++i)
        d += weights_[i] * e[i];
    return d;
}

int Poly::max_degree() const
{
    int d = -1;
    for (const auto& [e, c] : terms_)
        d = std::max(d, weighted_degree(e));
    return d;
}

Poly Poly::truncated(int max_weight) const
{
    Poly r(p_, weights_);
    for (const auto& [e, c] : terms_)
        if (weighted_degree(e) <= max_weight)
            r.terms_.emplace(e, c);
    return r;
}

Poly Poly::homogeneous_part(int weight) const
{
    Poly r(p_, weights_);
    for (const auto& [e, c] : terms_)
        if (weighted_degree(e) == weight)
            r.terms_.emplace(e, c);
    return r;
}

Poly Poly::substitute(const std::vector<Poly>& values) const
{
    if (values.size() != nvars())
        throw InvalidInput("substitution needs one value per variable");
    if (values.empty())
        return *this;
    Poly r(p_, values.front().weights());
    /* cache powers per variable */
    std::vector<std::vector<Poly>> powers(nvars());
    for (const auto& [e, c] : terms_) {
        Poly term = constant(p_, values.front().weights(), c);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (!e[i])
                continue;
            auto& pw = powers[i];
            if (pw.empty())
                pw.push_back(constant(p_, values.front().weights(), 1));
            while (pw.size() <= e[i])
                pw.push_back(pw.back() * values[i]);
            term = term * pw[e[i]];
        }
        r = r + term;
    }
    return r;
}

Poly Poly::series_inverse(int max_weight) const
{
    Fp c0 = constant_term();
    if (c0.is_zero())
        throw InvalidInput("series inverse needs an invertible constant term");
    /* f = c0 (1 - u) with u free of constants; 1/(1 - u) = sum u^k */
    Poly u = constant(p_, weights_, 1) - scaled(c0.inverse());
    Poly result = constant(p_, weights_, 1);
    Poly power = result;
    for (int k = 1; k <= max_weight; ++k) {
        power = (power * u).truncated(max_weight);
        if (power.is_zero())
            break;
        result = result + power;
    }
    return result.truncated(max_weight).scaled(c0.inverse());
}

Fp2 Poly::evaluate(const std::vector<Fp2>& values) const
{
    if (values.size() != nvars())
        throw InvalidInput("evaluation needs one value per variable");
    Fp2 total = Fp2::from_base(Fp(0, p_));
    for (const auto& [e, c] : terms_) {
        Fp2 term = Fp2::from_base(Fp(c, p_));
        for (std::size_t i = 0; i < e.size(); ++i)
            term = term * values[i].pow(e[i]);
        total = total + term;
    }
    return total;
}

std::string Poly::to_string(const std::vector<std::string>& names) const
{
    if (names.size() != nvars())
        throw InvalidInput("need one name per variable");
    if (terms_.empty())
        return "0";
    std::vector<std::pair<Exps, uint32_t>> sorted(terms_.begin(), terms_.end());
    std::stable_sort(sorted.begin(), sorted.end(), [&](const auto& a, const auto& b) {
        int da = weighted_degree(a.first), db = weighted_degree(b.first);
        if (da != db)
            return da > db;
        return a.first > b.first;
    });
    std::string s;
    for (const auto& [e, c] : sorted) {
        int64_t v = Fp(c, p_).centered();
        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (!e[i])
                continue;
            if (!mono.empty())
                mono += '*';
            mono += names[i];
            if (e[i] > 1)
                mono += '^' + std::to_string(e[i]);
        }
        bool negative = v < 0;
        int64_t mag = negative ? -v : v;
        if (s.empty())
            s += negative ? "-" : "";
        else
            s += negative ? " - " : " + ";
        if (mono.empty())
            s += std::to_string(mag);
        else if (mag == 1)
            s += mono;
        else
            s += std::to_string(mag) + "*" + mono;
    }
    return s;
}

}  // namespace steenrod
