#include "steenrod/chern.h"

#include "steenrod/errors.h"

#include <algorithm>
#include <functional>
#include <numeric>

namespace steenrod {

std::vector<int> root_weights(int m)
{
    return std::vector<int>(std::size_t(m), 1);
}

std::vector<int> chern_weights(int r)
{
    std::vector<int> w(static_cast<std::size_t>(r));
    std::iota(w.begin(), w.end(), 1);
    return w;
}

std::vector<std::string> root_names(int m)
{
    std::vector<std::string> n;
    for (int i = 1; i <= m; ++i)
        n.push_back("a" + std::to_string(i));
    return n;
}

std::vector<std::string> chern_names(int r)
{
    std::vector<std::string> n;
    for (int i = 1; i <= r; ++i)
        n.push_back("c" + std::to_string(i));
    return n;
}

Poly elementary_symmetric(int k, int m, Prime p)
{
    if (k < 0 || m < 0)
        throw InvalidInput("elementary symmetric polynomial needs k, m >= 0");
    const auto w = root_weights(m);
    std::vector<Poly> e(std::size_t(k) + 1, Poly(p, w));
    e[0] = Poly::constant(p, w, 1);
    for (int i = 0; i < m; ++i) {
        Poly a = Poly::variable(p, w, std::size_t(i));
        for (int j = std::min(k, i + 1); j >= 1; --j)
            e[j] = e[j] + e[j - 1] * a;
    }
    return e[k];
}

namespace {

Poly swap_vars(const Poly& f, std::size_t i, std::size_t j)
{
    Poly r(f.prime(), f.weights());
    for (const auto& [e, c] : f.terms()) {
        Poly::Exps s = e;
        std::swap(s[i], s[j]);
        r.add(s, Fp(c, f.prime()));
    }
    return r;
}

/* Copy a polynomial into a larger variable list starting at offset. */
Poly embed_block(const Poly& f, const std::vector<int>& weights, std::size_t offset)
{
    Poly r(f.prime(), weights);
    for (const auto& [e, c] : f.terms()) {
        Poly::Exps big(weights.size(), 0);
        std::copy(e.begin(), e.end(), big.begin() + offset);
        r.add(big, Fp(c, f.prime()));
    }
    return r;
}

Poly ring_to_chern(const RingElement& x, int r)
{
    const auto& pres = *x.presentation();
    std::vector<std::size_t> index;
    for (int i = 1; i <= r; ++i)
        index.push_back(pres.require_index("c" + std::to_string(i)));
    Poly out(x.prime(), chern_weights(r));
    for (const auto& [m, c] : x.terms()) {
        Poly::Exps e(std::size_t(r), 0);
        std::size_t used = 0;
        for (int i = 0; i < r; ++i) {
            e[i] = m[index[i]];
            used += m[index[i]];
        }
        std::size_t total = 0;
        for (auto v : m)
            total += v;
        if (used != total)
            throw InvalidInput("class involves generators other than Chern classes");
        out.add(e, Fp(c, x.prime()));
    }
    return out;
}

}  // namespace

SymmetricPoly::SymmetricPoly(Poly poly, int m) : poly_(std::move(poly)), m_(m)
{
    if (int(poly_.nvars()) != m || poly_.weights() != root_weights(m))
        throw InvalidInput("symmetric polynomial must be in the m root variables");
    /* adjacent transpositions generate the symmetric group */
    for (int i = 0; i + 1 < m; ++i)
        if (!(swap_vars(poly_, std::size_t(i), std::size_t(i) + 1) == poly_))
            throw InvalidInput("polynomial is not symmetric in the roots");
}

ChernSeries::ChernSeries(Poly poly, int truncation) : poly_(std::move(poly)), truncation_(truncation)
{
    if (poly_.weights() != chern_weights(int(poly_.nvars())))
        throw InvalidInput("Chern series must be in c1..cr");
    if (poly_.max_degree() > truncation_)
        throw InvalidInput("Chern series has terms beyond its truncation");
}

std::string ChernSeries::to_string() const
{
    return poly_.to_string(chern_names(rank()));
}

ChernSeries elementary_expand(const SymmetricPoly& s)
{
    const int m = s.roots();
    const Prime p = s.poly().prime();
    std::vector<Poly> e;
    for (int k = 0; k <= m; ++k)
        e.push_back(elementary_symmetric(k, m, p));
    Poly rest = s.poly();
    Poly out(p, chern_weights(m));
    const int truncation = std::max(0, rest.max_degree());
    while (!rest.is_zero()) {
        const auto& [lead, c] = *rest.terms().rbegin();
        Poly::Exps chern(std::size_t(m), 0);
        Poly term = Poly::constant(p, root_weights(m), c);
        for (int i = 0; i < m; ++i) {
            int next = i + 1 < m ? lead[i + 1] : 0;
            if (lead[i] < next)
                throw InvalidInput("polynomial is not symmetric in the roots");
            chern[i] = uint16_t(lead[i] - next);
            if (chern[i])
                term = term * e[i + 1].pow(chern[i]);
        }
        out.add(chern, Fp(c, p));
        rest = rest - term;
    }
    return ChernSeries(out, truncation);
}

Poly chern_to_roots(const Poly& chern, int m)
{
    const Prime p = chern.prime();
    std::vector<Poly> values;
    for (std::size_t i = 1; i <= chern.nvars(); ++i) {
        if (chern.weights()[i - 1] != int(i))
            throw InvalidInput("expected a polynomial in c1..cr");
        values.push_back(int(i) <= m ? elementary_symmetric(int(i), m, p) : Poly(p, root_weights(m)));
    }
    if (values.empty())
        return Poly::constant(p, root_weights(m), chern.constant_term().value());
    return chern.substitute(values);
}

namespace {

/* P^i on a single monomial: choose k_j of the a_j factors to raise to a_j^p. */
void power_on_monomial(int i, const Poly::Exps& e, Fp c, int p, Poly& out)
{
    const auto& w = out.weights();
    Poly::Exps cur = e;
    std::function<void(std::size_t, int, Fp)> go = [&](std::size_t j, int left, Fp coef) {
        if (j == e.size()) {
            if (left == 0)
                out.add(cur, coef);
            return;
        }
        if (w[j] != 1 || e[j] == 0) {
            go(j + 1, left, coef);
            return;
        }
        for (int k = 0; k <= std::min<int>(left, e[j]); ++k) {
            Fp b = binom_mod_p(e[j], std::uint64_t(k), Prime(p));
            if (b.is_zero())
                continue;
            cur[j] = uint16_t(e[j] + k * (p - 1));
            go(j + 1, left - k, coef * b);
        }
        cur[j] = e[j];
    };
    go(0, i, c);
}

}  // namespace

Poly act_on_roots(const OpElement& op, const Poly& roots_poly)
{
    const Prime p = roots_poly.prime();
    if (!(op.prime() == p))
        throw InvalidInput("operation and polynomial have different primes");
    for (int w : roots_poly.weights())
        if (w != 0 && w != 1)
            throw InvalidInput("root polynomials have variables of weight 0 or 1 only");
    Poly out(p, roots_poly.weights());
    for (const auto& [word, c] : op.terms()) {
        Poly y = roots_poly.scaled(Fp(c, p));
        for (auto it = word.rbegin(); it != word.rend() && !y.is_zero(); ++it) {
            if (*it == kBeta) {
                /* beta kills the roots, hence every polynomial in them */
                y = Poly(p, roots_poly.weights());
                break;
            }
            Poly next(p, roots_poly.weights());
            for (const auto& [e, v] : y.terms())
                power_on_monomial(*it, e, Fp(v, p), p.value(), next);
            y = std::move(next);
        }
        out = out + y;
    }
    return out;
}

ChernSeries act_on_chern(const OpElement& op, const Poly& chern, int m, bool require_stable)
{
    if (m < 0)
        throw InvalidInput("root count must be nonnegative");
    for (const auto& [e, c] : chern.terms())
        for (std::size_t i = std::size_t(m); i < e.size(); ++i)
            if (e[i])
                throw InvalidInput("insufficient roots: c" + std::to_string(i + 1) + " needs at least " +
                                   std::to_string(i + 1) + " roots");
    Poly result = act_on_roots(op, chern_to_roots(chern, m));
    if (require_stable && result.max_degree() > m)
        throw InvalidInput("insufficient roots: the result has root degree " + std::to_string(result.max_degree()) +
                           " but only " + std::to_string(m) + " roots were given");
    return elementary_expand(SymmetricPoly(result, m));
}

/* ---------------- characteristic classes ---------------- */

std::vector<int> VirtualBundle::weights() const
{
    std::vector<int> w;
    for (const auto& s : summands)
        for (int i = 1; i <= s.rank; ++i)
            w.push_back(i);
    return w;
}

std::vector<std::string> VirtualBundle::names() const
{
    if (summands.size() == 1)
        return chern_names(summands[0].rank);
    std::vector<std::string> n;
    for (std::size_t k = 0; k < summands.size(); ++k)
        for (int i = 1; i <= summands[k].rank; ++i)
            n.push_back(std::string(1, char('c' + k)) + std::to_string(i));
    return n;
}

namespace {

/* prod_i g(a_i) over r roots, expanded in c1..cr. */
Poly root_product(const Poly& g, int r, int truncation)
{
    const Prime p = g.prime();
    Poly prod = Poly::constant(p, root_weights(r), 1);
    for (int i = 0; i < r; ++i) {
        Poly gi = g.substitute({Poly::variable(p, root_weights(r), std::size_t(i))});
        prod = (prod * gi).truncated(truncation);
    }
    return elementary_expand(SymmetricPoly(prod, r)).poly();
}

Poly combine(const VirtualBundle& e, Prime p, int truncation, const Poly& per_root)
{
    const auto weights = e.weights();
    Poly total = Poly::constant(p, weights, 1);
    std::size_t offset = 0;
    for (const auto& s : e.summands) {
        if (s.rank < 0)
            throw InvalidInput("bundle rank must be nonnegative");
        Poly block = root_product(per_root, s.rank, truncation);
        if (s.negative)
            block = block.series_inverse(truncation);
        total = (total * embed_block(block, weights, offset)).truncated(truncation);
        offset += std::size_t(s.rank);
    }
    return total;
}

}  // namespace

Poly total_sw(const VirtualBundle& e, Prime p, int truncation)
{
    /* P(a) = a + a^p, so each root contributes 1 + a^{p-1} */
    Poly g = Poly::constant(p, {1}, 1);
    g.add({uint16_t(p.value() - 1)}, Fp(1, p));
    return combine(e, p, truncation, g);
}

Poly todd_inverse(const Poly& psi, const VirtualBundle& e, int truncation)
{
    if (psi.nvars() != 1 || psi.weights()[0] != 1)
        throw InvalidInput("expected a one-variable series");
    const Prime p = psi.prime();
    if (!psi.coefficient({0}).is_zero())
        throw InvalidInput("series must have zero constant term");
    if (psi.coefficient({1}).is_zero())
        throw InvalidInput("series must have a unit linear term");
    Poly g(p, {1});
    for (const auto& [ex, c] : psi.terms())
        g.add({uint16_t(ex[0] - 1)}, Fp(c, p));
    return combine(e, p, truncation, g.truncated(truncation));
}

ChernSeries sw_class_roots(int j, int r, Prime p)
{
    if (j < 0 || r < 0)
        throw InvalidInput("sw_class needs j, r >= 0");
    const int weight = j * (p.value() - 1);
    Poly w = total_sw(VirtualBundle{{{r, false}}}, p, weight);
    return ChernSeries(w.homogeneous_part(weight), weight);
}

ThomModel thom_model(int r, Prime p, int degree_bound)
{
    return ThomModel{r, proj_bundle(r, p, degree_bound)};
}

RingElement thom_class(const ThomModel& model)
{
    const auto& pres = model.ring.pres;
    const int r = model.rank;
    RingElement t = RingElement::zero(pres);
    RingElement hx = RingElement::generator(pres, "hx");
    for (int i = 0; i <= r; ++i) {
        RingElement ci = i == 0 ? RingElement::one(pres) : RingElement::generator(pres, "c" + std::to_string(i));
        RingElement term = ci * hx.pow(unsigned(r - i));
        t += (r - i) % 2 ? -term : term;
    }
    return t;
}

ChernSeries sw_class(int j, int r, Prime p)
{
    if (j < 0 || r < 0)
        throw InvalidInput("sw_class needs j, r >= 0");
    const int weight = j * (p.value() - 1);
    ThomModel model = thom_model(r, p, 2 * (r + weight));
    const auto& pres = model.ring.pres;
    RingElement t = thom_class(model);
    ActionResult pj = apply_operation(j == 0 ? OpElement::identity(p) : OpElement::power(j, p), t, model.ring.action);
    if (pj.truncated)
        throw VerificationFailure("Thom model too small for P^" + std::to_string(j));

    /* t is (-1)^r hx^r + lower powers of hx, so w_j is read off the hx^r coefficient */
    const std::size_t hx = pres->require_index("hx");
    RingElement w = RingElement::zero(pres);
    for (const auto& [m, c] : pj.value.terms())
        if (m[hx] == unsigned(r)) {
            Monomial base = m;
            base[hx] = 0;
            w.add(base, Fp(c, p) * Fp(r % 2 ? -1 : 1, p));
        }
    if (!(w * t == pj.value))
        throw VerificationFailure("P^" + std::to_string(j) + "(t) is not a multiple of t");
    return ChernSeries(ring_to_chern(w, r), weight);
}

RingElement chern_poly_to_ring(const Poly& chern, const PresentationPtr& pres)
{
    std::vector<std::size_t> index;
    for (std::size_t i = 1; i <= chern.nvars(); ++i)
        index.push_back(pres->require_index("c" + std::to_string(i)));
    RingElement out = RingElement::zero(pres);
    for (const auto& [e, c] : chern.terms()) {
        Monomial m = pres->unit();
        for (std::size_t i = 0; i < e.size(); ++i)
            m[index[i]] = e[i];
        out.add(m, Fp(c, chern.prime()));
    }
    return out;
}

Fp pushforward_proj(int n, const RingElement& x)
{
    const auto& pres = *x.presentation();
    if (pres.size() != 1 || pres.generators()[0].name != "h")
        throw InvalidInput("pushforward_proj expects a class in F_p[h]/(h^{n+1})");
    const auto& h = pres.generators()[0];
    if (h.kind != GeneratorKind::nilpotent || h.order != n + 1)
        throw InvalidInput("presentation does not match projective space of dimension " + std::to_string(n));
    return x.coefficient(Monomial{uint16_t(n)});
}

RingElement pushforward_zero_section(const RingElement& z, const ThomModel& model)
{
    if (z.presentation() != model.ring.pres)
        throw InvalidInput("class must live in the Thom model");
    const std::size_t hx = model.ring.pres->require_index("hx");
    for (const auto& [m, c] : z.terms())
        if (m[hx])
            throw InvalidInput("zero-section pushforward takes a class from the base");
    return z * thom_class(model);
}

WuReport verify_wu_proj(int n, const RingElement& x)
{
    const Prime p = x.prime();
    StandardRing pt = point(p);

    /* pushforward first, then the operation on the point */
    RingElement lhs = total_power(RingElement::scalar(pt.pres, pushforward_proj(n, x)), pt.action).value;

    /* w of the cotangent complex: w(-T) with c(T) = (1 + h)^{n+1} */
    Poly w_minus_t = total_sw(VirtualBundle{{{n, true}}}, p, n);
    std::vector<Poly> ct;
    for (int i = 1; i <= n; ++i) {
        Poly hi(p, {1});
        hi.add({uint16_t(i)}, binom_mod_p(uint64_t(n + 1), uint64_t(i), p));
        ct.push_back(hi);
    }
    Poly factor = n == 0 ? Poly::constant(p, {1}, 1) : w_minus_t.substitute(ct).truncated(n);
    RingElement w = RingElement::zero(x.presentation());
    for (const auto& [e, c] : factor.terms())
        w.add(Monomial{e[0]}, Fp(c, p));

    /* h has bidegree (2,1), so the default action (P^1 h = h^p, beta h = 0) is the whole table */
    pushforward_proj(n, x);
    ActionResult px = total_power(x, ActionSpec(x.presentation()));
    RingElement rhs = RingElement::scalar(pt.pres, pushforward_proj(n, w * px.value));

    return WuReport{lhs == rhs, lhs.to_string(), rhs.to_string(), x.to_string()};
}

WuReport verify_wu_zero(const ThomModel& model, const RingElement& z)
{
    const auto& pres = model.ring.pres;
    const Prime p = pres->prime();
    const int r = model.rank;
    RingElement t = thom_class(model);

    ActionResult lhs = total_power(pushforward_zero_section(z, model), model.ring.action);

    Poly wn = total_sw(VirtualBundle{{{r, false}}}, p, pres->degree_bound() / 2);
    RingElement w = chern_poly_to_ring(wn, pres);
    ActionResult pz = total_power(z, model.ring.action);
    RingElement rhs = pushforward_zero_section(w * pz.value, model);

    return WuReport{lhs.value == rhs, lhs.value.to_string(), rhs.to_string(), z.to_string()};
}

}  // namespace steenrod
