#include "steenrod/obstructions.h"

#include "steenrod/chern.h"
#include "steenrod/errors.h"
#include "steenrod/presentations.h"

#include <map>
#include <sstream>

namespace steenrod {

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::obstructed:
        return "obstructed";
    case Verdict::unobstructed:
        return "unobstructed";
    case Verdict::inconclusive:
        return "inconclusive";
    }
    return "inconclusive";
}

bool ObstructionReport::consistent() const
{
    for (const auto& c : checks)
        if (!c.passed)
            return false;
    return true;
}

namespace {

/* Solves A x = b over F_p; A is rows x cols. */
std::optional<std::vector<Fp>> solve_linear(std::vector<std::vector<Fp>> a, std::vector<Fp> b, Prime p)
{
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c].is_zero())
            ++piv;
        if (piv == rows)
            continue;
        std::swap(a[piv], a[r]);
        std::swap(b[piv], b[r]);
        Fp inv = a[r][c].inverse();
        for (auto& v : a[r])
            v = v * inv;
        b[r] = b[r] * inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero())
                continue;
            Fp f = a[i][c];
            for (std::size_t j = c; j < cols; ++j)
                a[i][j] = a[i][j] - f * a[r][j];
            b[i] = b[i] - f * b[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (!b[i].is_zero())
            return std::nullopt;
    std::vector<Fp> x(cols, Fp(0, p));
    for (std::size_t i = 0; i < r; ++i)
        x[pivot_col[i]] = b[i];
    return x;
}

SubCheck check(std::string name, bool passed, std::string detail = {})
{
    return SubCheck{std::move(name), passed, std::move(detail)};
}

std::string fp_text(Fp x)
{
    return std::to_string(x.centered());
}

std::string fp2_text(const Fp2& x)
{
    std::ostringstream os;
    os << x;
    return os.str();
}

/* Copy a polynomial into a variable list that extends its own by extra trailing variables. */
Poly extend(const Poly& f, const std::vector<int>& weights)
{
    Poly r(f.prime(), weights);
    for (const auto& [e, c] : f.terms()) {
        Poly::Exps big(weights.size(), 0);
        std::copy(e.begin(), e.end(), big.begin());
        r.add(big, Fp(c, f.prime()));
    }
    return r;
}

bool free_of(const Poly& f, std::size_t var)
{
    for (const auto& [e, c] : f.terms())
        if (e[var])
            return false;
    return true;
}

}  // namespace

std::optional<RingElement> divide_homogeneous(const RingElement& target, const RingElement& divisor)
{
    const auto& pres = target.presentation();
    const Prime p = target.prime();
    if (divisor.presentation() != pres)
        throw InvalidInput("division needs classes of one presentation");
    if (target.is_zero())
        return RingElement::zero(pres);
    auto dt = target.homogeneous_degree();
    auto dd = divisor.homogeneous_degree();
    if (!dt || !dd)
        throw InvalidInput("division needs homogeneous classes");
    Bidegree dq = *dt - *dd;
    auto basis = pres->basis_in(dq);

    std::vector<RingElement> products;
    std::map<Monomial, std::size_t> row_of;
    auto row = [&](const Monomial& m) { return row_of.try_emplace(m, row_of.size()).first->second; };
    for (const auto& [m, c] : target.terms())
        row(m);
    for (const auto& q : basis) {
        RingElement prod = divisor * RingElement::monomial(pres, q);
        if (prod.truncated())
            throw InvalidInput("quotient degree exceeds the degree bound");
        for (const auto& [m, c] : prod.terms())
            row(m);
        products.push_back(std::move(prod));
    }
    std::vector<std::vector<Fp>> a(row_of.size(), std::vector<Fp>(basis.size(), Fp(0, p)));
    std::vector<Fp> b(row_of.size(), Fp(0, p));
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (const auto& [m, c] : products[j].terms())
            a[row_of[m]][j] = Fp(c, p);
    for (const auto& [m, c] : target.terms())
        b[row_of[m]] = Fp(c, p);

    auto x = solve_linear(std::move(a), std::move(b), p);
    if (!x)
        return std::nullopt;
    RingElement q = RingElement::zero(pres);
    for (std::size_t j = 0; j < basis.size(); ++j)
        q.add(basis[j], (*x)[j]);
    return q;
}

ObstructionReport grassmannian_p2_check()
{
    const Prime p(2);
    StandardRing g = grassmannian_window(p);
    ActionEvaluator ev(g.action);
    auto gen = [&](const char* n) { return RingElement::generator(g.pres, n); };
    const RingElement x = gen("x"), y = gen("y"), z = gen("z");
    auto sq2 = [&](const RingElement& c) { return ev.letter(1, c); };

    ObstructionReport r;
    r.check = "grassmannian";
    r.parameters = {{"p", "2"}, {"window", "14"}};

    RingElement sq2x = sq2(x), sq2y = sq2(y), sq2xx = sq2(x * x);
    r.checks.push_back(check("Sq^2(x) = x^2", sq2x == x * x, sq2x.to_string()));
    r.checks.push_back(check("Sq^2(x^2) = 0", sq2xx.is_zero(), sq2xx.to_string()));
    r.checks.push_back(check("Sq^2(y) = x*y + z", sq2y == x * y + z, sq2y.to_string()));

    const RingElement quoted = x * x * y * y + z * z;
    bool obstructed = true;
    std::string witness;
    for (int alpha = 0; alpha <= 1; ++alpha)
        for (int beta = 0; beta <= 1; ++beta) {
            RingElement c = x.pow(2).scaled(Fp(alpha, p)) + y.scaled(Fp(beta, p));
            RingElement s = sq2(c);
            RingElement square = s * s;
            std::string at = " at (alpha, beta) = (" + std::to_string(alpha) + ", " + std::to_string(beta) + ")";
            r.checks.push_back(check("Sq^2(alpha x^2 + beta y)^2 = beta^2 (x^2 y^2 + z^2)" + at,
                                     square == quoted.scaled(Fp(beta, p)), square.to_string()));
            if (!beta)
                continue;
            auto q = divide_homogeneous(square, c);
            r.checks.push_back(check("no quotient of degree (8,4)" + at, !q, q ? q->to_string() : "none"));
            obstructed = obstructed && !q;
            if (!witness.empty())
                witness += "; ";
            witness += c.to_string() + " does not divide " + square.to_string();
        }
    r.verdict = obstructed && r.consistent() ? Verdict::obstructed : Verdict::inconclusive;
    r.witness = witness;
    return r;
}

int oddp_find_m(Prime p)
{
    if (p.value() == 2)
        throw InvalidInput("oddp_find_m needs an odd prime");
    for (int m = 4; m <= 4 * p.value() + 4; m += 2) {
        Fp half = Fp(m - 2, p) * Fp(2, p).inverse();
        Fp d = -half;
        if (!Fp(m - 2, p).is_zero() && !is_square(d))
            return m;
    }
    throw VerificationFailure("no admissible m found");
}

ObstructionReport oddp_check(Prime p, int m)
{
    const int pv = p.value();
    if (pv == 2)
        throw InvalidInput("oddp_check needs an odd prime");
    if (m < 4 || m % 2 || Fp(m - 2, p).is_zero() || is_square(-(Fp(m - 2, p) * Fp(2, p).inverse())))
        throw InvalidInput("m must be even, at least 4, with -(m-2)/2 a nonsquare unit mod " + std::to_string(pv));
    const Fp half = Fp(m - 2, p) * Fp(2, p).inverse();

    ObstructionReport r;
    r.check = "oddp";
    r.parameters = {{"p", std::to_string(pv)}, {"m", std::to_string(m)}};

    /* P^1 on c1^2 and c2 through m roots */
    const auto cw = chern_weights(m);
    Poly c1 = Poly::variable(p, cw, 0), c2 = Poly::variable(p, cw, 1);
    Poly p1c1sq = act_on_chern(OpElement::power(1, p), c1 * c1, m, false).poly();
    Poly p1c2 = act_on_chern(OpElement::power(1, p), c2, m, false).poly();

    const auto rw = root_weights(m);
    auto a = [&](int i) { return Poly::variable(p, rw, std::size_t(i)); };
    Poly s1 = elementary_symmetric(1, m, p), e2 = elementary_symmetric(2, m, p);
    Poly quoted_c1sq = s1.pow(unsigned(pv + 1)).scaled(Fp(2, p));
    Poly quoted_c2(p, rw);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            quoted_c2 = quoted_c2 + a(i).pow(unsigned(pv)) * a(j) + a(i) * a(j).pow(unsigned(pv));
    r.checks.push_back(check("P^1(c1^2) = 2(a_1 + ... + a_m)^{p+1}", chern_to_roots(p1c1sq, m) == quoted_c1sq,
                             p1c1sq.to_string(chern_names(m))));
    r.checks.push_back(check("P^1(c2) = sum_{i<j} (a_i^p a_j + a_i a_j^p)", chern_to_roots(p1c2, m) == quoted_c2,
                             p1c2.to_string(chern_names(m))));

    /* f and g over F_p[a_1..a_m, alpha] */
    std::vector<int> w1 = rw;
    w1.push_back(0);
    const std::size_t alpha_var = std::size_t(m);
    Poly alpha = Poly::variable(p, w1, alpha_var);
    Poly f = alpha * extend(s1 * s1, w1) + extend(e2, w1);
    Poly g = alpha * extend(chern_to_roots(p1c1sq, m), w1) + extend(chern_to_roots(p1c2, m), w1);
    r.checks.push_back(check("g = P^1(f)", act_on_roots(OpElement::power(1, p), f) == g));

    /* a_m = -(a_1 + ... + a_{m-1}) */
    std::vector<int> w2(std::size_t(m - 1), 1);
    w2.push_back(0);
    auto b = [&](int i) { return Poly::variable(p, w2, std::size_t(i)); };
    std::vector<Poly> sub1;
    Poly sum_b(p, w2);
    for (int i = 0; i < m - 1; ++i) {
        sub1.push_back(b(i));
        sum_b = sum_b + b(i);
    }
    sub1.push_back(-sum_b);
    sub1.push_back(Poly::variable(p, w2, std::size_t(m - 1)));
    Poly f2 = f.substitute(sub1), g2 = g.substitute(sub1);

    Poly quoted_f2(p, w2), quoted_g2(p, w2);
    for (int i = 0; i < m - 1; ++i) {
        for (int j = i; j < m - 1; ++j)
            quoted_f2 = quoted_f2 - b(i) * b(j);
        quoted_g2 = quoted_g2 - b(i).pow(unsigned(pv + 1));
    }
    quoted_g2 = quoted_g2 - sum_b.pow(unsigned(pv + 1));
    std::vector<std::string> names2;
    for (int i = 1; i < m; ++i)
        names2.push_back("a" + std::to_string(i));
    names2.push_back("alpha");
    r.checks.push_back(check("f2 is free of alpha", free_of(f2, std::size_t(m - 1)), f2.to_string(names2)));
    r.checks.push_back(check("g2 is free of alpha", free_of(g2, std::size_t(m - 1)), g2.to_string(names2)));
    r.checks.push_back(check("f2 = -sum_{i<=j} a_i a_j", f2 == quoted_f2, f2.to_string(names2)));
    r.checks.push_back(check("g2 = -(a_1^{p+1} + ... + a_{m-1}^{p+1}) - (a_1 + ... + a_{m-1})^{p+1}",
                             g2 == quoted_g2, g2.to_string(names2)));

    /* a_1 = a, a_i = (-1)^i; alpha no longer occurs */
    const std::vector<int> w3{1};
    std::vector<Poly> sub2{Poly::variable(p, w3, 0)};
    for (int i = 2; i <= m - 1; ++i)
        sub2.push_back(Poly::constant(p, w3, i % 2 ? -1 : 1));
    sub2.push_back(Poly(p, w3));
    Poly f3 = f2.substitute(sub2), g3 = g2.substitute(sub2);
    Poly av = Poly::variable(p, w3, 0);
    Poly half_c = Poly::constant(p, w3, half.value());
    Poly quoted_f3 = -(av.pow(2) + half_c);
    Poly quoted_g3 = (av.pow(unsigned(pv + 1)) + half_c).scaled(Fp(-2, p));
    r.checks.push_back(check("f3 = -(a^2 + (m-2)/2)", f3 == quoted_f3, f3.to_string({"a"})));
    r.checks.push_back(check("g3 = -2(a^{p+1} + (m-2)/2)", g3 == quoted_g3, g3.to_string({"a"})));

    /* xi = s w with w^2 = n the field's nonsquare, s^2 = -half / n */
    const Fp n = fp2_nonsquare(p);
    const Fp target = -half * n.inverse();
    std::optional<Fp> s;
    for (int k = 0; k < pv && !s; ++k)
        if (Fp(k, p) * Fp(k, p) == target)
            s = Fp(k, p);
    if (!s)
        throw VerificationFailure("no square root of -(m-2)/2 in F_{p^2}");
    const Fp2 xi(Fp(0, p), *s);
    const Fp2 minus_one = Fp2::from_base(Fp(-1, p));
    const Fp2 expect_g3 = Fp2::from_base(Fp(-2 * (m - 2), p));
    bool separated = true;
    std::string witness;
    for (const Fp2& root : {xi, -xi}) {
        std::string label = root == xi ? "xi_+" : "xi_-";
        r.checks.push_back(check(label + "^2 = -(m-2)/2", root * root == Fp2::from_base(-half), fp2_text(root)));
        r.checks.push_back(check(label + "^{p-1} = -1", root.pow(uint64_t(pv - 1)) == minus_one));
        r.checks.push_back(
            check(label + "^{p+1} = (m-2)/2", root.pow(uint64_t(pv + 1)) == Fp2::from_base(half)));
        r.checks.push_back(check("f3(" + label + ") = 0", f3.evaluate({root}).is_zero()));
        Fp2 gv = g3.evaluate({root});
        r.checks.push_back(check("g3(" + label + ") = -2(m-2)", gv == expect_g3, fp2_text(gv)));
        separated = separated && !gv.is_zero();
        if (!witness.empty())
            witness += "; ";
        witness += "g3(" + label + ") = " + fp2_text(gv);
    }
    r.checks.push_back(check("-2(m-2) != 0 mod p", !Fp(-2 * (m - 2), p).is_zero(), fp_text(Fp(-2 * (m - 2), p))));

    /* direct certificate: alpha c1^2 + c2 does not divide P^1(.)^2 in F_p[c1..cm], for every alpha */
    std::vector<GeneratorSpec> gens;
    for (int i = 1; i <= m; ++i)
        gens.push_back({"c" + std::to_string(i), {2 * i, i}, GeneratorKind::polynomial});
    auto pres = RingPresentation::create(p, gens, {}, 4 * (pv + 1));
    bool no_quotient = true;
    for (int al = 0; al < pv; ++al) {
        Poly fa = (c1 * c1).scaled(Fp(al, p)) + c2;
        Poly ga = act_on_chern(OpElement::power(1, p), fa, m, false).poly();
        RingElement fr = chern_poly_to_ring(fa, pres), gr = chern_poly_to_ring(ga, pres);
        no_quotient = no_quotient && !divide_homogeneous(gr * gr, fr);
    }
    r.checks.push_back(check("alpha c1^2 + c2 does not divide P^1(alpha c1^2 + c2)^2 for any alpha", no_quotient));

    r.witness = "f3 = " + f3.to_string({"a"}) + ", g3 = " + g3.to_string({"a"}) + "; " + witness;
    r.verdict = separated && r.consistent() ? Verdict::obstructed : Verdict::inconclusive;
    return r;
}

ObstructionReport mgl_screen(const RingElement& x, const ActionSpec& spec, int n_max)
{
    if (n_max < 1)
        throw InvalidInput("screen needs n_max >= 1");
    ObstructionReport r;
    r.check = "screen";
    r.parameters = {{"class", x.to_string()}, {"n_max", std::to_string(n_max)}};
    bool truncated = false;
    for (int n = 1; n <= n_max; ++n) {
        ActionResult q = milnor_apply(n, x, spec);
        truncated = truncated || q.truncated;
        if (!q.value.is_zero()) {
            r.verdict = Verdict::obstructed;
            r.witness = "Q_" + std::to_string(n) + "(x) = " + q.value.to_string();
            return r;
        }
    }
    r.verdict = Verdict::inconclusive;
    r.witness = truncated ? "Q_n(x) vanish below the degree bound" : "Q_n(x) = 0 for all n <= n_max";
    return r;
}

ObstructionReport tate_counterexample(Prime p, BxRegime regime)
{
    const int pv = p.value();
    const int bound = 2 * pv + 3;
    const bool formal = regime == BxRegime::formal;
    StandardRing ring =
        tensor(bmu_p_power(2, p, bound), elliptic(EllipticKind::ordinary, formal, p, bound), bound);
    auto gen = [&](const char* n) { return RingElement::generator(ring.pres, n); };
    const RingElement u1 = gen("u1"), v1 = gen("v1"), u2 = gen("u2"), v2 = gen("v2"), x = gen("x");
    const RingElement q0x = milnor_apply(0, x, ring.action).value;

    ObstructionReport r;
    r.check = "tate";
    r.parameters = {{"p", std::to_string(pv)}, {"bx", formal ? "formal" : "zero"}};
    r.checks.push_back(check(formal ? "Q_0(x) = bx" : "Q_0(x) = 0", formal ? q0x == gen("bx") : q0x.is_zero(),
                             q0x.to_string()));

    RingElement alpha = v1 * u2 * x - u1 * v2 * x + u1 * u2 * q0x;
    ActionResult q1 = milnor_apply(1, alpha, ring.action);
    const unsigned pu = unsigned(pv);
    RingElement expect = v1 * v2.pow(pu) * x - v1.pow(pu) * v2 * x + v1.pow(pu) * u2 * q0x - u1 * v2.pow(pu) * q0x;

    RingElement first = milnor_apply(1, v1 * u2 * x, ring.action).value;
    r.checks.push_back(check("Q_1(v1 u2 x) = v1 v2^p x", first == v1 * v2.pow(pu) * x, first.to_string()));
    r.checks.push_back(check("Q_1 computed within the degree bound", !q1.truncated));
    r.checks.push_back(check("Q_1(alpha) = v1 v2^p x - v1^p v2 x + v1^p u2 Q_0(x) - u1 v2^p Q_0(x)", q1.value == expect,
                             q1.value.to_string()));
    std::size_t terms = formal ? 4 : 2;
    r.checks.push_back(check("Q_1(alpha) has " + std::to_string(terms) + " terms", q1.value.terms().size() == terms));
    r.checks.push_back(check("Q_1(alpha) != 0", !q1.value.is_zero()));

    r.parameters.emplace_back("alpha", alpha.to_string());
    r.witness = "Q_1(alpha) = " + q1.value.to_string();
    r.verdict = !q1.value.is_zero() && r.consistent() ? Verdict::obstructed : Verdict::inconclusive;
    return r;
}

ObstructionReport qi_nonvanishing(int n, int m, Prime p)
{
    if (n < 0 || m < 1)
        throw InvalidInput("qi needs n >= 0 and m >= 1");
    int bound = m;
    int pk = 1;
    for (int k = 0; k <= n; ++k, pk *= p.value())
        bound += 2 * pk - 1;
    StandardRing ring = bmu_p_power(m, p, bound);
    RingElement x = RingElement::one(ring.pres);
    for (int i = 1; i <= m; ++i)
        x = x * RingElement::generator(ring.pres, m == 1 ? "u" : "u" + std::to_string(i));

    ObstructionReport r;
    r.check = "qi";
    r.parameters = {{"p", std::to_string(p.value())}, {"n", std::to_string(n)}, {"m", std::to_string(m)},
                    {"lambda", "1"}};
    bool truncated = false;
    for (int k = 0; k <= n; ++k) {
        ActionResult q = milnor_apply(k, x, ring.action);
        truncated = truncated || q.truncated;
        x = q.value;
    }
    r.checks.push_back(check("computed within the degree bound", !truncated));
    if (m >= n + 1)
        r.checks.push_back(check("Q_n ... Q_0(u_1 ... u_m) != 0", !x.is_zero()));
    r.witness = "Q_" + std::to_string(n) + " ... Q_0(u_1 ... u_" + std::to_string(m) + ") = " + x.to_string();
    r.verdict = !x.is_zero() && r.consistent() ? Verdict::obstructed : Verdict::inconclusive;
    return r;
}

}  // namespace steenrod
