#include "steenrod/presentations.h"

#include "steenrod/chern.h"
#include "steenrod/errors.h"

#include <sstream>

namespace steenrod {

namespace {

constexpr int kGrassmannianWindow = 14;

/* Fill P^j on Chern-class generators from rank roots; names[i] is the generator holding c_{i+1}. */
void chern_power_table(ActionSpec& spec, const std::vector<std::string>& names, int max_t)
{
    const auto& pres = spec.presentation();
    const Prime p = pres->prime();
    const int r = int(names.size());
    for (int i = 1; i <= r; ++i) {
        Poly ci = Poly::variable(p, chern_weights(r), std::size_t(i - 1));
        for (int j = 1; 2 * i + 2 * j * (p.value() - 1) <= max_t; ++j) {
            Poly value = act_on_chern(OpElement::power(j, p), ci, r, false).poly();
            RingElement v = RingElement::zero(pres);
            for (const auto& [e, c] : value.terms()) {
                Monomial m = pres->unit();
                for (int k = 0; k < r; ++k)
                    m[pres->require_index(names[k])] = e[k];
                v.add(m, Fp(c, p));
            }
            spec.set_power(names[i - 1], j, v);
        }
    }
}

int parse_int(const std::string& s, const std::string& what)
{
    try {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        if (used == s.size())
            return v;
    }
    catch (const std::exception&) {
    }
    throw InvalidInput("bad " + what + " '" + s + "'");
}

}  // namespace

StandardRing bmu_p_power(int s, Prime p, int degree_bound)
{
    if (s < 1)
        throw InvalidInput("bmu_p_power needs s >= 1");
    std::vector<GeneratorSpec> gens;
    auto name = [&](const char* base, int i) { return s == 1 ? std::string(base) : base + std::to_string(i); };
    for (int i = 1; i <= s; ++i) {
        gens.push_back({name("u", i), {1, 1}, GeneratorKind::exterior});
        gens.push_back({name("v", i), {2, 1}, GeneratorKind::polynomial});
    }
    auto pres = RingPresentation::create(p, gens, {}, degree_bound);
    ActionSpec spec(pres);
    for (int i = 1; i <= s; ++i) {
        spec.set_beta(name("u", i), RingElement::generator(pres, name("v", i)));
        spec.set_beta(name("v", i), RingElement::zero(pres));
    }
    return {pres, spec};
}

StandardRing elliptic(EllipticKind kind, bool formal_bx, Prime p, int degree_bound)
{
    std::vector<GeneratorSpec> gens;
    if (kind == EllipticKind::ordinary) {
        gens.push_back({"x", {1, 0}, GeneratorKind::exterior});
        gens.push_back({"z", {1, 1}, GeneratorKind::exterior});
    }
    else if (formal_bx) {
        throw InvalidInput("the supersingular curve has no class x");
    }
    gens.push_back({"y", {2, 1}, GeneratorKind::nilpotent, 2});
    if (formal_bx)
        gens.push_back({"bx", {2, 0}, GeneratorKind::nilpotent, 2});

    std::vector<Relation> rels;
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j) {
            Monomial m(gens.size(), 0);
            m[i] = m[j] = 1;
            rels.push_back({m, {}});
        }
    auto pres = RingPresentation::create(p, gens, rels, degree_bound);
    ActionSpec spec(pres);
    RingElement zero = RingElement::zero(pres);
    spec.set_beta("y", zero);
    if (kind == EllipticKind::ordinary) {
        spec.set_beta("x", formal_bx ? RingElement::generator(pres, "bx") : zero);
        spec.set_beta("z", zero);
        spec.set_powers_vanish("x");
        spec.set_powers_vanish("z");
    }
    if (formal_bx) {
        spec.set_beta("bx", zero);
        spec.set_powers_vanish("bx");
    }
    return {pres, spec};
}

StandardRing grassmannian_window(Prime p)
{
    std::vector<GeneratorSpec> gens{
        {"x", {2, 1}, GeneratorKind::polynomial},
        {"y", {4, 2}, GeneratorKind::polynomial},
        {"z", {6, 3}, GeneratorKind::polynomial},
    };
    auto pres = RingPresentation::create(p, gens, {}, kGrassmannianWindow - 1, kGrassmannianWindow);
    ActionSpec spec(pres);
    for (const char* g : {"x", "y", "z"})
        spec.set_beta(g, RingElement::zero(pres));
    chern_power_table(spec, {"x", "y", "z"}, kGrassmannianWindow - 1);
    return {pres, spec};
}

StandardRing chern_roots(int m, Prime p, int degree_bound)
{
    if (m < 1)
        throw InvalidInput("chern_roots needs m >= 1");
    std::vector<GeneratorSpec> gens;
    for (const auto& n : root_names(m))
        gens.push_back({n, {2, 1}, GeneratorKind::polynomial});
    auto pres = RingPresentation::create(p, gens, {}, degree_bound);
    ActionSpec spec(pres);
    for (const auto& n : root_names(m))
        spec.set_beta(n, RingElement::zero(pres));
    return {pres, spec};
}

StandardRing chern_classes(int r, Prime p, int degree_bound)
{
    if (r < 1)
        throw InvalidInput("chern_classes needs r >= 1");
    std::vector<GeneratorSpec> gens;
    for (int i = 1; i <= r; ++i)
        gens.push_back({"c" + std::to_string(i), {2 * i, i}, GeneratorKind::polynomial});
    auto pres = RingPresentation::create(p, gens, {}, degree_bound);
    ActionSpec spec(pres);
    for (const auto& n : chern_names(r))
        spec.set_beta(n, RingElement::zero(pres));
    chern_power_table(spec, chern_names(r), degree_bound);
    return {pres, spec};
}

StandardRing proj_space(int n, Prime p)
{
    if (n < 0)
        throw InvalidInput("proj_space needs n >= 0");
    auto pres = RingPresentation::create(p, {{"h", {2, 1}, GeneratorKind::nilpotent, n + 1}}, {}, 2 * n);
    ActionSpec spec(pres);
    spec.set_beta("h", RingElement::zero(pres));
    return {pres, spec};
}

StandardRing proj_bundle(int r, Prime p, int degree_bound)
{
    if (r < 0)
        throw InvalidInput("proj_bundle needs r >= 0");
    std::vector<GeneratorSpec> gens;
    for (int i = 1; i <= r; ++i)
        gens.push_back({"c" + std::to_string(i), {2 * i, i}, GeneratorKind::polynomial});
    gens.push_back({"hx", {2, 1}, GeneratorKind::polynomial});
    const std::size_t hx = std::size_t(r);

    /* hx * t = 0 with t = sum_i (-1)^{r-i} c_i hx^{r-i}, solved for hx^{r+1} */
    Relation rel;
    rel.lhs = Monomial(gens.size(), 0);
    rel.lhs[hx] = uint16_t(r + 1);
    for (int i = 1; i <= r; ++i) {
        Monomial m(gens.size(), 0);
        m[std::size_t(i - 1)] = 1;
        m[hx] = uint16_t(r + 1 - i);
        rel.rhs.emplace_back(m, Fp(i % 2 ? 1 : -1, p).value());
    }
    auto pres = RingPresentation::create(p, gens, {rel}, degree_bound);
    ActionSpec spec(pres);
    spec.set_beta("hx", RingElement::zero(pres));
    for (const auto& n : chern_names(r))
        spec.set_beta(n, RingElement::zero(pres));
    chern_power_table(spec, chern_names(r), degree_bound);
    return {pres, spec};
}

StandardRing point(Prime p)
{
    auto pres = RingPresentation::create(p, {}, {}, 0);
    return {pres, ActionSpec(pres)};
}

StandardRing tensor(const StandardRing& a, const StandardRing& b, int degree_bound)
{
    auto pres = tensor(*a.pres, *b.pres, degree_bound);
    return {pres, tensor(a.action, b.action, pres)};
}

StandardRing standard_presentation(const std::string& kind, Prime p, int degree_bound)
{
    if (auto star = kind.find('*'); star != std::string::npos)
        return tensor(standard_presentation(kind.substr(0, star), p, degree_bound),
                      standard_presentation(kind.substr(star + 1), p, degree_bound), degree_bound);
    std::vector<std::string> parts;
    std::stringstream ss(kind);
    for (std::string part; std::getline(ss, part, ':');)
        parts.push_back(part);
    if (parts.empty())
        throw InvalidInput("empty presentation name");
    const std::string& head = parts[0];
    auto arg = [&](std::size_t i, const std::string& what) {
        if (parts.size() <= i)
            throw InvalidInput("presentation '" + kind + "' needs a " + what);
        return parse_int(parts[i], what);
    };
    if (head == "bmu")
        return bmu_p_power(parts.size() > 1 ? arg(1, "power") : 1, p, degree_bound);
    if (head == "elliptic") {
        if (parts.size() < 2)
            throw InvalidInput("elliptic needs ordinary or supersingular");
        EllipticKind k;
        if (parts[1] == "ordinary")
            k = EllipticKind::ordinary;
        else if (parts[1] == "supersingular")
            k = EllipticKind::supersingular;
        else
            throw InvalidInput("unknown elliptic curve type '" + parts[1] + "'");
        bool bx = parts.size() > 2 && parts[2] == "bx";
        if (parts.size() > 2 && !bx)
            throw InvalidInput("unknown elliptic option '" + parts[2] + "'");
        return elliptic(k, bx, p, degree_bound);
    }
    if (head == "grassmannian")
        return grassmannian_window(p);
    if (head == "roots")
        return chern_roots(arg(1, "root count"), p, degree_bound);
    if (head == "chern")
        return chern_classes(arg(1, "rank"), p, degree_bound);
    if (head == "proj")
        return proj_space(arg(1, "dimension"), p);
    if (head == "bundle")
        return proj_bundle(arg(1, "rank"), p, degree_bound);
    if (head == "point")
        return point(p);
    throw InvalidInput("unknown presentation '" + kind + "'");
}

}  // namespace steenrod
