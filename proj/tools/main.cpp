#include "steenrod/action.h"
#include "steenrod/chern.h"
#include "steenrod/errors.h"
#include "steenrod/obstructions.h"
#include "steenrod/parse.h"
#include "steenrod/presentations.h"
#include "steenrod/ring_config.h"
#include "steenrod/table_cache.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

using namespace steenrod;
using nlohmann::json;

namespace {

constexpr int kExitFailed = 1;
constexpr int kExitParse = 2;
constexpr int kExitInvalid = 3;

struct Options {
    std::optional<std::string> cache;
    int p = 2;
    bool json_out = false;
    std::string expr;
    std::string klass;
    std::string ring;
    int max_t = 0;
    std::string bidegree;
    bool dual_count = false;
    int jobs = 1;
    int roots = 0;
    std::string wu_case;
    std::string standard;
    int bound = 0;
    int m = 0;
    int n = 0;
    int n_max = 3;
    std::string bx = "formal";
};

Prime prime_arg(int p)
{
    if (p < 2 || !is_prime(p))
        throw InvalidInput(std::to_string(p) + " is not a prime");
    return Prime(p);
}

json word_json(const Word& w, uint32_t c, Prime p)
{
    const Bidegree d = bidegree(w, p);
    return {{"word", word_to_string(w)}, {"coefficient", c}, {"bidegree", {d.t, d.w}}};
}

int cmd_normalize(const Options& o)
{
    const Prime p = prime_arg(o.p);
    OpElement e = evaluate(parse_operation(o.expr, p), p);
    if (!o.json_out) {
        std::cout << e.to_string() << "\n";
        return 0;
    }
    json terms = json::array();
    for (const auto& [w, c] : e.terms())
        terms.push_back(word_json(w, c, p));
    std::cout << json{{"prime", p.value()}, {"normal_form", e.to_string()}, {"terms", terms}}.dump(2) << "\n";
    return 0;
}

int cmd_act(const Options& o)
{
    StandardRing ring = load_ring_config(o.ring);
    const Prime p = ring.pres->prime();
    OpElement op = evaluate(parse_operation(o.expr, p), p);
    RingElement x = parse_class(o.klass, ring.pres);
    ActionResult r = apply_operation(op, x, ring.action);
    if (r.truncated)
        std::cerr << "warning: terms above degree " << ring.pres->degree_bound() << " were truncated\n";
    if (o.json_out) {
        std::cout << json{{"prime", p.value()},
                          {"operation", op.to_string()},
                          {"class", x.to_string()},
                          {"value", r.value.to_string()},
                          {"truncated", r.truncated}}
                         .dump(2)
                  << "\n";
        return 0;
    }
    std::cout << r.value.to_string() << (r.truncated ? "  [truncated]" : "") << "\n";
    return 0;
}

std::optional<Bidegree> parse_bidegree(const std::string& text)
{
    if (text.empty())
        return std::nullopt;
    int t = 0, w = 0;
    char comma = 0;
    std::istringstream in(text);
    if (!(in >> t >> comma >> w) || comma != ',' || !(in >> std::ws).eof())
        throw InvalidInput("--bidegree expects t,w");
    return Bidegree{t, w};
}

int cmd_basis(const Options& o, TableCache& cache)
{
    const Prime p = prime_arg(o.p);
    if (o.max_t < 0)
        throw InvalidInput("--max-t must be nonnegative");
    if (o.jobs < 1)
        throw InvalidInput("--jobs must be positive");
    const auto only = parse_bidegree(o.bidegree);
    const int top = only ? std::min(o.max_t, only->t) : o.max_t;

    std::vector<std::optional<std::vector<Word>>> slices(std::size_t(top) + 1);
    std::vector<int> missing;
    for (int t = 0; t <= top; ++t) {
        if (only && t != only->t)
            continue;
        slices[std::size_t(t)] = cache.basis(p, t);
        if (!slices[std::size_t(t)])
            missing.push_back(t);
    }
    std::vector<std::vector<Word>> computed(missing.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < missing.size();)
            computed[i] = admissible_basis_in_degree(missing[i], p);
    };
    std::vector<std::thread> pool;
    for (int j = 1; j < std::min<int>(o.jobs, int(missing.size())); ++j)
        pool.emplace_back(worker);
    worker();
    for (auto& th : pool)
        th.join();
    for (std::size_t i = 0; i < missing.size(); ++i) {
        cache.put_basis(p, missing[i], computed[i]);
        slices[std::size_t(missing[i])] = std::move(computed[i]);
    }

    std::map<Bidegree, uint64_t> counts;
    for (int t = 0; t <= top; ++t) {
        if (!slices[std::size_t(t)])
            continue;
        for (const Word& w : *slices[std::size_t(t)]) {
            Bidegree d = bidegree(w, p);
            if (only && d != *only)
                continue;
            ++counts[d];
            std::cout << d << " " << word_to_string(w) << "\n";
        }
    }
    if (o.dual_count) {
        std::vector<Bidegree> degrees;
        if (only) {
            degrees.push_back(*only);
        }
        else {
            // every bidegree with a Milnor monomial, so empty admissible slots show up too
            for (int t = 0; t <= top; ++t)
                for (int w = 0; w <= t; ++w)
                    if (counts.count({t, w}) || milnor_monomial_count({t, w}, p) > 0)
                        degrees.push_back({t, w});
        }
        for (const Bidegree& d : degrees) {
            uint64_t dual = milnor_monomial_count(d, p);
            std::cout << "count " << d << " admissible " << counts[d] << " milnor " << dual
                      << (counts[d] == dual ? "" : "  MISMATCH") << "\n";
        }
    }
    return 0;
}

int cmd_coproduct(const Options& o)
{
    const Prime p = prime_arg(o.p);
    OpElement e = evaluate(parse_operation(o.expr, p), p);
    std::cout << coproduct(e).to_string() << "\n";
    return 0;
}

int cmd_chern_act(const Options& o)
{
    const Prime p = prime_arg(o.p);
    if (o.roots < 1 || o.roots > 12)
        throw InvalidInput("--roots must be between 1 and 12");
    OpElement op = evaluate(parse_operation(o.expr, p), p);
    std::vector<GeneratorSpec> gens;
    for (int i = 1; i <= o.roots; ++i)
        gens.push_back({"c" + std::to_string(i), {2 * i, i}, GeneratorKind::polynomial, 0});
    auto pres = RingPresentation::create(p, gens, {}, 4000);
    RingElement x = parse_class(o.klass, pres);
    Poly chern(p, chern_weights(o.roots));
    for (const auto& [m, c] : x.terms())
        chern.add(Poly::Exps(m.begin(), m.end()), Fp(c, p));
    ChernSeries r = act_on_chern(op, chern, o.roots, false);
    std::cout << r.to_string() << "\n";
    std::cout << "roots: " << chern_to_roots(r.poly(), o.roots).to_string(root_names(o.roots)) << "\n";
    return 0;
}

int print_wu(const WuReport& r)
{
    std::cout << "class " << r.class_text << "\n  lhs " << r.lhs << "\n  rhs " << r.rhs << "\n  "
              << (r.equal ? "equal" : "NOT EQUAL") << "\n";
    return r.equal ? 0 : kExitFailed;
}

int cmd_wu_check(const Options& o)
{
    const Prime p = prime_arg(o.p);
    auto colon = o.wu_case.find(':');
    if (colon == std::string::npos)
        throw InvalidInput("--case expects proj:<n> or zero:<r>");
    const std::string kind = o.wu_case.substr(0, colon);
    int n = 0;
    try {
        std::size_t used = 0;
        n = std::stoi(o.wu_case.substr(colon + 1), &used);
        if (used != o.wu_case.size() - colon - 1)
            throw std::invalid_argument(o.wu_case);
    }
    catch (const std::exception&) {
        throw InvalidInput("--case expects proj:<n> or zero:<r>");
    }
    if (n < 0 || n > 32)
        throw InvalidInput("--case dimension must be between 0 and 32");
    int status = 0;
    if (kind == "proj") {
        StandardRing ring = proj_space(n, p);
        std::vector<RingElement> classes;
        if (!o.klass.empty())
            classes.push_back(parse_class(o.klass, ring.pres));
        else
            for (int k = 0; k <= n; ++k)
                classes.push_back(RingElement::generator(ring.pres, "h").pow(unsigned(k)));
        for (const auto& x : classes)
            status = std::max(status, print_wu(verify_wu_proj(n, x)));
    }
    else if (kind == "zero") {
        ThomModel model = thom_model(n, p, 4 * n + 4 * (p.value() - 1) * n + 8);
        std::vector<RingElement> classes;
        if (!o.klass.empty()) {
            classes.push_back(parse_class(o.klass, model.ring.pres));
        }
        else {
            classes.push_back(RingElement::one(model.ring.pres));
            for (int i = 1; i <= n; ++i)
                classes.push_back(RingElement::generator(model.ring.pres, "c" + std::to_string(i)));
        }
        for (const auto& z : classes)
            status = std::max(status, print_wu(verify_wu_zero(model, z)));
    }
    else {
        throw InvalidInput("--case expects proj:<n> or zero:<r>");
    }
    return status;
}

int print_report(const ObstructionReport& r, bool as_json)
{
    if (as_json) {
        json params = json::object();
        for (const auto& [k, v] : r.parameters)
            params[k] = v;
        json checks = json::array();
        for (const auto& c : r.checks)
            checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        std::cout << json{{"check", r.check},
                          {"verdict", to_string(r.verdict)},
                          {"witness", r.witness},
                          {"parameters", params},
                          {"checks", checks},
                          {"consistent", r.consistent()}}
                         .dump(2)
                  << "\n";
    }
    else {
        std::cout << "check: " << r.check << "\n";
        for (const auto& [k, v] : r.parameters)
            std::cout << "parameter " << k << " = " << v << "\n";
        std::cout << "verdict: " << to_string(r.verdict) << "\n";
        std::cout << "witness: " << r.witness << "\n";
        for (const auto& c : r.checks)
            std::cout << (c.passed ? "  [pass] " : "  [FAIL] ") << c.name << (c.detail.empty() ? "" : ": ")
                      << c.detail << "\n";
    }
    return r.consistent() ? 0 : kExitFailed;
}

int cmd_export_ring(const Options& o)
{
    const Prime p = prime_arg(o.p);
    if (o.bound < 0)
        throw InvalidInput("--bound must be nonnegative");
    std::cout << ring_to_json_text(standard_presentation(o.standard, p, o.bound));
    return 0;
}

int run(int argc, char** argv)
{
    Options o;
    CLI::App app{"Exact computations in the mod-p motivic Steenrod algebra"};
    app.require_subcommand(1);
    app.add_option("--cache", o.cache,
                   std::string("Table cache directory, or 'none'; defaults to $") + kCacheEnvVar);

    auto prime_opt = [&](CLI::App* sub) { sub->add_option("-p,--prime", o.p, "Prime")->required(); };

    auto* normalize = app.add_subcommand("normalize", "Admissible form of an operation");
    prime_opt(normalize);
    normalize->add_option("expr", o.expr, "Operation, e.g. \"P^1 P^1\"")->required();
    normalize->add_flag("--json", o.json_out, "Structured output");

    auto* act = app.add_subcommand("act", "Apply an operation to a class of a ring");
    act->add_option("--ring", o.ring, "Ring config file")->required();
    act->add_option("expr", o.expr, "Operation")->required();
    act->add_option("class", o.klass, "Class, e.g. \"u1 u2\"")->required();
    act->add_flag("--json", o.json_out, "Structured output");

    auto* basis = app.add_subcommand("basis", "Admissible monomials by degree");
    prime_opt(basis);
    basis->add_option("--max-t", o.max_t, "Largest topological degree")->required();
    basis->add_option("--bidegree", o.bidegree, "Only this bidegree, as t,w");
    basis->add_flag("--dual-count", o.dual_count, "Compare with the dual Milnor monomial count");
    basis->add_option("--jobs", o.jobs, "Worker threads")->default_val(1);

    auto* coprod = app.add_subcommand("coproduct", "Coproduct of an operation");
    prime_opt(coprod);
    coprod->add_option("expr", o.expr, "Operation")->required();

    auto* chern = app.add_subcommand("chern-act", "Apply an operation to a polynomial in Chern classes");
    prime_opt(chern);
    chern->add_option("--roots", o.roots, "Number of Chern roots")->required();
    chern->add_option("expr", o.expr, "Operation")->required();
    chern->add_option("class", o.klass, "Polynomial in c1..cm")->required();

    auto* wu = app.add_subcommand("wu-check", "Check the Wu formula");
    prime_opt(wu);
    wu->add_option("--case", o.wu_case, "proj:<n> or zero:<r>")->required();
    wu->add_option("--class", o.klass, "Class to push forward; defaults to a spanning list");

    auto* exp = app.add_subcommand("export-ring", "Print a standard presentation as a ring config");
    prime_opt(exp);
    exp->add_option("--standard", o.standard, "Name, e.g. bmu:2 or elliptic:ordinary:bx")->required();
    exp->add_option("--bound", o.bound, "Degree bound")->required();

    auto* obstruct = app.add_subcommand("obstruct", "Run an obstruction check");
    obstruct->require_subcommand(1);
    obstruct->add_flag("--json", o.json_out, "Structured output");
    auto* grass = obstruct->add_subcommand("grassmannian", "Sq^2 obstruction in the Grassmannian window");
    auto* oddp = obstruct->add_subcommand("oddp", "P^1 obstruction for odd p");
    prime_opt(oddp);
    oddp->add_option("--m", o.m, "Number of roots; defaults to the smallest admissible m");
    auto* tate = obstruct->add_subcommand("tate", "Q_1 counterexample on (B mu_p)^2 times an elliptic curve");
    prime_opt(tate);
    tate->add_option("--bx", o.bx, "Regime for beta(x)")->check(CLI::IsMember({"zero", "formal"}));
    auto* qi = obstruct->add_subcommand("qi", "Nonvanishing of Q_n ... Q_0 (u_1 ... u_m)");
    prime_opt(qi);
    qi->add_option("-n", o.n, "Top Milnor index")->required();
    qi->add_option("-m", o.m, "Number of B mu_p factors")->required();
    auto* screen = obstruct->add_subcommand("screen", "Milnor primitive screen of a class");
    screen->add_option("--ring", o.ring, "Ring config file")->required();
    screen->add_option("class", o.klass, "Class")->required();
    screen->add_option("--n-max", o.n_max, "Largest Milnor index")->default_val(3);
    for (auto* sub : {grass, oddp, tate, qi, screen})
        sub->add_flag("--json", o.json_out, "Structured output");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::Success& e) {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParse;
    }

    TableCache cache(TableCache::resolve_dir(o.cache));
    cache.load_adem();
    int status = 0;
    if (*normalize)
        status = cmd_normalize(o);
    else if (*act)
        status = cmd_act(o);
    else if (*basis)
        status = cmd_basis(o, cache);
    else if (*coprod)
        status = cmd_coproduct(o);
    else if (*chern)
        status = cmd_chern_act(o);
    else if (*wu)
        status = cmd_wu_check(o);
    else if (*exp)
        status = cmd_export_ring(o);
    else if (*grass)
        status = print_report(grassmannian_p2_check(), o.json_out);
    else if (*oddp) {
        const Prime p = prime_arg(o.p);
        status = print_report(oddp_check(p, o.m ? o.m : oddp_find_m(p)), o.json_out);
    }
    else if (*tate)
        status = print_report(tate_counterexample(prime_arg(o.p), o.bx == "zero" ? BxRegime::zero : BxRegime::formal),
                              o.json_out);
    else if (*qi)
        status = print_report(qi_nonvanishing(o.n, o.m, prime_arg(o.p)), o.json_out);
    else if (*screen) {
        StandardRing ring = load_ring_config(o.ring);
        status = print_report(mgl_screen(parse_class(o.klass, ring.pres), ring.action, o.n_max), o.json_out);
    }
    cache.store_adem();
    cache.flush();
    for (const auto& w : cache.warnings())
        std::cerr << "warning: " << w << "\n";
    return status;
}

}  // namespace

int main(int argc, char** argv)
{
    try {
        return run(argc, argv);
    }
    catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    catch (const VerificationFailure& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return kExitFailed;
    }
    catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    catch (const MissingAction& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    catch (const WindowExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitFailed;
    }
}
