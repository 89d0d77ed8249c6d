#include "steenrod/ring_config.h"

#include "steenrod/errors.h"
#include "steenrod/parse.h"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace steenrod {

using nlohmann::json;

namespace {

class Loader {
public:
    explicit Loader(std::string source) : source_(std::move(source)) {}

    [[noreturn]] void fail(const std::string& path, const std::string& message) const
    {
        throw InvalidInput("ring config " + source_ + ": " + path + ": " + message);
    }

    const json& field(const json& obj, const std::string& path, const char* key) const
    {
        auto it = obj.find(key);
        if (it == obj.end())
            fail(path, std::string("missing field '") + key + "'");
        return *it;
    }

    int integer(const json& v, const std::string& path) const
    {
        if (!v.is_number_integer())
            fail(path, "expected an integer");
        auto x = v.get<int64_t>();
        if (x < -1000000 || x > 1000000)
            fail(path, "integer out of range");
        return int(x);
    }

    std::string string(const json& v, const std::string& path) const
    {
        if (!v.is_string())
            fail(path, "expected a string");
        return v.get<std::string>();
    }

    void only_keys(const json& obj, const std::string& path, std::set<std::string> allowed) const
    {
        if (!obj.is_object())
            fail(path, "expected an object");
        for (const auto& [k, v] : obj.items())
            if (!allowed.count(k))
                fail(path, "unknown field '" + k + "'");
    }

    RingElement element(const std::string& text, const PresentationPtr& pres, const std::string& path) const
    {
        try {
            return parse_class(text, pres);
        }
        catch (const ParseError& e) {
            fail(path, e.what());
        }
        catch (const InvalidInput& e) {
            fail(path, e.what());
        }
    }

    StandardRing load(const json& root) const
    {
        only_keys(root, "$", {"format", "version", "prime", "degree_bound", "window", "standard", "generators",
                              "relations", "action"});
        if (string(field(root, "$", "format"), "$.format") != "steenrod-ring")
            fail("$.format", "expected \"steenrod-ring\"");
        int version = integer(field(root, "$", "version"), "$.version");
        if (version != kRingConfigVersion)
            fail("$.version", "unsupported version " + std::to_string(version));
        int pv = integer(field(root, "$", "prime"), "$.prime");
        if (pv < 2 || !is_prime(pv))
            fail("$.prime", std::to_string(pv) + " is not a prime");
        const Prime p(pv);
        int bound = integer(field(root, "$", "degree_bound"), "$.degree_bound");
        if (bound < 0)
            fail("$.degree_bound", "must be nonnegative");

        if (root.contains("standard")) {
            for (const char* k : {"generators", "relations", "action", "window"})
                if (root.contains(k))
                    fail("$", std::string("'standard' excludes '") + k + "'");
            std::string name = string(root["standard"], "$.standard");
            try {
                return standard_presentation(name, p, bound);
            }
            catch (const InvalidInput& e) {
                fail("$.standard", e.what());
            }
        }

        std::optional<int> window;
        if (root.contains("window"))
            window = integer(root["window"], "$.window");

        std::vector<GeneratorSpec> gens;
        const json& jg = field(root, "$", "generators");
        if (!jg.is_array())
            fail("$.generators", "expected an array");
        for (std::size_t i = 0; i < jg.size(); ++i) {
            const std::string path = "$.generators[" + std::to_string(i) + "]";
            const json& g = jg[i];
            only_keys(g, path, {"name", "bidegree", "kind", "order"});
            GeneratorSpec spec;
            spec.name = string(field(g, path, "name"), path + ".name");
            const json& bd = field(g, path, "bidegree");
            if (!bd.is_array() || bd.size() != 2)
                fail(path + ".bidegree", "expected [t, w]");
            spec.degree = {integer(bd[0], path + ".bidegree[0]"), integer(bd[1], path + ".bidegree[1]")};
            std::string kind = g.contains("kind") ? string(g["kind"], path + ".kind") : "polynomial";
            if (kind == "polynomial")
                spec.kind = GeneratorKind::polynomial;
            else if (kind == "exterior")
                spec.kind = GeneratorKind::exterior;
            else if (kind == "nilpotent")
                spec.kind = GeneratorKind::nilpotent;
            else
                fail(path + ".kind", "unknown kind '" + kind + "'");
            if (g.contains("order")) {
                if (spec.kind != GeneratorKind::nilpotent)
                    fail(path + ".order", "only nilpotent generators have an order");
                spec.order = integer(g["order"], path + ".order");
            }
            else if (spec.kind == GeneratorKind::nilpotent) {
                fail(path, "nilpotent generators need an order");
            }
            gens.push_back(spec);
        }

        std::vector<Relation> rels;
        if (root.contains("relations")) {
            PresentationPtr free_pres;
            try {
                free_pres = RingPresentation::create(p, gens, {}, bound);
            }
            catch (const InvalidInput& e) {
                fail("$.generators", e.what());
            }
            const json& jr = root["relations"];
            if (!jr.is_array())
                fail("$.relations", "expected an array");
            for (std::size_t i = 0; i < jr.size(); ++i) {
                const std::string path = "$.relations[" + std::to_string(i) + "]";
                only_keys(jr[i], path, {"lhs", "rhs"});
                RingElement lhs = element(string(field(jr[i], path, "lhs"), path + ".lhs"), free_pres, path + ".lhs");
                RingElement rhs = element(string(field(jr[i], path, "rhs"), path + ".rhs"), free_pres, path + ".rhs");
                if (lhs.terms().size() != 1)
                    fail(path + ".lhs", "expected a single nonzero monomial");
                const auto& [m, c] = *lhs.terms().begin();
                Fp inv = Fp(c, p).inverse();
                Relation rel{m, {}};
                for (const auto& [rm, rc] : rhs.terms())
                    rel.rhs.emplace_back(rm, (Fp(rc, p) * inv).value());
                rels.push_back(std::move(rel));
            }
        }

        PresentationPtr pres;
        try {
            pres = RingPresentation::create(p, gens, rels, bound, window);
        }
        catch (const InvalidInput& e) {
            fail("$", e.what());
        }
        ActionSpec action(pres);

        if (root.contains("action")) {
            const json& ja = root["action"];
            only_keys(ja, "$.action", {"beta", "power", "powers_vanish"});
            auto set = [&](const std::string& path, auto&& f) {
                try {
                    f();
                }
                catch (const InvalidInput& e) {
                    fail(path, e.what());
                }
            };
            if (ja.contains("beta")) {
                if (!ja["beta"].is_object())
                    fail("$.action.beta", "expected an object");
                for (const auto& [g, v] : ja["beta"].items()) {
                    const std::string path = "$.action.beta." + g;
                    RingElement value = element(string(v, path), pres, path);
                    set(path, [&] { action.set_beta(g, value); });
                }
            }
            if (ja.contains("power")) {
                if (!ja["power"].is_object())
                    fail("$.action.power", "expected an object");
                for (const auto& [g, table] : ja["power"].items()) {
                    if (!table.is_object())
                        fail("$.action.power." + g, "expected an object keyed by i");
                    for (const auto& [key, v] : table.items()) {
                        const std::string path = "$.action.power." + g + "." + key;
                        int i = 0;
                        try {
                            std::size_t used = 0;
                            i = std::stoi(key, &used);
                            if (used != key.size())
                                throw std::invalid_argument(key);
                        }
                        catch (const std::exception&) {
                            fail(path, "power index must be an integer");
                        }
                        RingElement value = element(string(v, path), pres, path);
                        set(path, [&] { action.set_power(g, i, value); });
                    }
                }
            }
            if (ja.contains("powers_vanish")) {
                const json& jv = ja["powers_vanish"];
                if (!jv.is_array())
                    fail("$.action.powers_vanish", "expected an array");
                for (std::size_t i = 0; i < jv.size(); ++i) {
                    const std::string path = "$.action.powers_vanish[" + std::to_string(i) + "]";
                    std::string g = string(jv[i], path);
                    set(path, [&] { action.set_powers_vanish(g); });
                }
            }
        }
        return {pres, action};
    }

private:
    std::string source_;
};

std::string kind_name(GeneratorKind k)
{
    switch (k) {
    case GeneratorKind::polynomial:
        return "polynomial";
    case GeneratorKind::exterior:
        return "exterior";
    case GeneratorKind::nilpotent:
        return "nilpotent";
    }
    return "polynomial";
}

}  // namespace

StandardRing ring_from_json_text(const std::string& text, const std::string& source)
{
    json root;
    try {
        root = json::parse(text);
    }
    catch (const json::parse_error& e) {
        throw InvalidInput("ring config " + source + ": invalid JSON at byte " + std::to_string(e.byte));
    }
    return Loader(source).load(root);
}

StandardRing load_ring_config(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InvalidInput("cannot read ring config " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ring_from_json_text(ss.str(), path);
}

std::string ring_to_json_text(const StandardRing& ring)
{
    const auto& pres = *ring.pres;
    nlohmann::ordered_json root;
    root["format"] = "steenrod-ring";
    root["version"] = kRingConfigVersion;
    root["prime"] = pres.prime().value();
    root["degree_bound"] = pres.degree_bound();
    if (pres.window())
        root["window"] = *pres.window();

    nlohmann::ordered_json gens = nlohmann::ordered_json::array();
    for (const auto& g : pres.generators()) {
        nlohmann::ordered_json jg;
        jg["name"] = g.name;
        jg["bidegree"] = {g.degree.t, g.degree.w};
        jg["kind"] = kind_name(g.kind);
        if (g.kind == GeneratorKind::nilpotent)
            jg["order"] = g.order;
        gens.push_back(jg);
    }
    root["generators"] = gens;

    if (!pres.relations().empty()) {
        nlohmann::ordered_json rels = nlohmann::ordered_json::array();
        for (const auto& r : pres.relations()) {
            std::string rhs;
            for (const auto& [m, c] : r.rhs) {
                int64_t v = Fp(c, pres.prime()).centered();
                std::string mono = pres.monomial_to_string(m);
                std::string mag = std::to_string(v < 0 ? -v : v);
                std::string body = mono == "1" ? mag : (mag == "1" ? mono : mag + "*" + mono);
                if (rhs.empty())
                    rhs = v < 0 ? "-" + body : body;
                else
                    rhs += (v < 0 ? " - " : " + ") + body;
            }
            rels.push_back({{"lhs", pres.monomial_to_string(r.lhs)}, {"rhs", rhs.empty() ? "0" : rhs}});
        }
        root["relations"] = rels;
    }

    nlohmann::ordered_json action = nlohmann::ordered_json::object();
    nlohmann::ordered_json beta = nlohmann::ordered_json::object();
    for (std::size_t g = 0; g < pres.size(); ++g)
        if (const auto& b = ring.action.beta_of(g))
            beta[pres.generators()[g].name] = b->to_string();
    if (!beta.empty())
        action["beta"] = beta;
    nlohmann::ordered_json power = nlohmann::ordered_json::object();
    for (const auto& [key, value] : ring.action.power_table())
        power[pres.generators()[key.first].name][std::to_string(key.second)] = value.to_string();
    if (!power.empty())
        action["power"] = power;
    nlohmann::ordered_json vanish = nlohmann::ordered_json::array();
    for (std::size_t g = 0; g < pres.size(); ++g)
        if (ring.action.powers_vanish(g))
            vanish.push_back(pres.generators()[g].name);
    if (!vanish.empty())
        action["powers_vanish"] = vanish;
    if (!action.empty())
        root["action"] = action;
    return root.dump(2) + "\n";
}

}  // namespace steenrod
