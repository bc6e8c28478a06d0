#include "henon/map_spec.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "henon/errors.hpp"

namespace henon {

namespace {

using nlohmann::json;

Complex parse_complex(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ValidationError(where + ": expected a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

json dump_complex(Complex z) { return json::array({z.real(), z.imag()}); }

}  // namespace

ParsedMapSpec parse_map_spec_full(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed map spec: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("factors") || !doc["factors"].is_array() ||
        doc["factors"].empty())
        throw ValidationError("map spec needs a nonempty \"factors\" array");

    std::vector<ElementaryFactor> factors;
    int idx = 0;
    for (const auto& jf : doc["factors"]) {
        const std::string where = "factor " + std::to_string(idx);
        if (!jf.is_object()) throw ValidationError(where + ": expected an object");
        for (const char* key : {"b", "c", "delta", "p"})
            if (!jf.contains(key)) throw ValidationError(where + ": missing \"" + key + "\"");
        const Complex b = parse_complex(jf["b"], where + ".b");
        const Complex c = parse_complex(jf["c"], where + ".c");
        const Complex delta = parse_complex(jf["delta"], where + ".delta");
        if (b == Complex{}) throw ValidationError(where + ": b must be nonzero");
        if (delta == Complex{}) throw ValidationError(where + ": delta must be nonzero");
        if (!jf["p"].is_array()) throw ValidationError(where + ".p: expected a coefficient list");
        std::vector<Complex> coeffs;
        for (const auto& jc : jf["p"]) coeffs.push_back(parse_complex(jc, where + ".p"));
        Polynomial p{std::move(coeffs)};
        if (p.degree() < 2) throw ValidationError(where + ": deg(p) must be >= 2");
        factors.emplace_back(b, c, delta, std::move(p));
        ++idx;
    }
    std::string name;
    if (doc.contains("name") && doc["name"].is_string()) name = doc["name"].get<std::string>();
    return {HenonChain{std::move(factors)}, std::move(name)};
}

HenonChain parse_map_spec(const std::string& text) { return parse_map_spec_full(text).chain; }

std::string serialize_map_spec(const HenonChain& chain, const std::string& name) {
    json doc;
    if (!name.empty()) doc["name"] = name;
    doc["factors"] = json::array();
    for (const auto& f : chain.factors()) {
        json jf;
        jf["b"] = dump_complex(f.b());
        jf["c"] = dump_complex(f.c());
        jf["delta"] = dump_complex(f.delta());
        jf["p"] = json::array();
        for (int k = 0; k <= f.degree(); ++k) jf["p"].push_back(dump_complex(f.p().coeff(k)));
        doc["factors"].push_back(std::move(jf));
    }
    return doc.dump(2);
}

ParsedMapSpec load_map_spec(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open map spec file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_map_spec_full(ss.str());
}

}  // namespace henon
