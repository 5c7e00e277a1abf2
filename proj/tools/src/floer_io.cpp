#include "slag_cli/floer_io.hpp"

#include <stdexcept>

namespace slag::cli {

std::string tag_name(GeneratorTag tag) {
    switch (tag) {
        case GeneratorTag::Ordinary: return "ordinary";
        case GeneratorTag::Infinity0: return "infinity0";
        case GeneratorTag::InfinityPhi: return "infinityPhi";
    }
    return "ordinary";
}

GeneratorTag parse_tag(const std::string& s) {
    if (s == "ordinary") return GeneratorTag::Ordinary;
    if (s == "infinity0") return GeneratorTag::Infinity0;
    if (s == "infinityPhi") return GeneratorTag::InfinityPhi;
    throw std::invalid_argument("unknown generator tag '" + s + "'");
}

namespace {

std::string idOf(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    throw std::invalid_argument("generator ids must be strings or integers");
}

double numberOr(const Json& obj, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj.at(key).is_number()) throw std::invalid_argument(std::string("field '") + key + "' must be a number");
    return obj.at(key).get<double>();
}

}  // namespace

FloerDocument parse_floer_document(const Json& doc) {
    if (!doc.is_object()) throw std::invalid_argument("complex document must be a JSON object");
    if (!doc.contains("generators") || !doc.at("generators").is_array())
        throw std::invalid_argument("complex document needs a 'generators' array");
    FloerDocument out;
    for (const auto& g : doc.at("generators")) {
        if (!g.is_object() || !g.contains("id") || !g.contains("degree"))
            throw std::invalid_argument("each generator needs 'id' and 'degree'");
        if (!g.at("degree").is_number_integer()) throw std::invalid_argument("generator degree must be an integer");
        Generator gen;
        gen.id = idOf(g.at("id"));
        gen.degree = g.at("degree").get<int>();
        gen.fL = numberOr(g, "fL", 0.0);
        gen.fLp = numberOr(g, "fLp", 0.0);
        if (g.contains("tag")) gen.tag = parse_tag(g.at("tag").get<std::string>());
        out.generators.push_back(gen);
    }
    if (doc.contains("differential")) {
        if (!doc.at("differential").is_array()) throw std::invalid_argument("'differential' must be an array of pairs");
        for (const auto& e : doc.at("differential")) {
            if (!e.is_array() || e.size() != 2) throw std::invalid_argument("differential entries are [p, q] pairs");
            // Repeated pairs add mod 2.
            int& n = out.counts[{idOf(e.at(0)), idOf(e.at(1))}];
            n ^= 1;
        }
    }
    if (doc.contains("m")) {
        if (!doc.at("m").is_number_integer()) throw std::invalid_argument("'m' must be an integer");
        out.m = doc.at("m").get<int>();
    }
    if (doc.contains("slPair")) out.slPair = doc.at("slPair").get<bool>();
    return out;
}

Json floer_document_to_json(const FloerDocument& doc) {
    Json gens = Json::array();
    for (const auto& g : doc.generators) {
        Json j = {{"id", g.id}, {"degree", g.degree}, {"fL", g.fL}, {"fLp", g.fLp}};
        if (g.tag != GeneratorTag::Ordinary) j["tag"] = tag_name(g.tag);
        gens.push_back(j);
    }
    Json diff = Json::array();
    for (const auto& [pq, v] : doc.counts)
        if (v) diff.push_back(Json::array({pq.first, pq.second}));
    Json out = {{"generators", gens}, {"differential", diff}};
    if (doc.m) out["m"] = *doc.m;
    if (doc.slPair) out["slPair"] = true;
    return out;
}

}  // namespace slag::cli
