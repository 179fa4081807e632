#include "cml/mechanism.hpp"

#include <json.hpp>

#include <algorithm>

namespace cml {

using nlohmann::json;

namespace {

json parse_doc(const std::string& text) {
    try {
        json doc = json::parse(text);
        if (!doc.is_object()) throw ParseError("mechanism: top level must be an object");
        return doc;
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("mechanism: invalid JSON: ") + e.what());
    }
}

Rational gamma_value(const json& e) {
    if (e.is_number_integer()) return Rational(Integer(e.dump()));
    if (e.is_string()) return parse_rational(e.get<std::string>());
    throw ParseError("mechanism: gamma must be an integer or a rational string, got " + e.dump());
}

std::vector<unsigned> parts_of(const json& e) {
    if (!e.is_array()) throw ParseError("mechanism: partition must be an array");
    std::vector<unsigned> parts;
    for (const json& x : e) {
        if (!x.is_number_integer() || x.get<long long>() < 0)
            throw ParseError("mechanism: partition entries must be non-negative integers");
        parts.push_back(x.get<unsigned>());
    }
    return parts;
}

CoefficientFunction from_doc(const json& doc) {
    auto kind = doc.value("kind", std::string());
    auto dit = doc.find("d");
    if (dit == doc.end() || !dit->is_number_integer() || dit->get<long long>() < 2)
        throw ParseError("mechanism: \"d\" must be an integer >= 2");
    const unsigned d = dit->get<unsigned>();
    try {
        if (kind == "dcoord") return CoefficientFunction::dcoord(d);
        if (kind == "ccoord") return CoefficientFunction::ccoord(d);
        if (kind == "custom") {
            auto tit = doc.find("table");
            if (tit == doc.end() || !tit->is_array()) throw ParseError("mechanism: custom kind needs a \"table\" array");
            std::map<Partition, Rational> table;
            for (const json& entry : *tit) {
                if (!entry.is_object() || !entry.contains("partition") || !entry.contains("gamma"))
                    throw ParseError("mechanism: table entries need \"partition\" and \"gamma\"");
                Partition p = parts_of(entry["partition"]);
                if (std::find(p.begin(), p.end(), 0u) != p.end())
                    throw ParseError("mechanism: table partitions list positive parts only (gamma ignores zeros)");
                std::sort(p.rbegin(), p.rend());
                if (!table.emplace(p, gamma_value(entry["gamma"])).second)
                    throw ParseError("mechanism: duplicate table partition");
            }
            return CoefficientFunction::custom(d, std::move(table));
        }
    } catch (const UsageError& e) {
        throw ParseError(std::string("mechanism: ") + e.what());
    }
    throw ParseError("mechanism: unknown kind '" + kind + "'");
}

}  // namespace

CoefficientFunction parse_mechanism(const std::string& json_text) { return from_doc(parse_doc(json_text)); }

std::string mechanism_descriptor(const CoefficientFunction& cf) {
    json doc = json::object();
    doc["kind"] = cf.name();
    doc["d"] = cf.degree();
    if (cf.kind() == CoefficientKind::Custom) {
        json table = json::array();
        for (const auto& [p, g] : cf.table()) table.push_back({{"partition", p}, {"gamma", to_string(g)}});
        doc["table"] = table;
    }
    return doc.dump();
}

std::string mechanism_descriptor(const Mechanism& mech) {
    if (mech.is_baseline()) return R"({"kind":"makespan"})";
    return mechanism_descriptor(mech.coefficients());
}

CoefficientFunction parse_zero_sensitive_fixture(const std::string& json_text) {
    json doc = parse_doc(json_text);
    CoefficientFunction base = from_doc(doc);
    std::map<std::vector<unsigned>, Rational> padded;
    if (auto pit = doc.find("padded"); pit != doc.end()) {
        if (!pit->is_array()) throw ParseError("fixture: \"padded\" must be an array");
        for (const json& entry : *pit) padded[parts_of(entry.at("partition"))] = gamma_value(entry.at("gamma"));
    }
    try {
        return CoefficientFunction::zero_sensitive_fixture(base, std::move(padded));
    } catch (const UsageError& e) {
        throw ParseError(std::string("fixture: ") + e.what());
    }
}

}  // namespace cml
