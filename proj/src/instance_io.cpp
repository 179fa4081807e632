#include "cml/instance.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <sstream>

namespace cml {

using nlohmann::json;

namespace {

json parse_json(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string(what) + ": invalid JSON: " + e.what());
    }
}

void check_format(const json& doc, const char* what) {
    if (!doc.is_object()) throw ParseError(std::string(what) + ": top level must be an object");
    auto it = doc.find("format");
    if (it == doc.end()) throw ParseError(std::string(what) + ": missing \"format\"");
    if (!it->is_string() || it->get<std::string>() != kFormatTag)
        throw ParseError(std::string(what) + ": unsupported format " + it->dump());
}

std::size_t positive_count(const json& doc, const char* key) {
    auto it = doc.find(key);
    if (it == doc.end() || !it->is_number_integer() || it->get<long long>() < 1)
        throw ParseError(std::string("instance: \"") + key + "\" must be a positive integer");
    return it->get<std::size_t>();
}

Rational entry_value(const json& e) {
    if (e.is_number_integer()) return Rational(Integer(e.dump()));
    if (e.is_string()) return parse_rational(e.get<std::string>());
    if (e.is_number_float())
        throw ParseError("floating-point literal " + e.dump() + "; write decimals as strings");
    throw ParseError("unsupported weight entry " + e.dump());
}

std::string entry_text(const Weight& w) {
    if (!w.available()) return "null";
    const Rational& v = w.value();
    if (v.get_den() == 1) return v.get_num().get_str();
    return "\"" + to_string(v) + "\"";
}

}  // namespace

Instance parse_instance(const std::string& json_text) {
    json doc = parse_json(json_text, "instance");
    check_format(doc, "instance");
    const std::size_t n = positive_count(doc, "n");
    const std::size_t m = positive_count(doc, "m");
    auto wit = doc.find("weights");
    if (wit == doc.end() || !wit->is_array()) throw ParseError("instance: \"weights\" must be an array");
    if (wit->size() != n)
        throw ParseError("instance: weights has " + std::to_string(wit->size()) + " rows, n = " + std::to_string(n));

    std::vector<std::vector<Weight>> rows;
    rows.reserve(n);
    for (std::size_t u = 0; u < n; ++u) {
        const json& row = (*wit)[u];
        if (!row.is_array() || row.size() != m)
            throw ParseError("instance: row " + std::to_string(u) + " must have m = " + std::to_string(m) + " entries");
        auto& out = rows.emplace_back();
        for (const json& e : row) {
            if (e.is_null()) {
                out.push_back(Weight::unavailable());
                continue;
            }
            Rational v = entry_value(e);
            if (v <= 0) throw ParseError("instance: non-positive weight " + e.dump() + " in row " + std::to_string(u));
            out.emplace_back(std::move(v));
        }
    }

    std::optional<Instance> inst;
    try {
        inst.emplace(std::move(rows));
    } catch (const UsageError& e) {
        throw ParseError(std::string("instance: ") + e.what());
    }

    if (auto mw = doc.find("min_weight"); mw != doc.end()) {
        if (!mw->is_array() || mw->size() != n) throw ParseError("instance: \"min_weight\" must have n entries");
        for (std::size_t u = 0; u < n; ++u) {
            Rational given = entry_value((*mw)[u]);
            if (given != inst->min_weight(u))
                throw ParseError("instance: min_weight[" + std::to_string(u) + "] = " + to_string(given) +
                                 " but the row minimum is " + to_string(inst->min_weight(u)));
        }
    }
    return std::move(*inst);
}

std::string serialize_instance(const Instance& inst) {
    std::ostringstream os;
    os << "{\n  \"format\": \"" << kFormatTag << "\",\n  \"n\": " << inst.jobs() << ",\n  \"m\": " << inst.machines()
       << ",\n  \"weights\": [\n";
    for (JobIndex u = 0; u < inst.jobs(); ++u) {
        os << "    [";
        for (MachineIndex j = 0; j < inst.machines(); ++j) os << (j ? ", " : "") << entry_text(inst.weight(u, j));
        os << "]" << (u + 1 < inst.jobs() ? "," : "") << "\n";
    }
    os << "  ]\n}\n";
    return os.str();
}

Assignment parse_assignment(const std::string& json_text) {
    json doc = parse_json(json_text, "assignment");
    check_format(doc, "assignment");
    auto it = doc.find("machine_of");
    if (it == doc.end() || !it->is_array()) throw ParseError("assignment: \"machine_of\" must be an array");
    Assignment asg;
    for (const json& e : *it) {
        if (!e.is_number_integer() || e.get<long long>() < 0)
            throw ParseError("assignment: machine indices must be non-negative integers, got " + e.dump());
        asg.machine_of.push_back(e.get<MachineIndex>());
    }
    return asg;
}

std::string serialize_assignment(const Assignment& asg) {
    json doc = json::object();
    doc["format"] = kFormatTag;
    doc["machine_of"] = asg.machine_of;
    return doc.dump() + "\n";
}

std::string instance_digest(const Instance& inst) {
    const std::string text = serialize_instance(inst);
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr);
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out << contents;
    if (!out) throw UsageError("write to '" + path + "' failed");
}

}  // namespace cml
