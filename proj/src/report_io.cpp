#include "cml/report_io.hpp"

#include <json.hpp>

#include <sstream>

namespace cml {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json rational_list(const std::vector<Rational>& values) {
    ordered_json out = ordered_json::array();
    for (const auto& v : values) out.push_back(to_string(v));
    return out;
}

}  // namespace

std::string report_json(const EquilibriumReport& report, const Instance& inst, const RunMeta& meta) {
    ordered_json doc;
    doc["format"] = kFormatTag;
    doc["tool"] = kToolVersion;
    doc["seed"] = meta.seed;
    doc["instance_id"] = meta.instance_id;
    doc["instance_digest"] = meta.instance_digest;
    doc["mechanism"] = ordered_json::parse(report.mechanism);
    doc["d"] = report.degree;
    doc["n"] = inst.jobs();
    doc["m"] = inst.machines();
    doc["opt_makespan"] = to_string(report.opt.value);
    doc["opt_witness"] = report.opt.witness.machine_of;

    ordered_json eqs = ordered_json::array();
    for (const auto& e : report.equilibria) {
        ordered_json item;
        item["machine_of"] = e.assignment.machine_of;
        item["phi"] = to_string(e.phi);
        item["loads"] = rational_list(e.loads.loads);
        item["makespan"] = to_string(e.makespan);
        item["max_completion_time_power"] = to_string(e.max_ct_power);
        item["max_completion_time"] = e.max_ct;
        item["ratio"] = e.ratio_text;
        eqs.push_back(std::move(item));
    }
    doc["equilibria"] = std::move(eqs);
    doc["poa_ratio"] = report.poa_ratio;
    doc["pos_ratio"] = report.pos_ratio;
    if (!report.equilibria.empty()) {
        doc["poa_equilibrium"] = report.poa_index;
        doc["pos_equilibrium"] = report.pos_index;
        if (report.mechanism_name != "makespan") doc["potential_minimizer"] = report.phi_min_index;
    }

    ordered_json checks = ordered_json::array();
    for (const auto& c : report.bound_checks) {
        ordered_json item;
        item["name"] = c.name;
        item["scope"] = c.scope;
        item["theoretical"] = c.theoretical;
        item["observed"] = c.observed;
        item["pass"] = c.pass;
        checks.push_back(std::move(item));
    }
    doc["bound_checks"] = std::move(checks);
    return doc.dump(2) + "\n";
}

std::string report_csv_header() { return "instance_id,mech,d,n,m,phi,max_ct,makespan,opt,ratio\n"; }

std::string report_csv_rows(const EquilibriumReport& report, const Instance& inst, const RunMeta& meta, int digits) {
    std::ostringstream os;
    const std::string opt = to_decimal(report.opt.value, digits);
    for (const auto& e : report.equilibria) {
        os << meta.instance_id << ',' << report.mechanism_name << ',' << report.degree << ',' << inst.jobs() << ','
           << inst.machines() << ',' << to_decimal(e.phi, digits) << ',' << e.max_ct << ','
           << to_decimal(e.makespan, digits) << ',' << opt << ',' << e.ratio_text << '\n';
    }
    return os.str();
}

std::string csv_preamble(const std::vector<std::pair<std::string, std::string>>& entries) {
    std::ostringstream os;
    for (const auto& [k, v] : entries) os << "# " << k << ": " << v << '\n';
    return os.str();
}

}  // namespace cml
