#include "cml/instance.hpp"

#include <algorithm>

namespace cml {

Weight::Weight(Rational value) : value_(std::move(value)) {
    if (*value_ <= 0) throw UsageError("processing times must be positive, got " + to_string(*value_));
}

const Rational& Weight::value() const {
    if (!value_) throw UsageError("weight is unavailable");
    return *value_;
}

bool operator==(const Weight& a, const Weight& b) {
    if (a.available() != b.available()) return false;
    return !a.available() || *a.value_ == *b.value_;
}

Instance::Instance(std::vector<std::vector<Weight>> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) throw UsageError("instance needs at least one job");
    const std::size_t m = weights_.front().size();
    if (m == 0) throw UsageError("instance needs at least one machine");
    min_weight_.reserve(weights_.size());
    strategies_.resize(weights_.size());
    for (std::size_t u = 0; u < weights_.size(); ++u) {
        const auto& row = weights_[u];
        if (row.size() != m)
            throw UsageError("job " + std::to_string(u) + " has " + std::to_string(row.size()) +
                             " weights, expected " + std::to_string(m));
        std::optional<Rational> best;
        for (std::size_t j = 0; j < m; ++j) {
            if (!row[j].available()) continue;
            strategies_[u].push_back(j);
            if (!best || row[j].value() < *best) best = row[j].value();
        }
        if (!best) throw UsageError("job " + std::to_string(u) + " is unavailable on every machine");
        min_weight_.push_back(*best);
    }
}

const Rational& Instance::w(JobIndex u, MachineIndex j) const {
    if (u >= jobs() || j >= machines()) throw UsageError("job or machine index out of range");
    if (!weights_[u][j].available())
        throw UsageError("job " + std::to_string(u) + " is unavailable on machine " + std::to_string(j));
    return weights_[u][j].value();
}

Instance Instance::scaled(const Rational& c) const {
    if (c <= 0) throw UsageError("scale factor must be positive");
    auto rows = weights_;
    for (auto& row : rows)
        for (auto& w : row)
            if (w.available()) w = Weight(Rational(w.value() * c));
    return Instance(std::move(rows));
}

Instance make_instance(const std::vector<std::vector<long>>& weights) {
    std::vector<std::vector<Weight>> rows;
    rows.reserve(weights.size());
    for (const auto& row : weights) {
        auto& out = rows.emplace_back();
        for (long v : row) out.push_back(v == 0 ? Weight::unavailable() : Weight(Rational(v)));
    }
    return Instance(std::move(rows));
}

void validate(const Instance& inst, const Assignment& asg) {
    if (asg.machine_of.size() != inst.jobs())
        throw UsageError("assignment has " + std::to_string(asg.machine_of.size()) + " entries, instance has " +
                         std::to_string(inst.jobs()) + " jobs");
    for (JobIndex u = 0; u < inst.jobs(); ++u) {
        MachineIndex j = asg.machine_of[u];
        if (j >= inst.machines())
            throw UsageError("job " + std::to_string(u) + " assigned to nonexistent machine " + std::to_string(j));
        if (!inst.available(u, j))
            throw UsageError("job " + std::to_string(u) + " assigned to machine " + std::to_string(j) +
                             " where it is unavailable");
    }
}

std::vector<JobIndex> jobs_on(const Assignment& asg, MachineIndex j) {
    std::vector<JobIndex> out;
    for (JobIndex u = 0; u < asg.machine_of.size(); ++u)
        if (asg.machine_of[u] == j) out.push_back(u);
    return out;
}

std::vector<std::vector<JobIndex>> partition(const Instance& inst, const Assignment& asg) {
    std::vector<std::vector<JobIndex>> parts(inst.machines());
    for (JobIndex u = 0; u < asg.machine_of.size(); ++u) parts[asg.machine_of[u]].push_back(u);
    return parts;
}

Assignment min_weight_assignment(const Instance& inst) {
    Assignment asg;
    asg.machine_of.reserve(inst.jobs());
    for (JobIndex u = 0; u < inst.jobs(); ++u) {
        for (MachineIndex j : inst.strategies(u)) {
            if (inst.w(u, j) == inst.min_weight(u)) {
                asg.machine_of.push_back(j);
                break;
            }
        }
    }
    return asg;
}

Rational set_load(const Instance& inst, MachineIndex j, std::span<const JobIndex> jobs) {
    Rational total = 0;
    for (JobIndex u : jobs) total += inst.w(u, j);
    return total;
}

Rational machine_load(const Instance& inst, const Assignment& asg, MachineIndex j) {
    if (j >= inst.machines()) throw UsageError("machine index out of range");
    Rational total = 0;
    for (JobIndex u = 0; u < asg.machine_of.size(); ++u)
        if (asg.machine_of[u] == j) total += inst.w(u, j);
    return total;
}

LoadVector load_vector(const Instance& inst, const Assignment& asg) {
    LoadVector lv;
    lv.loads.assign(inst.machines(), Rational(0));
    for (JobIndex u = 0; u < asg.machine_of.size(); ++u) lv.loads[asg.machine_of[u]] += inst.w(u, asg.machine_of[u]);
    return lv;
}

Rational makespan(const LoadVector& lv) {
    Rational best = 0;
    for (const auto& l : lv.loads)
        if (l > best) best = l;
    return best;
}

Rational p_norm_power(const LoadVector& lv, unsigned p) {
    if (p == 0) throw UsageError("p-norm requires p >= 1");
    Rational total = 0;
    for (const auto& l : lv.loads) total += pow(l, p);
    return total;
}

std::string p_norm(const LoadVector& lv, unsigned p, int digits) {
    return root_decimal(p_norm_power(lv, p), p, digits);
}

}  // namespace cml
