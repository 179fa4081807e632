#include "cml/analysis.hpp"

#include <algorithm>
#include <numeric>

namespace cml {

namespace {

void check_cap(const Instance& inst, std::uint64_t cap) {
    const double need = candidate_count(inst);
    if (need > static_cast<double>(cap))
        throw CapExceeded("exhaustive makespan search needs " +
                              std::to_string(static_cast<unsigned long long>(need)) + " assignments, cap is " +
                              std::to_string(cap),
                          need);
}

void decode(const Instance& inst, std::uint64_t index, Assignment& out) {
    out.machine_of.resize(inst.jobs());
    for (std::size_t u = inst.jobs(); u-- > 0;) {
        const auto& s = inst.strategies(u);
        out.machine_of[u] = s[index % s.size()];
        index /= s.size();
    }
}

Rational assignment_makespan(const Instance& inst, const Assignment& asg, std::vector<Rational>& loads) {
    loads.assign(inst.machines(), Rational(0));
    for (JobIndex u = 0; u < inst.jobs(); ++u) loads[asg.machine_of[u]] += inst.w(u, asg.machine_of[u]);
    return *std::max_element(loads.begin(), loads.end());
}

}  // namespace

OptimalMakespan optimal_makespan_serial(const Instance& inst, std::uint64_t cap) {
    check_cap(inst, cap);
    const auto total = static_cast<std::uint64_t>(candidate_count(inst));
    std::vector<Rational> loads;
    Assignment asg;
    std::optional<OptimalMakespan> best;
    for (std::uint64_t k = 0; k < total; ++k) {
        decode(inst, k, asg);
        Rational value = assignment_makespan(inst, asg, loads);
        if (!best || value < best->value) best = OptimalMakespan{value, asg};
    }
    return std::move(*best);
}

OptimalMakespan optimal_makespan_exhaustive(const Instance& inst, std::uint64_t cap) {
    check_cap(inst, cap);
    const auto total = static_cast<std::int64_t>(candidate_count(inst));
    Rational best_value = -1;
    std::int64_t best_index = -1;

#pragma omp parallel
    {
        std::vector<Rational> loads;
        Assignment asg;
        Rational local_value = -1;
        std::int64_t local_index = -1;
#pragma omp for schedule(static) nowait
        for (std::int64_t k = 0; k < total; ++k) {
            decode(inst, static_cast<std::uint64_t>(k), asg);
            Rational value = assignment_makespan(inst, asg, loads);
            if (local_index < 0 || value < local_value) {
                local_value = value;
                local_index = k;
            }
        }
#pragma omp critical(cml_optimal_merge)
        if (local_index >= 0 &&
            (best_index < 0 || local_value < best_value || (local_value == best_value && local_index < best_index))) {
            best_value = local_value;
            best_index = local_index;
        }
    }
    OptimalMakespan out;
    out.value = best_value;
    decode(inst, static_cast<std::uint64_t>(best_index), out.witness);
    return out;
}

OptimalMakespan optimal_makespan_bnb(const Instance& inst) {
    const std::size_t n = inst.jobs();
    const std::size_t m = inst.machines();

    // Largest jobs first tightens the bound early.
    std::vector<JobIndex> order(n);
    std::iota(order.begin(), order.end(), JobIndex{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](JobIndex a, JobIndex b) { return inst.min_weight(a) > inst.min_weight(b); });

    // suffix_min_sum[k]: sum of min weights of order[k..]
    std::vector<Rational> suffix_min_sum(n + 1, Rational(0));
    std::vector<Rational> suffix_max_min(n + 1, Rational(0));
    for (std::size_t k = n; k-- > 0;) {
        suffix_min_sum[k] = suffix_min_sum[k + 1] + inst.min_weight(order[k]);
        suffix_max_min[k] = std::max(suffix_max_min[k + 1], inst.min_weight(order[k]));
    }

    // Greedy incumbent: each job where it finishes the machine lowest.
    Assignment best_asg;
    best_asg.machine_of.assign(n, 0);
    std::vector<Rational> loads(m, Rational(0));
    for (JobIndex u : order) {
        MachineIndex pick = inst.strategies(u).front();
        for (MachineIndex j : inst.strategies(u))
            if (loads[j] + inst.w(u, j) < loads[pick] + inst.w(u, pick)) pick = j;
        loads[pick] += inst.w(u, pick);
        best_asg.machine_of[u] = pick;
    }
    Rational best = *std::max_element(loads.begin(), loads.end());

    std::fill(loads.begin(), loads.end(), Rational(0));
    Assignment current;
    current.machine_of.assign(n, 0);
    Rational placed_sum = 0;

    auto rec = [&](auto&& self, std::size_t k, const Rational& current_max) -> void {
        if (k == n) {
            if (current_max < best) {
                best = current_max;
                best_asg = current;
            }
            return;
        }
        Rational average = (placed_sum + suffix_min_sum[k]) / Rational(static_cast<long>(m));
        Rational bound = std::max({current_max, suffix_max_min[k], average});
        if (bound >= best) return;
        const JobIndex u = order[k];
        for (MachineIndex j : inst.strategies(u)) {
            const Rational& w = inst.w(u, j);
            Rational next = loads[j] + w;
            if (next >= best) continue;
            loads[j] = next;
            placed_sum += w;
            current.machine_of[u] = j;
            self(self, k + 1, std::max(current_max, next));
            placed_sum -= w;
            loads[j] -= w;
        }
    };
    rec(rec, 0, Rational(0));
    return {best, best_asg};
}

OptimalMakespan optimal_makespan(const Instance& inst, std::uint64_t cap, OptimalMethod method) {
    switch (method) {
        case OptimalMethod::Exhaustive:
            return optimal_makespan_exhaustive(inst, cap);
        case OptimalMethod::BranchAndBound:
            return optimal_makespan_bnb(inst);
        case OptimalMethod::Auto:
            break;
    }
    if (candidate_count(inst) <= static_cast<double>(cap)) return optimal_makespan_exhaustive(inst, cap);
    return optimal_makespan_bnb(inst);
}

}  // namespace cml
