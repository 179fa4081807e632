#include "cml/analysis.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cml {

double candidate_count(const Instance& inst) {
    double total = 1.0;
    for (JobIndex u = 0; u < inst.jobs(); ++u) total *= static_cast<double>(inst.strategies(u).size());
    return total;
}

namespace {

void check_cap(const Instance& inst, std::uint64_t cap) {
    const double need = candidate_count(inst);
    if (need > static_cast<double>(cap))
        throw CapExceeded("enumeration needs " + std::to_string(static_cast<unsigned long long>(need)) +
                              " candidate assignments, cap is " + std::to_string(cap),
                          need);
}

// Mixed-radix decode, job 0 most significant, so increasing index is lexicographic order.
void decode(const Instance& inst, std::uint64_t index, Assignment& out) {
    out.machine_of.resize(inst.jobs());
    for (std::size_t u = inst.jobs(); u-- > 0;) {
        const auto& s = inst.strategies(u);
        out.machine_of[u] = s[index % s.size()];
        index /= s.size();
    }
}

}  // namespace

std::vector<Assignment> enumerate_equilibria_serial(const Mechanism& mech, const Instance& inst, std::uint64_t cap) {
    check_cap(inst, cap);
    std::vector<Assignment> found;
    Assignment asg;
    asg.machine_of.assign(inst.jobs(), 0);
    // odometer over strategy lists, last job fastest
    std::vector<std::size_t> digit(inst.jobs(), 0);
    for (JobIndex u = 0; u < inst.jobs(); ++u) asg.machine_of[u] = inst.strategies(u)[0];
    while (true) {
        if (is_equilibrium(mech, inst, asg).equilibrium) found.push_back(asg);
        std::size_t u = inst.jobs();
        while (u > 0) {
            --u;
            const auto& s = inst.strategies(u);
            if (++digit[u] < s.size()) {
                asg.machine_of[u] = s[digit[u]];
                break;
            }
            digit[u] = 0;
            asg.machine_of[u] = s[0];
            if (u == 0) return found;
        }
    }
}

std::vector<Assignment> enumerate_equilibria(const Mechanism& mech, const Instance& inst, std::uint64_t cap) {
    check_cap(inst, cap);
    const auto total = static_cast<std::int64_t>(candidate_count(inst));
    std::vector<Assignment> found;

#pragma omp parallel
    {
        std::vector<Assignment> local;
        Assignment asg;
#pragma omp for schedule(dynamic, 64) nowait
        for (std::int64_t k = 0; k < total; ++k) {
            decode(inst, static_cast<std::uint64_t>(k), asg);
            if (is_equilibrium(mech, inst, asg).equilibrium) local.push_back(asg);
        }
#pragma omp critical(cml_enumerate_merge)
        found.insert(found.end(), std::make_move_iterator(local.begin()), std::make_move_iterator(local.end()));
    }
    std::sort(found.begin(), found.end());
    return found;
}

}  // namespace cml
