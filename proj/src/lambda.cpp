#include "cml/mechanism.hpp"

#include <algorithm>

namespace cml {

namespace kernel {

Rational lambda_bruteforce(const CoefficientFunction& cf, std::span<const Rational> w,
                           std::optional<std::size_t> player) {
    const unsigned total = cf.degree() + 1;
    const std::size_t l = w.size();
    if (l == 0) return Rational(0);
    if (player && *player >= l) throw UsageError("player index outside U");

    // powers[k][e] = w_k^e
    std::vector<std::vector<Rational>> powers(l, std::vector<Rational>(total + 1));
    for (std::size_t k = 0; k < l; ++k) {
        powers[k][0] = 1;
        for (unsigned e = 1; e <= total; ++e) powers[k][e] = powers[k][e - 1] * w[k];
    }

    Rational sum = 0;
    std::vector<unsigned> t(l, 0);
    // Depth-first over compositions; `prefix` holds the product of the fixed factors.
    auto rec = [&](auto&& self, std::size_t k, unsigned remaining, const Rational& prefix) -> void {
        if (k + 1 == l) {
            t[k] = remaining;
            if (player && t[*player] == 0) return;
            sum += cf(t) * prefix * powers[k][remaining];
            return;
        }
        for (unsigned e = 0; e <= remaining; ++e) {
            t[k] = e;
            if (player && *player == k && e == 0) continue;
            self(self, k + 1, remaining - e, Rational(prefix * powers[k][e]));
        }
    };
    rec(rec, 0, total, Rational(1));
    return sum;
}

Rational lambda_set_dcoord(unsigned d, std::span<const Rational> w) {
    Rational load = 0, top = 0;
    for (const auto& x : w) {
        load += x;
        top += pow(x, d + 1);
    }
    return (Rational(d) * pow(load, d + 1) + top) / Rational(d + 1);
}

Rational lambda_player_dcoord(unsigned d, std::span<const Rational> w, std::size_t player) {
    if (player >= w.size()) throw UsageError("player index outside U");
    Rational load = 0;
    for (const auto& x : w) load += x;
    const Rational& mine = w[player];
    Rational rest = load - mine;
    return (Rational(d) * (pow(load, d + 1) - pow(rest, d + 1)) + pow(mine, d + 1)) / Rational(d + 1);
}

Rational complete_homogeneous(std::span<const Rational> w, unsigned k) {
    std::vector<Rational> h(k + 1, Rational(0));
    h[0] = 1;
    for (const auto& x : w)
        for (unsigned i = 1; i <= k; ++i) h[i] += x * h[i - 1];
    return h[k];
}

Rational psi_ccoord(unsigned d, std::span<const Rational> w) {
    if (w.empty()) return Rational(0);
    return Rational(factorial(d)) * complete_homogeneous(w, d);
}

Rational lambda_set_ccoord(unsigned d, std::span<const Rational> w) {
    if (w.empty()) return Rational(0);
    return Rational(factorial(d)) * complete_homogeneous(w, d + 1);
}

Rational lambda_player_ccoord(unsigned d, std::span<const Rational> w, std::size_t player) {
    if (player >= w.size()) throw UsageError("player index outside U");
    return w[player] * psi_ccoord(d, w);
}

Rational lambda_set(const CoefficientFunction& cf, std::span<const Rational> w) {
    if (cf.zero_invariant()) {
        if (cf.kind() == CoefficientKind::DCoord) return lambda_set_dcoord(cf.degree(), w);
        if (cf.kind() == CoefficientKind::CCoord) return lambda_set_ccoord(cf.degree(), w);
    }
    return lambda_bruteforce(cf, w);
}

Rational lambda_player(const CoefficientFunction& cf, std::span<const Rational> w, std::size_t player) {
    if (cf.zero_invariant()) {
        if (cf.kind() == CoefficientKind::DCoord) return lambda_player_dcoord(cf.degree(), w, player);
        if (cf.kind() == CoefficientKind::CCoord) return lambda_player_ccoord(cf.degree(), w, player);
    }
    return lambda_bruteforce(cf, w, player);
}

}  // namespace kernel

namespace {

std::vector<Rational> gather(const Instance& inst, MachineIndex j, std::span<const JobIndex> jobs) {
    std::vector<Rational> w;
    w.reserve(jobs.size());
    for (JobIndex u : jobs) w.push_back(inst.w(u, j));
    return w;
}

std::size_t position(std::span<const JobIndex> jobs, JobIndex u) {
    auto it = std::find(jobs.begin(), jobs.end(), u);
    if (it == jobs.end()) throw UsageError("job " + std::to_string(u) + " is not in U");
    return static_cast<std::size_t>(it - jobs.begin());
}

}  // namespace

LambdaValue lambda_set_bruteforce(const CoefficientFunction& cf, const Instance& inst, MachineIndex j,
                                  std::span<const JobIndex> jobs) {
    return {kernel::lambda_bruteforce(cf, gather(inst, j, jobs))};
}

LambdaValue lambda_player_bruteforce(const CoefficientFunction& cf, const Instance& inst, MachineIndex j,
                                     std::span<const JobIndex> jobs, JobIndex u) {
    std::size_t at = position(jobs, u);
    return {kernel::lambda_bruteforce(cf, gather(inst, j, jobs), at)};
}

LambdaValue lambda_set_dcoord(unsigned d, const Instance& inst, MachineIndex j, std::span<const JobIndex> jobs) {
    return {kernel::lambda_set_dcoord(d, gather(inst, j, jobs))};
}

LambdaValue lambda_player_dcoord(unsigned d, const Instance& inst, MachineIndex j, std::span<const JobIndex> jobs,
                                 JobIndex u) {
    std::size_t at = position(jobs, u);
    return {kernel::lambda_player_dcoord(d, gather(inst, j, jobs), at)};
}

Rational psi_ccoord(unsigned d, const Instance& inst, MachineIndex j, std::span<const JobIndex> jobs) {
    return kernel::psi_ccoord(d, gather(inst, j, jobs));
}

LambdaValue lambda_player_ccoord(unsigned d, const Instance& inst, MachineIndex j, std::span<const JobIndex> jobs,
                                 JobIndex u) {
    std::size_t at = position(jobs, u);
    return {kernel::lambda_player_ccoord(d, gather(inst, j, jobs), at)};
}

LambdaValue lambda_set(const CoefficientFunction& cf, const Instance& inst, MachineIndex j,
                       std::span<const JobIndex> jobs) {
    return {kernel::lambda_set(cf, gather(inst, j, jobs))};
}

LambdaValue lambda_player(const CoefficientFunction& cf, const Instance& inst, MachineIndex j,
                          std::span<const JobIndex> jobs, JobIndex u) {
    std::size_t at = position(jobs, u);
    return {kernel::lambda_player(cf, gather(inst, j, jobs), at)};
}

CompletionTime completion_time(const Mechanism& mech, const Instance& inst, const Assignment& asg, JobIndex u,
                               int digits) {
    if (u >= inst.jobs()) throw UsageError("job index out of range");
    validate(inst, asg);
    const MachineIndex j = asg.machine_of[u];
    const auto jobs = jobs_on(asg, j);
    CompletionTime ct;
    ct.degree = mech.root_degree();
    if (mech.is_baseline()) {
        ct.lambda_over_wu = set_load(inst, j, jobs);
    } else {
        ct.lambda_over_wu = lambda_player(mech.coefficients(), inst, j, jobs, u).value / inst.min_weight(u);
    }
    ct.approx = root_decimal(ct.lambda_over_wu, ct.degree, digits);
    return ct;
}

Rational deviation_key(const Mechanism& mech, const Instance& inst, const Assignment& asg, JobIndex u,
                       MachineIndex target) {
    if (u >= inst.jobs() || target >= inst.machines()) throw UsageError("job or machine index out of range");
    if (!inst.available(u, target))
        throw UsageError("job " + std::to_string(u) + " is unavailable on machine " + std::to_string(target));
    auto jobs = jobs_on(asg, target);
    if (asg.machine_of[u] != target) jobs.insert(std::upper_bound(jobs.begin(), jobs.end(), u), u);
    if (mech.is_baseline()) return set_load(inst, target, jobs);
    return lambda_player(mech.coefficients(), inst, target, jobs, u).value;
}

}  // namespace cml
