#include "cml/suites.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <limits>
#include <sstream>

namespace cml {

Rng case_rng(std::uint64_t seed, std::string_view stream, std::size_t index) {
    std::vector<std::uint32_t> material = {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                                           static_cast<std::uint32_t>(index),
                                           static_cast<std::uint32_t>(static_cast<std::uint64_t>(index) >> 32)};
    for (char c : stream) material.push_back(static_cast<unsigned char>(c));
    std::seed_seq seq(material.begin(), material.end());
    return Rng(seq);
}

Instance random_instance(Rng& rng, std::size_t n, std::size_t m, long max_weight, bool holes) {
    std::uniform_int_distribution<long> value(1, max_weight);
    std::bernoulli_distribution hole(0.3);
    std::uniform_int_distribution<std::size_t> keep(0, m - 1);
    std::vector<std::vector<Weight>> rows(n, std::vector<Weight>(m));
    for (auto& row : rows) {
        for (auto& w : row) w = Weight(Rational(value(rng)));
        if (holes && m > 1) {
            const std::size_t kept = keep(rng);
            for (std::size_t j = 0; j < m; ++j)
                if (j != kept && hole(rng)) row[j] = Weight::unavailable();
        }
    }
    return Instance(std::move(rows));
}

Assignment random_assignment(Rng& rng, const Instance& inst) {
    Assignment asg;
    for (JobIndex u = 0; u < inst.jobs(); ++u) {
        const auto& s = inst.strategies(u);
        std::uniform_int_distribution<std::size_t> pick(0, s.size() - 1);
        asg.machine_of.push_back(s[pick(rng)]);
    }
    return asg;
}

std::vector<Rational> random_weights(Rng& rng, std::size_t count, long max_weight) {
    std::uniform_int_distribution<long> value(1, max_weight);
    std::vector<Rational> w;
    for (std::size_t k = 0; k < count; ++k) w.emplace_back(value(rng));
    return w;
}

CoefficientFunction sample_custom(unsigned d) {
    std::map<Partition, Rational> table;
    for (auto& p : partitions(d + 1)) {
        Rational g(static_cast<long>(1 + p.size()), static_cast<long>(1 + p.front()));
        g.canonicalize();
        table.emplace(std::move(p), g);
    }
    return CoefficientFunction::custom(d, std::move(table));
}

namespace {

using CaseFn = std::function<std::optional<std::string>(std::size_t, Rng&)>;

SuiteResult run_batch(const std::string& name, std::uint64_t seed, std::size_t count, const CaseFn& fn) {
    SuiteResult result;
    result.name = name;
    result.cases = count;
    const auto start = std::chrono::steady_clock::now();
    std::size_t failures = 0;
    std::size_t first = std::numeric_limits<std::size_t>::max();
    std::string message;

#pragma omp parallel for schedule(dynamic) reduction(+ : failures)
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(count); ++k) {
        const auto index = static_cast<std::size_t>(k);
        Rng rng = case_rng(seed, name, index);
        std::optional<std::string> failure;
        try {
            failure = fn(index, rng);
        } catch (const std::exception& e) {
            failure = std::string("exception: ") + e.what();
        }
        if (failure) {
            ++failures;
#pragma omp critical(cml_suite_failure)
            if (index < first) {
                first = index;
                message = "case " + std::to_string(index) + ": " + *failure;
            }
        }
    }
    result.failures = failures;
    result.first_failure = message;
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

std::vector<unsigned> degrees(const SuiteOptions& o, std::vector<unsigned> fallback) {
    if (o.degree) return {*o.degree};
    return fallback;
}

std::size_t count_or(const SuiteOptions& o, std::size_t fallback) { return o.cases ? o.cases : fallback; }

CoefficientFunction custom_for(const SuiteOptions& o, unsigned d) {
    if (o.custom) return *o.custom;
    return sample_custom(d);
}

/// dcoord, ccoord, custom by index; the custom entry fixes its own degree.
CoefficientFunction cycle_cf(const SuiteOptions& o, std::size_t index, unsigned d) {
    switch (index % 3) {
        case 0:
            return CoefficientFunction::dcoord(o.custom ? o.custom->degree() : d);
        case 1:
            return CoefficientFunction::ccoord(o.custom ? o.custom->degree() : d);
        default:
            return custom_for(o, d);
    }
}

template <typename T>
std::string str(const T& x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

int sign(const Rational& x) { return sgn(x); }

// ---- suites ---------------------------------------------------------------

SuiteResult oracle_suite(const SuiteOptions& o) {
    const auto ds = degrees(o, {2, 3, 4, 5});
    const std::size_t draws = count_or(o, 200);
    const std::size_t sizes = 7;  // l = 0..6
    return run_batch("oracle", o.seed, ds.size() * sizes * draws, [&](std::size_t k, Rng& rng) -> std::optional<std::string> {
        const unsigned d = ds[k / (sizes * draws)];
        const std::size_t l = (k / draws) % sizes;
        const auto w = random_weights(rng, l);
        const auto dc = CoefficientFunction::dcoord(d);
        const auto cc = CoefficientFunction::ccoord(d);
        if (kernel::lambda_set_dcoord(d, w) != kernel::lambda_bruteforce(dc, w))
            return "DCOORD set closed form differs from oracle at d=" + std::to_string(d);
        if (kernel::lambda_set_ccoord(d, w) != kernel::lambda_bruteforce(cc, w))
            return "CCOORD set DP differs from oracle at d=" + std::to_string(d);
        for (std::size_t i = 0; i < l; ++i) {
            if (kernel::lambda_player_dcoord(d, w, i) != kernel::lambda_bruteforce(dc, w, i))
                return "DCOORD player closed form differs from oracle at d=" + std::to_string(d);
            if (kernel::lambda_player_ccoord(d, w, i) != kernel::lambda_bruteforce(cc, w, i))
                return "CCOORD player DP differs from oracle at d=" + std::to_string(d);
        }
        return std::nullopt;
    });
}

SuiteResult decomposition_suite(const SuiteOptions& o) {
    const auto ds = degrees(o, {2, 3, 4});
    return run_batch("decomposition", o.seed, count_or(o, 1500), [&](std::size_t k, Rng& rng) -> std::optional<std::string> {
        const unsigned d = ds[(k / 3) % ds.size()];
        const auto cf = cycle_cf(o, k, d);
        std::uniform_int_distribution<std::size_t> size(1, 6);
        const auto w = random_weights(rng, size(rng));
        const Rational whole = kernel::lambda_set(cf, w);
        for (std::size_t i = 0; i < w.size(); ++i) {
            std::vector<Rational> rest = w;
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
            if (whole != kernel::lambda_player(cf, w, i) + kernel::lambda_set(cf, rest))
                return "Lambda_j(U) != Lambda_uj(U) + Lambda_j(U - u) for " + cf.name();
        }
        return std::nullopt;
    });
}

SuiteResult potential_suite(const SuiteOptions& o) {
    const auto ds = degrees(o, {2, 3});
    return run_batch("potential", o.seed, count_or(o, 1500), [&](std::size_t k, Rng& rng) -> std::optional<std::string> {
        const unsigned d = ds[(k / 3) % ds.size()];
        const auto cf = cycle_cf(o, k, d);
        const Mechanism mech(cf);
        std::uniform_int_distribution<std::size_t> nd(1, 6), md(2, 4);
        for (int attempt = 0; attempt < 100; ++attempt) {
            const std::size_t n = nd(rng);
            const std::size_t m = md(rng);
            const auto inst = random_instance(rng, n, m, 10, true);
            std::vector<JobIndex> movable;
            for (JobIndex u = 0; u < inst.jobs(); ++u)
                if (inst.strategies(u).size() > 1) movable.push_back(u);
            if (movable.empty()) continue;
            const auto asg = random_assignment(rng, inst);
            const JobIndex u = movable[std::uniform_int_distribution<std::size_t>(0, movable.size() - 1)(rng)];
            const MachineIndex from = asg.machine_of[u];
            std::vector<MachineIndex> targets;
            for (MachineIndex j : inst.strategies(u))
                if (j != from) targets.push_back(j);
            const MachineIndex to = targets[std::uniform_int_distribution<std::size_t>(0, targets.size() - 1)(rng)];
            Assignment moved = asg;
            moved.machine_of[u] = to;

            const Rational delta_phi = potential(cf, inst, asg).value - potential(cf, inst, moved).value;
            const Rational key_from = deviation_key(mech, inst, asg, u, from);
            const Rational key_to = deviation_key(mech, inst, asg, u, to);
            if (delta_phi != key_from - key_to)
                return "Phi(N) - Phi(N') = " + to_string(delta_phi) + " but key difference is " +
                       to_string(Rational(key_from - key_to)) + " (" + cf.name() + ")";
            const auto ct_before = completion_time(mech, inst, asg, u);
            const auto ct_after = completion_time(mech, inst, moved, u);
            const int ct_sign = ct_after < ct_before ? 1 : (ct_before < ct_after ? -1 : 0);
            if (sign(delta_phi) != ct_sign) return "sign of Phi change disagrees with completion-time change";
            return std::nullopt;
        }
        return "could not draw an instance with a movable player";
    });
}

SuiteResult feasibility_suite(const SuiteOptions& o) {
    const auto ds = degrees(o, {2, 3, 4, 5});
    return run_batch("feasibility", o.seed, count_or(o, 500), [&](std::size_t k, Rng& rng) -> std::optional<std::string> {
        const unsigned d = ds[k % ds.size()];
        std::uniform_int_distribution<std::size_t> nd(1, 7), md(1, 4);
        const std::size_t n = nd(rng);
        const std::size_t m = md(rng);
        const auto inst = random_instance(rng, n, m, 10, true);
        const auto asg = random_assignment(rng, inst);
        const auto parts = partition(inst, asg);
        for (JobIndex u = 0; u < inst.jobs(); ++u) {
            const MachineIndex j = asg.machine_of[u];
            const Rational lam = lambda_player_dcoord(d, inst, j, parts[j], u).value;
            const Rational load = set_load(inst, j, parts[j]);
            if (lam < inst.min_weight(u) * pow(load, d))
                return "Lambda_uj(N_j) < w_u L_j^d for job " + std::to_string(u);
        }
        return std::nullopt;
    });
}

SuiteResult sandwich_suite(const SuiteOptions& o) {
    const auto ds = degrees(o, {2, 3, 4, 5});
    return run_batch("sandwich", o.seed, count_or(o, 500), [&](std::size_t k, Rng& rng) -> std::optional<std::string> {
        const unsigned d = ds[k % ds.size()];
        std::uniform_int_distribution<std::size_t> nd(1, 7), md(1, 4);
        const std::size_t n = nd(rng);
        const std::size_t m = md(rng);
        const auto inst = random_instance(rng, n, m, 10, true);
        const auto asg = random_assignment(rng, inst);
        const auto parts = partition(inst, asg);
        for (MachineIndex j = 0; j < inst.machines(); ++j) {
            const Rational load = set_load(inst, j, parts[j]);
            const Rational top = pow(load, d + 1);
            const Rational set = lambda_set_dcoord(d, inst, j, parts[j]).value;
            if (Rational(d) * top > Rational(d + 1) * set || set > top)
                return "set Lambda outside [d/(d+1) L^(d+1), L^(d+1)] on machine " + std::to_string(j);
            for (JobIndex u : parts[j]) {
                const Rational lam = lambda_player_dcoord(d, inst, j, parts[j], u).value;
                const Rational base = inst.w(u, j) * pow(load, d);
                if (lam < base || lam > Rational(d) * base)
                    return "player Lambda outside [w L^d, d w L^d] for job " + std::to_string(u);
            }
        }
        return std::nullopt;
    });
}

bool proportional(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = i + 1; k < a.size(); ++k)
            if (a[i] * b[k] != a[k] * b[i]) return false;
    return true;
}

SuiteResult norms_suite(const SuiteOptions& o) {
    return run_batch("norms", o.seed, count_or(o, 1000), [&](std::size_t, Rng& rng) -> std::optional<std::string> {
        std::uniform_int_distribution<std::size_t> md(1, 6);
        std::uniform_int_distribution<long> value(0, 20);
        const std::size_t m = md(rng);
        LoadVector a, b;
        auto draw = [&] {
            const long num = value(rng);
            const long den = 1 + value(rng) % 4;
            Rational r(num, den);
            r.canonicalize();
            return r;
        };
        for (std::size_t j = 0; j < m; ++j) {
            a.loads.push_back(draw());
            b.loads.push_back(draw());
        }
        LoadVector sum;
        for (std::size_t j = 0; j < m; ++j) sum.loads.push_back(a.loads[j] + b.loads[j]);

        for (unsigned p = 1; p <= 8; ++p) {
            const Rational top = pow(makespan(a), p);
            const Rational s = p_norm_power(a, p);
            if (top > s || s > Rational(static_cast<long>(m)) * top)
                return "norm-vs-makespan sandwich fails at p=" + std::to_string(p);

            const Rational sa = p_norm_power(a, p), sb = p_norm_power(b, p), sab = p_norm_power(sum, p);
            bool ok;
            if (p == 1) {
                ok = sab <= sa + sb;
            } else if (p == 2) {
                const Rational lhs = sab - sa - sb;  // <= 2 sqrt(sa sb)
                ok = lhs <= 0 || lhs * lhs <= 4 * sa * sb;
            } else {
                const Interval left = Interval(sab).root(p);
                const Interval right = Interval(sa).root(p) + Interval(sb).root(p);
                ok = left.certainly_le(right) || (!left.certainly_gt(right) && proportional(a.loads, b.loads));
            }
            if (!ok) return "Minkowski inequality fails at p=" + std::to_string(p);
        }

        std::uniform_int_distribution<std::size_t> pd(1, 6);
        const Rational t = draw();
        std::vector<Rational> extra;
        for (std::size_t i = 0, len = pd(rng); i < len; ++i) extra.emplace_back(value(rng));
        Rational extra_sum = 0;
        for (const auto& x : extra) extra_sum += x;
        for (unsigned r = 1; r <= 6; ++r) {
            Rational left = 0;
            for (const auto& x : extra) left += pow(t + x, r) - pow(t, r);
            if (left > pow(t + extra_sum, r) - pow(t, r))
                return "convexity sum bound fails at r=" + std::to_string(r);
        }
        return std::nullopt;
    });
}

SuiteResult zero_invariance_suite(const SuiteOptions& o) {
    const auto ds = degrees(o, {2, 3, 4, 5});
    return run_batch("zero-invariance", o.seed, count_or(o, 100), [&](std::size_t k, Rng& rng) -> std::optional<std::string> {
        const unsigned d = ds[k % ds.size()];
        const auto all = partitions(d + 1);
        const auto& p = all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
        std::vector<unsigned> padded(p.begin(), p.end());
        padded.insert(padded.end(), std::uniform_int_distribution<std::size_t>(1, 3)(rng), 0u);
        std::shuffle(padded.begin(), padded.end(), rng);
        for (std::size_t c = 0; c < 3; ++c) {
            const auto cf = cycle_cf(o, c, d);
            if (cf.degree() != d) continue;
            if (cf(p) != cf(padded)) return "gamma changes when zeros are padded (" + cf.name() + ")";
        }
        return std::nullopt;
    });
}

SuiteResult anonymity_suite(const SuiteOptions& o) {
    const auto ds = degrees(o, {2, 3});
    return run_batch("anonymity", o.seed, count_or(o, 200), [&](std::size_t k, Rng& rng) -> std::optional<std::string> {
        const auto cf = cycle_cf(o, k, ds[(k / 3) % ds.size()]);
        const Mechanism mech(cf);
        std::uniform_int_distribution<std::size_t> nd(2, 5), md(1, 3);
        const std::size_t n = nd(rng);
        const std::size_t m = md(rng);
        const auto base = random_instance(rng, n, m, 10, true);
        auto rows = base.rows();
        rows[1] = rows[0];  // jobs 0 and 1 are indistinguishable
        const Instance inst(std::move(rows));
        const auto asg = random_assignment(rng, inst);
        Assignment swapped = asg;
        std::swap(swapped.machine_of[0], swapped.machine_of[1]);
        for (JobIndex u = 0; u < inst.jobs(); ++u) {
            const JobIndex mirror = u == 0 ? 1 : (u == 1 ? 0 : u);
            if (!(completion_time(mech, inst, asg, u) == completion_time(mech, inst, swapped, mirror)))
                return "completion time depends on player identity (" + cf.name() + ")";
        }
        return std::nullopt;
    });
}

std::vector<std::vector<MachineIndex>> argmin_sets(const Mechanism& mech, const Instance& inst,
                                                    const Assignment& asg) {
    std::vector<std::vector<MachineIndex>> out;
    for (JobIndex u = 0; u < inst.jobs(); ++u) {
        std::optional<Rational> best;
        std::vector<MachineIndex> arg;
        for (MachineIndex j : inst.strategies(u)) {
            Rational key = deviation_key(mech, inst, asg, u, j);
            if (!best || key < *best) {
                best = key;
                arg = {j};
            } else if (key == *best) {
                arg.push_back(j);
            }
        }
        out.push_back(std::move(arg));
    }
    return out;
}

SuiteResult scale_suite(const SuiteOptions& o) {
    const auto ds = degrees(o, {2, 3});
    const Rational factors[] = {Rational(2), Rational(3), Rational(1, 2)};
    return run_batch("scale", o.seed, count_or(o, 100), [&](std::size_t k, Rng& rng) -> std::optional<std::string> {
        const auto cf = cycle_cf(o, k, ds[(k / 3) % ds.size()]);
        const Mechanism mech(cf);
        const unsigned d = cf.degree();
        std::uniform_int_distribution<std::size_t> nd(1, 4), md(1, 3);
        const std::size_t n = nd(rng);
        const std::size_t m = md(rng);
        const auto inst = random_instance(rng, n, m, 10, true);
        const auto asg = random_assignment(rng, inst);
        const auto parts = partition(inst, asg);
        const auto base_eq = enumerate_equilibria(mech, inst);
        const auto base_arg = argmin_sets(mech, inst, asg);
        for (const Rational& c : factors) {
            const Instance big = inst.scaled(c);
            const Rational power = pow(c, d + 1);
            for (MachineIndex j = 0; j < inst.machines(); ++j) {
                if (lambda_set(cf, big, j, parts[j]).value != power * lambda_set(cf, inst, j, parts[j]).value)
                    return "Lambda_j does not scale by c^(d+1)";
                for (JobIndex u : parts[j])
                    if (lambda_player(cf, big, j, parts[j], u).value !=
                        power * lambda_player(cf, inst, j, parts[j], u).value)
                        return "Lambda_uj does not scale by c^(d+1)";
            }
            for (JobIndex u = 0; u < inst.jobs(); ++u)
                for (MachineIndex j : inst.strategies(u))
                    if (deviation_key(mech, big, asg, u, j) != power * deviation_key(mech, inst, asg, u, j))
                        return "deviation key does not scale by c^(d+1)";
            if (argmin_sets(mech, big, asg) != base_arg) return "argmin machine set changes under scaling";
            if (enumerate_equilibria(mech, big) != base_eq) return "equilibrium list changes under scaling";
        }
        return std::nullopt;
    });
}

Instance game_instance(Rng& rng) {
    std::uniform_int_distribution<std::size_t> nd(1, 5), md(1, 3);
    std::bernoulli_distribution holes(0.5);
    const std::size_t n = nd(rng), m = md(rng);
    return random_instance(rng, n, m, 10, holes(rng));
}

SuiteResult equilibria_suite(const SuiteOptions& o) {
    const auto ds = degrees(o, {2, 3});
    return run_batch("equilibria", o.seed, count_or(o, 100), [&](std::size_t k, Rng& rng) -> std::optional<std::string> {
        const unsigned d = ds[k % ds.size()];
        const auto cf = CoefficientFunction::dcoord(d);
        const Mechanism mech(cf);
        const auto inst = game_instance(rng);
        const auto eqs = enumerate_equilibria(mech, inst);
        if (eqs.empty()) return "no pure equilibrium found";
        std::vector<Assignment> starts = {min_weight_assignment(inst)};
        for (int tries = 0; starts.size() < 3 && tries < 50; ++tries) {
            auto s = random_assignment(rng, inst);
            if (std::find(starts.begin(), starts.end(), s) == starts.end() || candidate_count(inst) < 3)
                starts.push_back(std::move(s));
        }
        const std::size_t cap = static_cast<std::size_t>(candidate_count(inst)) * inst.jobs();
        for (std::size_t s = 0; s < starts.size(); ++s) {
            DynamicsOptions opt;
            opt.max_iter = cap;
            opt.order = s == 2 ? MoveOrder::Random : MoveOrder::RoundRobin;
            opt.seed = k;
            const auto trace = run_dynamics(cf, inst, starts[s], opt);
            if (!trace.converged) return "dynamics did not converge from start " + std::to_string(s);
            if (!std::binary_search(eqs.begin(), eqs.end(), trace.final_assignment))
                return "dynamics reached an assignment missing from the enumeration";
        }
        return std::nullopt;
    });
}

SuiteResult bounds_suite(const SuiteOptions& o) {
    const auto ds = degrees(o, {2, 3});
    return run_batch("bounds", o.seed, count_or(o, 100), [&](std::size_t k, Rng& rng) -> std::optional<std::string> {
        const unsigned d = ds[k % ds.size()];
        const auto inst = game_instance(rng);
        const auto report = poa_pos_report(Mechanism(CoefficientFunction::dcoord(d)), inst);
        if (report.equilibria.empty()) return "no equilibria";
        for (const auto& c : report.bound_checks)
            if (!c.pass) return c.name + " violated at " + c.scope + ": observed " + c.observed + " > " + c.theoretical;
        return std::nullopt;
    });
}

using SuiteFn = SuiteResult (*)(const SuiteOptions&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> suites = {
        {"oracle", oracle_suite},
        {"decomposition", decomposition_suite},
        {"potential", potential_suite},
        {"feasibility", feasibility_suite},
        {"sandwich", sandwich_suite},
        {"norms", norms_suite},
        {"zero-invariance", zero_invariance_suite},
        {"anonymity", anonymity_suite},
        {"scale", scale_suite},
        {"equilibria", equilibria_suite},
        {"bounds", bounds_suite},
    };
    return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, fn] : registry()) out.push_back(name);
        return out;
    }();
    return names;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& options) {
    for (const auto& [n, fn] : registry())
        if (n == name) return fn(options);
    throw UsageError("unknown suite '" + name + "'");
}

std::vector<SuiteResult> run_all_suites(const SuiteOptions& options) {
    std::vector<SuiteResult> out;
    for (const auto& [name, fn] : registry()) out.push_back(fn(options));
    return out;
}

}  // namespace cml
