#include "cml/dynamics.hpp"

#include <json.hpp>

#include <numeric>
#include <random>

namespace cml {

PotentialValue potential(const CoefficientFunction& cf, const Instance& inst, const Assignment& asg) {
    validate(inst, asg);
    Rational total = 0;
    const auto parts = partition(inst, asg);
    for (MachineIndex j = 0; j < inst.machines(); ++j) total += lambda_set(cf, inst, j, parts[j]).value;
    return {total};
}

namespace {

struct Candidate {
    MachineIndex machine;
    Rational key;
    Rational current;
};

std::optional<Candidate> best_candidate(const Mechanism& mech, const Instance& inst, const Assignment& asg,
                                        JobIndex u) {
    const MachineIndex here = asg.machine_of[u];
    Rational current = deviation_key(mech, inst, asg, u, here);
    std::optional<Candidate> best;
    for (MachineIndex j : inst.strategies(u)) {
        if (j == here) continue;
        Rational key = deviation_key(mech, inst, asg, u, j);
        if (key < current && (!best || key < best->key)) best = Candidate{j, key, current};
    }
    return best;
}

}  // namespace

std::optional<MachineIndex> best_response(const Mechanism& mech, const Instance& inst, const Assignment& asg,
                                          JobIndex u) {
    validate(inst, asg);
    if (u >= inst.jobs()) throw UsageError("job index out of range");
    auto c = best_candidate(mech, inst, asg, u);
    if (!c) return std::nullopt;
    return c->machine;
}

EquilibriumCheck is_equilibrium(const Mechanism& mech, const Instance& inst, const Assignment& asg) {
    validate(inst, asg);
    for (JobIndex u = 0; u < inst.jobs(); ++u)
        if (auto c = best_candidate(mech, inst, asg, u)) return {false, Deviation{u, c->machine}};
    return {true, std::nullopt};
}

MoveOrder parse_move_order(const std::string& name) {
    if (name == "round-robin") return MoveOrder::RoundRobin;
    if (name == "random") return MoveOrder::Random;
    if (name == "max-improvement") return MoveOrder::MaxImprovement;
    throw UsageError("unknown move order '" + name + "'");
}

std::string to_string(MoveOrder order) {
    switch (order) {
        case MoveOrder::RoundRobin:
            return "round-robin";
        case MoveOrder::Random:
            return "random";
        case MoveOrder::MaxImprovement:
            break;
    }
    return "max-improvement";
}

std::size_t default_max_iter(const Instance& inst) { return 10 * inst.jobs() * inst.machines() * inst.machines(); }

DynamicsTrace run_dynamics(const CoefficientFunction& cf, const Instance& inst, const Assignment& start,
                           const DynamicsOptions& options) {
    validate(inst, start);
    const Mechanism mech(cf);
    const std::size_t max_iter = options.max_iter ? options.max_iter : default_max_iter(inst);
    const std::size_t n = inst.jobs();

    DynamicsTrace trace;
    Assignment asg = start;
    Rational phi = potential(cf, inst, asg).value;
    std::mt19937_64 rng(options.seed);
    std::vector<JobIndex> order(n);
    std::iota(order.begin(), order.end(), JobIndex{0});

    auto apply = [&](JobIndex u, MachineIndex to) {
        Move mv{u, asg.machine_of[u], to, phi, Rational(0)};
        asg.machine_of[u] = to;
        phi = potential(cf, inst, asg).value;
        mv.phi_after = phi;
        if (!(mv.phi_after < mv.phi_before))
            throw std::logic_error("improving move did not decrease the potential");
        trace.moves.push_back(std::move(mv));
    };

    while (trace.moves.size() < max_iter) {
        bool moved = false;
        if (options.order == MoveOrder::MaxImprovement) {
            // Largest drop in the mover's own key (equivalently in Phi); ties to the lowest player.
            std::optional<JobIndex> pick;
            MachineIndex pick_to = 0;
            Rational best_gain = 0;
            for (JobIndex u = 0; u < n; ++u) {
                ++trace.iterations;
                if (auto c = best_candidate(mech, inst, asg, u)) {
                    Rational gain = c->current - c->key;
                    if (!pick || gain > best_gain) {
                        pick = u;
                        pick_to = c->machine;
                        best_gain = gain;
                    }
                }
            }
            if (pick) {
                apply(*pick, pick_to);
                moved = true;
            }
        } else {
            if (options.order == MoveOrder::Random) std::shuffle(order.begin(), order.end(), rng);
            for (JobIndex u : order) {
                if (trace.moves.size() >= max_iter) break;
                ++trace.iterations;
                if (auto c = best_candidate(mech, inst, asg, u)) {
                    apply(u, c->machine);
                    moved = true;
                }
            }
        }
        if (!moved) {
            trace.converged = true;
            break;
        }
    }
    if (!trace.converged) trace.converged = is_equilibrium(mech, inst, asg).equilibrium;
    trace.final_assignment = std::move(asg);
    return trace;
}

std::string move_record(const Move& move) {
    nlohmann::ordered_json rec;
    rec["player"] = move.player;
    rec["from"] = move.from;
    rec["to"] = move.to;
    rec["phi_before"] = to_string(move.phi_before);
    rec["phi_after"] = to_string(move.phi_after);
    return rec.dump();
}

}  // namespace cml
