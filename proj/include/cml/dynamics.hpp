#pragma once

#include "cml/mechanism.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cml {

/// Phi(N) = sum_j Lambda_j(N_j).
struct PotentialValue {
    Rational value;

    friend bool operator==(const PotentialValue& a, const PotentialValue& b) { return a.value == b.value; }
    friend bool operator<(const PotentialValue& a, const PotentialValue& b) { return a.value < b.value; }
};

PotentialValue potential(const CoefficientFunction& cf, const Instance& inst, const Assignment& asg);

/// Strictly improving machine for u, minimum key then lowest index; nullopt on
/// no improvement (ties keep u in place).
std::optional<MachineIndex> best_response(const Mechanism& mech, const Instance& inst, const Assignment& asg,
                                          JobIndex u);

struct Deviation {
    JobIndex player;
    MachineIndex to;
};

struct EquilibriumCheck {
    bool equilibrium;
    std::optional<Deviation> witness;  ///< first profitable deviation, by player index
};

EquilibriumCheck is_equilibrium(const Mechanism& mech, const Instance& inst, const Assignment& asg);

enum class MoveOrder { RoundRobin, Random, MaxImprovement };

MoveOrder parse_move_order(const std::string& name);
std::string to_string(MoveOrder order);

struct DynamicsOptions {
    MoveOrder order = MoveOrder::RoundRobin;
    std::uint64_t seed = 0;
    /// 0 selects the default 10 * n * m^2.
    std::size_t max_iter = 0;
};

std::size_t default_max_iter(const Instance& inst);

struct Move {
    JobIndex player;
    MachineIndex from;
    MachineIndex to;
    Rational phi_before;
    Rational phi_after;
};

struct DynamicsTrace {
    std::vector<Move> moves;
    bool converged = false;
    std::size_t iterations = 0;  ///< best-response evaluations
    Assignment final_assignment;
};

/// Best-response dynamics on a game induced by a member of M(d). Moves are strictly
/// Phi-decreasing; converged means a full pass found no improving move.
DynamicsTrace run_dynamics(const CoefficientFunction& cf, const Instance& inst, const Assignment& start,
                           const DynamicsOptions& options = {});

/// One JSON object per move: {"player","from","to","phi_before","phi_after"} with rationals as strings.
std::string move_record(const Move& move);

}  // namespace cml
