#pragma once

#include "cml/dynamics.hpp"
#include "cml/interval.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cml {

inline constexpr std::uint64_t kDefaultCap = 10'000'000;

/// Number of assignments that respect availability (product of strategy counts), saturating.
double candidate_count(const Instance& inst);

/// All equilibria in lexicographic order of machine_of. OpenMP-parallel over candidates.
/// Throws CapExceeded if candidate_count(inst) > cap.
std::vector<Assignment> enumerate_equilibria(const Mechanism& mech, const Instance& inst,
                                             std::uint64_t cap = kDefaultCap);
/// Single-threaded reference for enumerate_equilibria.
std::vector<Assignment> enumerate_equilibria_serial(const Mechanism& mech, const Instance& inst,
                                                    std::uint64_t cap = kDefaultCap);

struct OptimalMakespan {
    Rational value;
    Assignment witness;
};

enum class OptimalMethod { Auto, Exhaustive, BranchAndBound };

/// Auto: exhaustive within cap, branch-and-bound otherwise.
OptimalMakespan optimal_makespan(const Instance& inst, std::uint64_t cap = kDefaultCap,
                                 OptimalMethod method = OptimalMethod::Auto);
/// Exhaustive search, OpenMP-parallel; ties resolved to the lexicographically smallest witness.
OptimalMakespan optimal_makespan_exhaustive(const Instance& inst, std::uint64_t cap = kDefaultCap);
/// Single-threaded reference for the exhaustive search.
OptimalMakespan optimal_makespan_serial(const Instance& inst, std::uint64_t cap = kDefaultCap);
/// Depth-first branch-and-bound; no cap.
OptimalMakespan optimal_makespan_bnb(const Instance& inst);

struct EquilibriumEntry {
    Assignment assignment;
    Rational phi;  ///< 0 for the baseline (no potential reported)
    LoadVector loads;
    Rational makespan;
    /// Max over players of P(u)^degree, exact.
    Rational max_ct_power;
    std::string max_ct;     ///< decimal
    Interval ratio;         ///< max completion time / optimal makespan
    std::string ratio_text; ///< decimal
};

struct BoundCheck {
    std::string name;
    std::string scope;      ///< e.g. "equilibrium 3, machine 1"
    std::string theoretical;///< bound value (decimal, lower end of its interval)
    std::string observed;
    bool pass;
};

struct EquilibriumReport {
    std::string mechanism;    ///< descriptor
    std::string mechanism_name;
    unsigned degree = 1;
    std::vector<EquilibriumEntry> equilibria;
    OptimalMakespan opt;
    std::size_t poa_index = 0;  ///< equilibrium attaining the PoA ratio
    std::size_t pos_index = 0;
    std::size_t phi_min_index = 0;  ///< potential-minimizing equilibrium (M(d) only)
    std::string poa_ratio;
    std::string pos_ratio;
    Interval poa;
    Interval pos;
    std::vector<BoundCheck> bound_checks;

    bool all_bounds_pass() const;
};

/// Enumerates equilibria, solves the optimal makespan and computes PoA / PoS. For
/// DCOORD the load and completion-time bounds are verified as well.
EquilibriumReport poa_pos_report(const Mechanism& mech, const Instance& inst, std::uint64_t cap = kDefaultCap,
                                 int digits = 12);

/// Certified factors, each as an interval.
Interval equilibrium_load_factor(std::size_t m, unsigned d);  ///< m^(1/(d+1)) (d+1)/ln 2
Interval minimizer_load_factor(std::size_t m, unsigned d);    ///< ((d+1)/d m)^(1/(d+1))
Interval poa_factor(std::size_t m, unsigned d);               ///< d^(1/d) (equilibrium load factor + 1)
Interval pos_factor(std::size_t m, unsigned d);               ///< d^(1/d) (minimizer load factor + 1)

/// Load and completion-time bound checks for a DCOORD report (no-op list otherwise).
std::vector<BoundCheck> verify_load_bounds(const Instance& inst, const EquilibriumReport& report, int digits = 12);

}  // namespace cml
