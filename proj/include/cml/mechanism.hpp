#pragma once

#include "cml/instance.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace cml {

/// Positive parts sorted in non-increasing order.
using Partition = std::vector<unsigned>;

/// All partitions of `total` into positive parts, in reverse lexicographic order.
std::vector<Partition> partitions(unsigned total);

enum class CoefficientKind { DCoord, CCoord, Custom };

/// gamma: multisets of non-negative integers summing to d+1 -> non-negative rationals.
///
/// Arguments are canonicalized to their non-zero parts before evaluation, so
/// gamma(A) == gamma(A + {0}) always holds. The only exception is the
/// zero-sensitive fixture, which exists to give the potential suite a negative
/// control and is never produced by the descriptor parser.
class CoefficientFunction {
public:
    static CoefficientFunction dcoord(unsigned d);
    static CoefficientFunction ccoord(unsigned d);
    /// Every partition of d+1 must be present; values must be >= 0. Throws UsageError otherwise.
    static CoefficientFunction custom(unsigned d, std::map<Partition, Rational> table);
    /// Test fixture: entries of `padded` are keyed by multisets that keep their zeros
    /// (sorted non-increasing) and take precedence over `base` for exactly that padding.
    static CoefficientFunction zero_sensitive_fixture(const CoefficientFunction& base,
                                                      std::map<std::vector<unsigned>, Rational> padded);

    unsigned degree() const { return d_; }
    CoefficientKind kind() const { return kind_; }
    bool zero_invariant() const { return padded_.empty(); }
    /// CustomTable entries (empty for DCOORD / CCOORD).
    const std::map<Partition, Rational>& table() const { return table_; }

    /// gamma of the multiset `parts` (order irrelevant, zeros allowed, sum must be d+1).
    Rational operator()(std::span<const unsigned> parts) const;

    /// "dcoord", "ccoord" or "custom".
    std::string name() const;

private:
    CoefficientFunction(CoefficientKind kind, unsigned d) : kind_(kind), d_(d) {}
    Rational canonical(const Partition& parts) const;

    CoefficientKind kind_;
    unsigned d_;
    std::map<Partition, Rational> table_;
    std::map<std::vector<unsigned>, Rational> padded_;
};

/// max(2, ceil(log2 m)).
unsigned default_degree(std::size_t machines);

/// Exact value of a Lambda-function (units: load^(d+1)).
struct LambdaValue {
    Rational value;

    friend bool operator==(const LambdaValue& a, const LambdaValue& b) { return a.value == b.value; }
    friend bool operator<(const LambdaValue& a, const LambdaValue& b) { return a.value < b.value; }
    friend bool operator<=(const LambdaValue& a, const LambdaValue& b) { return a.value <= b.value; }
    friend bool operator>(const LambdaValue& a, const LambdaValue& b) { return a.value > b.value; }
    friend bool operator>=(const LambdaValue& a, const LambdaValue& b) { return a.value >= b.value; }
};

// ---- weight-list kernels (w holds w_{u,j} for the jobs of U on one machine) ----

namespace kernel {

/// Sum over compositions (t_1..t_l) of d+1 of gamma({t}) * prod w_k^t_k.
/// With `player` set, only compositions with t_player >= 1 contribute.
Rational lambda_bruteforce(const CoefficientFunction& cf, std::span<const Rational> w,
                           std::optional<std::size_t> player = std::nullopt);

/// d/(d+1) * L^(d+1) + 1/(d+1) * sum w^(d+1)
Rational lambda_set_dcoord(unsigned d, std::span<const Rational> w);
/// Closed-form Lambda_set(U) - Lambda_set(U \ {player}).
Rational lambda_player_dcoord(unsigned d, std::span<const Rational> w, std::size_t player);

/// Complete homogeneous symmetric polynomial h_k(w) by the standard DP.
Rational complete_homogeneous(std::span<const Rational> w, unsigned k);
/// d! * h_d(w)
Rational psi_ccoord(unsigned d, std::span<const Rational> w);
/// d! * h_(d+1)(w)
Rational lambda_set_ccoord(unsigned d, std::span<const Rational> w);
/// w_player * psi_ccoord(w)
Rational lambda_player_ccoord(unsigned d, std::span<const Rational> w, std::size_t player);

/// Fastest exact route available for cf.
Rational lambda_set(const CoefficientFunction& cf, std::span<const Rational> w);
Rational lambda_player(const CoefficientFunction& cf, std::span<const Rational> w, std::size_t player);

}  // namespace kernel

// ---- job-set operations on an instance ----------------------------------

/// Throws UsageError if some job of U is unavailable on j.
LambdaValue lambda_set_bruteforce(const CoefficientFunction& cf, const Instance& inst, MachineIndex j,
                                  std::span<const JobIndex> jobs);
/// Throws UsageError if u is not in U.
LambdaValue lambda_player_bruteforce(const CoefficientFunction& cf, const Instance& inst, MachineIndex j,
                                     std::span<const JobIndex> jobs, JobIndex u);

LambdaValue lambda_set_dcoord(unsigned d, const Instance& inst, MachineIndex j, std::span<const JobIndex> jobs);
LambdaValue lambda_player_dcoord(unsigned d, const Instance& inst, MachineIndex j, std::span<const JobIndex> jobs,
                                 JobIndex u);
Rational psi_ccoord(unsigned d, const Instance& inst, MachineIndex j, std::span<const JobIndex> jobs);
LambdaValue lambda_player_ccoord(unsigned d, const Instance& inst, MachineIndex j, std::span<const JobIndex> jobs,
                                 JobIndex u);

/// Dispatching versions: closed forms for DCOORD / CCOORD, oracle otherwise.
LambdaValue lambda_set(const CoefficientFunction& cf, const Instance& inst, MachineIndex j,
                       std::span<const JobIndex> jobs);
LambdaValue lambda_player(const CoefficientFunction& cf, const Instance& inst, MachineIndex j,
                          std::span<const JobIndex> jobs, JobIndex u);

// ---- mechanisms and completion times ------------------------------------

/// A member of M(d), or the plain Makespan policy (completion time = machine load)
/// kept only as a comparison baseline.
class Mechanism {
public:
    Mechanism(CoefficientFunction cf) : cf_(std::move(cf)) {}  // NOLINT: implicit by intent
    static Mechanism makespan_baseline() { return Mechanism(); }

    bool is_baseline() const { return !cf_.has_value(); }
    /// Throws UsageError for the baseline.
    const CoefficientFunction& coefficients() const;
    /// Completion times are (key / w_u)^(1/root_degree()); 1 for the baseline.
    unsigned root_degree() const { return cf_ ? cf_->degree() : 1; }
    std::string name() const { return cf_ ? cf_->name() : "makespan"; }

private:
    Mechanism() = default;
    std::optional<CoefficientFunction> cf_;
};

/// P(u, N_j) = (lambda_over_wu)^(1/degree).
struct CompletionTime {
    Rational lambda_over_wu;
    unsigned degree = 1;
    std::string approx;

    /// Ordering for a fixed player: the root is monotone, so compare exact values.
    friend bool operator<(const CompletionTime& a, const CompletionTime& b) { return a.lambda_over_wu < b.lambda_over_wu; }
    friend bool operator==(const CompletionTime& a, const CompletionTime& b) {
        return a.lambda_over_wu == b.lambda_over_wu;
    }
};

CompletionTime completion_time(const Mechanism& mech, const Instance& inst, const Assignment& asg, JobIndex u,
                               int digits = 12);

/// Lambda_{u,target}(N_target + {u}) with N read from asg; comparing keys across
/// machines is the same as comparing u's completion time after the move.
/// For the baseline the key is the target's load after the move.
Rational deviation_key(const Mechanism& mech, const Instance& inst, const Assignment& asg, JobIndex u,
                       MachineIndex target);

// ---- descriptor (JSON) ----------------------------------------------------

/// { "kind": "dcoord"|"ccoord"|"custom", "d": int, "table": [{"partition":[...],"gamma":"p/q"}] }
CoefficientFunction parse_mechanism(const std::string& json_text);
std::string mechanism_descriptor(const CoefficientFunction& cf);
/// Descriptor of a possibly-baseline mechanism ({"kind":"makespan"} for the baseline).
std::string mechanism_descriptor(const Mechanism& mech);
/// Zero-sensitive fixture file: a valid descriptor plus "padded": [{"partition":[...with zeros],"gamma":...}].
CoefficientFunction parse_zero_sensitive_fixture(const std::string& json_text);

}  // namespace cml
