#pragma once

#include "cml/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cml {

using JobIndex = std::size_t;
using MachineIndex = std::size_t;

/// Processing time of a job on a machine: a positive rational or Unavailable.
class Weight {
public:
    /// Unavailable (infinite processing time).
    Weight() = default;
    explicit Weight(Rational value);

    static Weight unavailable() { return Weight(); }

    bool available() const { return value_.has_value(); }
    /// Precondition: available().
    const Rational& value() const;

    friend bool operator==(const Weight& a, const Weight& b);

private:
    std::optional<Rational> value_;
};

/// n jobs by m unrelated machines. Immutable after construction.
class Instance {
public:
    /// Validates shape, positivity and that every job has an available machine.
    /// Throws UsageError on violation.
    explicit Instance(std::vector<std::vector<Weight>> weights);

    std::size_t jobs() const { return weights_.size(); }
    std::size_t machines() const { return weights_.front().size(); }

    const Weight& weight(JobIndex u, MachineIndex j) const { return weights_[u][j]; }
    bool available(JobIndex u, MachineIndex j) const { return weights_[u][j].available(); }
    /// w_{u,j}; throws UsageError if the job is unavailable on j.
    const Rational& w(JobIndex u, MachineIndex j) const;
    /// Minimum finite processing time of job u over all machines.
    const Rational& min_weight(JobIndex u) const { return min_weight_[u]; }
    /// Sorted machines on which u is available.
    const std::vector<MachineIndex>& strategies(JobIndex u) const { return strategies_[u]; }

    const std::vector<std::vector<Weight>>& rows() const { return weights_; }

    /// Every finite weight multiplied by c > 0.
    Instance scaled(const Rational& c) const;

    friend bool operator==(const Instance& a, const Instance& b) { return a.weights_ == b.weights_; }

private:
    std::vector<std::vector<Weight>> weights_;
    std::vector<Rational> min_weight_;
    std::vector<std::vector<MachineIndex>> strategies_;
};

/// Convenience: integer matrix, 0 entries mean Unavailable.
Instance make_instance(const std::vector<std::vector<long>>& weights);

/// One machine per job.
struct Assignment {
    std::vector<MachineIndex> machine_of;

    friend bool operator==(const Assignment&, const Assignment&) = default;
    friend auto operator<=>(const Assignment&, const Assignment&) = default;
};

/// Throws UsageError unless asg has one entry per job and every job sits on an available machine.
void validate(const Instance& inst, const Assignment& asg);

/// N_j: jobs on machine j, ascending.
std::vector<JobIndex> jobs_on(const Assignment& asg, MachineIndex j);
/// The partition (N_1, ..., N_m).
std::vector<std::vector<JobIndex>> partition(const Instance& inst, const Assignment& asg);

/// Each job on its lowest-index minimum-weight machine.
Assignment min_weight_assignment(const Instance& inst);

struct LoadVector {
    std::vector<Rational> loads;
};

/// Sum of w_{u,j} over U.
Rational set_load(const Instance& inst, MachineIndex j, std::span<const JobIndex> jobs);
Rational machine_load(const Instance& inst, const Assignment& asg, MachineIndex j);
LoadVector load_vector(const Instance& inst, const Assignment& asg);

Rational makespan(const LoadVector& lv);

/// sum_j loads[j]^p, exact.
Rational p_norm_power(const LoadVector& lv, unsigned p);
/// (sum_j loads[j]^p)^(1/p) rendered to `digits` significant digits.
std::string p_norm(const LoadVector& lv, unsigned p, int digits = 12);

// ---- generators -----------------------------------------------------------

struct GeneratorParams {
    long lo = 1;
    long hi = 10;
    /// restricted-related: probability a machine is available to a job.
    double avail = 0.5;
    /// restricted-related: machine factors are drawn from [1, factor_max].
    long factor_max = 1;
    /// Fail instead of redrawing an all-unavailable row.
    bool strict = false;
};

/// kind in {"uniform-integer", "restricted-related", "two-values"}. Deterministic per (kind, n, m, seed, params).
Instance generate_instance(const std::string& kind, std::size_t n, std::size_t m, std::uint64_t seed,
                           const GeneratorParams& params = {});

const std::vector<std::string>& generator_kinds();

// ---- serialization (format "cml-1") --------------------------------------

inline constexpr const char* kFormatTag = "cml-1";

Instance parse_instance(const std::string& json_text);
/// Canonical JSON text; serialize_instance(parse_instance(x)) is stable.
std::string serialize_instance(const Instance& inst);

Assignment parse_assignment(const std::string& json_text);
std::string serialize_assignment(const Assignment& asg);

/// Hex SHA-256 of the canonical serialization.
std::string instance_digest(const Instance& inst);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace cml
