#pragma once

#include "cml/analysis.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace cml {

struct SuiteOptions {
    std::uint64_t seed = 1;
    /// Restrict degree-parameterized suites to one d.
    std::optional<unsigned> degree;
    /// Per-suite case count; 0 keeps each suite's default.
    std::size_t cases = 0;
    /// Replaces the custom gamma used by the M(d) suites (negative controls).
    std::optional<CoefficientFunction> custom;
};

struct SuiteResult {
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::string first_failure;
    double seconds = 0.0;

    bool passed() const { return failures == 0 && cases > 0; }
};

/// Suite names in run order.
const std::vector<std::string>& suite_names();

/// Throws UsageError for an unknown name.
SuiteResult run_suite(const std::string& name, const SuiteOptions& options = {});
std::vector<SuiteResult> run_all_suites(const SuiteOptions& options = {});

// ---- random fixtures shared by suites and tests ---------------------------

using Rng = std::mt19937_64;

/// Independent stream for case `index` of a batch.
Rng case_rng(std::uint64_t seed, std::string_view stream, std::size_t index);

/// n x m positive integer weights in [1, max_weight]; with `holes`, some entries are
/// unavailable (each row keeps at least one machine).
Instance random_instance(Rng& rng, std::size_t n, std::size_t m, long max_weight = 10, bool holes = false);
Assignment random_assignment(Rng& rng, const Instance& inst);
std::vector<Rational> random_weights(Rng& rng, std::size_t count, long max_weight = 10);

/// A deterministic non-trivial table: gamma(p) = (1 + parts) / (1 + largest part).
CoefficientFunction sample_custom(unsigned d);

}  // namespace cml
