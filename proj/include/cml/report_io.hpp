#pragma once

#include "cml/analysis.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cml {

inline constexpr const char* kToolVersion = "cml 1.0.0";

/// Provenance embedded in every emitted file.
struct RunMeta {
    std::string instance_id;
    std::string instance_digest;
    std::uint64_t seed = 0;
};

std::string report_json(const EquilibriumReport& report, const Instance& inst, const RunMeta& meta);

/// Column header of the per-equilibrium CSV.
std::string report_csv_header();
/// One row per equilibrium; decimals with `digits` significant digits.
std::string report_csv_rows(const EquilibriumReport& report, const Instance& inst, const RunMeta& meta,
                            int digits = 12);
/// "# key: value" provenance lines for CSV files.
std::string csv_preamble(const std::vector<std::pair<std::string, std::string>>& entries);

}  // namespace cml
