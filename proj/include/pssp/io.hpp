#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pssp/performance.hpp"
#include "pssp/propagation.hpp"
#include "pssp/readout.hpp"
#include "pssp/ssp_core.hpp"

namespace pssp {

/// Reproducibility stamp carried by every output file.
struct OutputMeta {
  std::string version;
  std::string config_hash;
  std::uint64_t seed = 0;
};

/// {"elements": [int...], "target": int|null}. Throws kParse for malformed
/// documents and the Instance::parse codes for invalid content.
Instance instance_from_json(std::string_view document);
std::string instance_to_json(const Instance& instance);

/// 64-bit FNV-1a of `text`, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view text);

/// Shortest decimal form that round-trips a double.
std::string format_number(double value);

/// '#' header, then port,intensity,category for every port 0..total, then
/// ledger and band as '#' rows. category is the oracle's present/absent.
std::string distribution_csv(const IntensityDistribution& dist, const SubsetCountTable& oracle,
                             const OutputMeta& meta);

std::string report_json(const DecisionReport& report, const OutputMeta& meta);

struct CrossoverResult {
  std::string model;
  // 0 when there is no crossover within the cap.
  int n = 0;
};

std::string race_csv(const std::vector<RaceRow>& rows,
                     const std::vector<ElectronicModel>& electronics,
                     const std::vector<CrossoverResult>& crossovers, const OutputMeta& meta);

std::string analysis_csv(const std::vector<AnalysisRow>& rows, const SnrModel& model,
                         std::int64_t trials, const OutputMeta& meta);

}  // namespace pssp
