#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pssp/propagation.hpp"
#include "pssp/ssp_core.hpp"

namespace pssp {

/// Open interval (lower, upper) of thresholds that classify every port
/// correctly. lower is the brightest absent port, upper the dimmest present one.
struct ThresholdBand {
  double lower = 0.0;
  double upper = 0.0;
  bool valid = false;

  bool contains(double threshold) const noexcept {
    return valid && lower < threshold && threshold < upper;
  }
  double width() const noexcept { return upper - lower; }
};

enum class PortClass : std::uint8_t { kAbsent, kPresent };
enum class Answer : std::uint8_t { kYes, kNo, kIndeterminate };

const char* port_class_name(PortClass c) noexcept;
const char* answer_name(Answer a) noexcept;

struct PortReading {
  std::int64_t port = 0;
  double intensity = 0.0;
  PortClass measured = PortClass::kAbsent;
  PortClass oracle = PortClass::kAbsent;
};

struct DecisionReport {
  std::vector<PortReading> ports;  // one per column 0..total
  std::optional<double> threshold;
  // Empty when the instance has no target.
  std::optional<Answer> answer;
  ThresholdBand band;
  std::vector<std::int64_t> mismatches;

  /// Throws kMissingTarget when the instance had no target.
  Answer target_answer() const;
};

/// Ports 0..oracle.total(); missing ports read 0.
ThresholdBand tolerance_band(const IntensityDistribution& dist, const SubsetCountTable& oracle);

/// A port is present iff intensity >= threshold. threshold must be > 0.
DecisionReport classify(const IntensityDistribution& dist, double threshold,
                        const Instance& instance);
DecisionReport classify(const IntensityDistribution& dist, double threshold,
                        const Instance& instance, const SubsetCountTable& oracle);

/// Uses the given threshold, else the band midpoint when the band is valid.
/// Otherwise every port is reported unclassified against the oracle and the
/// answer is indeterminate.
DecisionReport read_out(const IntensityDistribution& dist, const Instance& instance,
                        std::optional<double> threshold = std::nullopt);

/// A band is reliable when it is valid and its width exceeds the noise
/// floor: the weakest signal must stand clear of the noise it sits on.
bool band_is_reliable(const ThresholdBand& band, double noise_floor) noexcept;

struct ReliableSize {
  int n = 0;
  bool cap_reached = false;
};

inline constexpr int kReliableSizeCap = 20;

/// Largest N such that every successive-primes instance of size 1..N reads out
/// reliably under the given optics and noise.
ReliableSize max_reliable_size(const OpticalParams& params, const NoiseModel& noise,
                               int cap = kReliableSizeCap);

}  // namespace pssp
