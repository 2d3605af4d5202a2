#include "pssp/readout.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pssp/error.hpp"
#include "pssp/network.hpp"

namespace pssp {

const char* port_class_name(PortClass c) noexcept {
  return c == PortClass::kPresent ? "present" : "absent";
}

const char* answer_name(Answer a) noexcept {
  switch (a) {
    case Answer::kYes: return "yes";
    case Answer::kNo: return "no";
    case Answer::kIndeterminate: return "indeterminate";
  }
  return "indeterminate";
}

Answer DecisionReport::target_answer() const {
  if (!answer) throw Error(ErrorCode::kMissingTarget, "instance has no target");
  return *answer;
}

ThresholdBand tolerance_band(const IntensityDistribution& dist, const SubsetCountTable& oracle) {
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  for (std::int64_t s = 0; s <= oracle.total(); ++s) {
    const double v = dist.at(s);
    if (oracle.achievable(s)) {
      upper = std::min(upper, v);
    } else {
      lower = std::max(lower, v);
    }
  }
  ThresholdBand band;
  band.lower = lower;
  band.upper = upper;
  band.valid = lower < upper;
  return band;
}

DecisionReport classify(const IntensityDistribution& dist, double threshold,
                        const Instance& instance, const SubsetCountTable& oracle) {
  if (!std::isfinite(threshold) || threshold <= 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "threshold must be positive");
  }
  DecisionReport report;
  report.threshold = threshold;
  report.band = tolerance_band(dist, oracle);
  report.ports.reserve(static_cast<std::size_t>(oracle.total()) + 1);
  for (std::int64_t s = 0; s <= oracle.total(); ++s) {
    PortReading reading;
    reading.port = s;
    reading.intensity = dist.at(s);
    reading.measured = reading.intensity >= threshold ? PortClass::kPresent : PortClass::kAbsent;
    reading.oracle = oracle.achievable(s) ? PortClass::kPresent : PortClass::kAbsent;
    if (reading.measured != reading.oracle) report.mismatches.push_back(s);
    report.ports.push_back(reading);
  }
  if (const auto target = instance.target()) {
    const auto& reading = report.ports[static_cast<std::size_t>(*target)];
    report.answer = reading.measured == PortClass::kPresent ? Answer::kYes : Answer::kNo;
  }
  return report;
}

DecisionReport classify(const IntensityDistribution& dist, double threshold,
                        const Instance& instance) {
  return classify(dist, threshold, instance, count_subsets_dp(instance));
}

DecisionReport read_out(const IntensityDistribution& dist, const Instance& instance,
                        std::optional<double> threshold) {
  const SubsetCountTable oracle = count_subsets_dp(instance);
  if (threshold) return classify(dist, *threshold, instance, oracle);

  const ThresholdBand band = tolerance_band(dist, oracle);
  if (band.valid && band.upper > 0.0) {
    return classify(dist, 0.5 * (band.lower + band.upper), instance, oracle);
  }
  DecisionReport report;
  report.band = band;
  for (std::int64_t s = 0; s <= oracle.total(); ++s) {
    PortReading reading;
    reading.port = s;
    reading.intensity = dist.at(s);
    reading.oracle = oracle.achievable(s) ? PortClass::kPresent : PortClass::kAbsent;
    // Unthresholded ports count as absent; any oracle-present port mismatches.
    if (reading.oracle == PortClass::kPresent) report.mismatches.push_back(s);
    report.ports.push_back(reading);
  }
  if (instance.target()) report.answer = Answer::kIndeterminate;
  return report;
}

bool band_is_reliable(const ThresholdBand& band, double noise_floor) noexcept {
  return band.valid && band.width() > noise_floor;
}

ReliableSize max_reliable_size(const OpticalParams& params, const NoiseModel& noise, int cap) {
  params.validate();
  ReliableSize result;
  for (int n = 1; n <= cap; ++n) {
    const Instance instance = successive_primes_instance(static_cast<std::size_t>(n));
    const IntensityDistribution dist =
        apply_noise(propagate(build_network(instance), params), noise);
    const ThresholdBand band = tolerance_band(dist, count_subsets_dp(instance));
    if (!band_is_reliable(band, noise.noise_floor_per_port)) return result;
    result.n = n;
  }
  result.cap_reached = true;
  return result;
}

}  // namespace pssp
