#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "pssp/network.hpp"
#include "pssp/ssp_core.hpp"

namespace pssp {

/// Lumped junction transfer coefficients. All fractions are of the intensity
/// entering the junction.
struct OpticalParams {
  double split_diagonal_fraction = 0.5;
  double pass_crosstalk = 0.0;
  double converge_residual = 0.0;
  double converge_insertion_loss = 0.0;
  double propagation_loss_db_per_node = 0.0;
  double bend_excess_loss = 0.0;
  // Send crosstalk to the stray ledger instead of the crossing guide.
  bool divert_crosstalk = false;

  /// Balanced splits, perfect crossings, ideal converges.
  static OpticalParams lossless();
  /// Measured-junction defaults: 24 dB crossing extinction, 3% converge
  /// residual, bend-compensated split, 0.3 dB/cm at a 0.05 mm node pitch.
  static OpticalParams measured_default();
  /// Split fraction f with f * (1 - bend) = 1 - f, so both branches leave the
  /// split with equal power.
  static double compensated_split(double bend_excess_loss);

  /// Throws kInvalidParams naming the first out-of-range field.
  void validate() const;

  friend bool operator==(const OpticalParams&, const OpticalParams&) = default;
};

struct LossLedger {
  double propagation = 0.0;
  double bend = 0.0;
  double converge_insertion = 0.0;
  double residual_sink = 0.0;
  double crosstalk_stray = 0.0;

  double total() const noexcept {
    return propagation + bend + converge_insertion + residual_sink + crosstalk_stray;
  }
};

/// Output intensity per port column, as a fraction of input power, plus the
/// accounting of everything that did not arrive. Ports not in the map read 0.
struct IntensityDistribution {
  std::map<std::int64_t, double> port_intensity;
  LossLedger ledger;
  double input_power = 1.0;
  // Highest port column of the instance (= total). Ports span 0..max_port.
  std::int64_t max_port = 0;

  double at(std::int64_t port) const noexcept {
    const auto it = port_intensity.find(port);
    return it == port_intensity.end() ? 0.0 : it->second;
  }
  double port_sum() const noexcept;
};

struct NoiseModel {
  // Added to every port 0..max_port, in fractions of input power.
  double noise_floor_per_port = 0.0;
  // Photons launched; enables Poisson shot noise when set.
  std::optional<std::uint64_t> photon_budget;
  std::uint64_t seed = 0;
};

/// Single forward pass over the network in node order. Intensities add
/// incoherently. Throws kInvalidParams or kInvalidArgument (input_power <= 0).
IntensityDistribution propagate(const JunctionNetwork& network, const OpticalParams& params,
                                double input_power = 1.0);

/// counts[s] / 2^N straight from the DP oracle; no graph traversal.
IntensityDistribution lossless_reference(const Instance& instance);

IntensityDistribution apply_noise(const IntensityDistribution& dist, const NoiseModel& noise);

}  // namespace pssp
