#include "pssp/propagation.hpp"

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "pssp/error.hpp"

namespace pssp {

namespace {

void require_fraction(const char* field, double value, bool open_low) {
  const bool ok = std::isfinite(value) && (open_low ? value > 0.0 : value >= 0.0) && value < 1.0;
  if (!ok) {
    throw Error(ErrorCode::kInvalidParams,
                std::string(field) + " = " + std::to_string(value) + " is out of range " +
                    (open_low ? "(0,1)" : "[0,1)"));
  }
}

}  // namespace

OpticalParams OpticalParams::lossless() { return OpticalParams{}; }

double OpticalParams::compensated_split(double bend_excess_loss) {
  return 1.0 / (2.0 - bend_excess_loss);
}

OpticalParams OpticalParams::measured_default() {
  OpticalParams p;
  p.bend_excess_loss = 0.10;
  p.split_diagonal_fraction = compensated_split(p.bend_excess_loss);
  p.pass_crosstalk = std::pow(10.0, -24.0 / 10.0);
  p.converge_residual = 0.03;
  p.converge_insertion_loss = 0.01;
  // 0.3 dB/cm over a 0.05 mm node pitch.
  p.propagation_loss_db_per_node = 0.3 * 0.005;
  return p;
}

void OpticalParams::validate() const {
  require_fraction("split_diagonal_fraction", split_diagonal_fraction, true);
  require_fraction("pass_crosstalk", pass_crosstalk, false);
  require_fraction("converge_residual", converge_residual, false);
  require_fraction("converge_insertion_loss", converge_insertion_loss, false);
  require_fraction("bend_excess_loss", bend_excess_loss, false);
  if (converge_residual + converge_insertion_loss > 1.0) {
    throw Error(ErrorCode::kInvalidParams,
                "converge_residual + converge_insertion_loss exceeds 1");
  }
  if (!std::isfinite(propagation_loss_db_per_node) || propagation_loss_db_per_node < 0.0) {
    throw Error(ErrorCode::kInvalidParams, "propagation_loss_db_per_node must be >= 0");
  }
}

double IntensityDistribution::port_sum() const noexcept {
  double sum = 0.0;
  for (const auto& [port, value] : port_intensity) sum += value;
  return sum;
}

IntensityDistribution propagate(const JunctionNetwork& network, const OpticalParams& params,
                                double input_power) {
  params.validate();
  if (!std::isfinite(input_power) || input_power <= 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "input_power must be positive");
  }

  IntensityDistribution dist;
  dist.input_power = input_power;
  dist.max_port = network.total();
  LossLedger& ledger = dist.ledger;

  const double f = params.split_diagonal_fraction;
  const double x = params.pass_crosstalk;
  const double converge_keep =
      1.0 - params.converge_residual - params.converge_insertion_loss;
  const double alpha = params.propagation_loss_db_per_node;

  // Attenuation memo by span; spans are bounded by the largest element.
  std::vector<double> attenuation;
  auto attenuate = [&](std::int64_t span) {
    if (alpha == 0.0 || span == 0) return 1.0;
    const auto s = static_cast<std::size_t>(span);
    if (s >= attenuation.size()) attenuation.resize(s + 1, -1.0);
    if (attenuation[s] < 0.0) attenuation[s] = std::pow(10.0, -alpha * static_cast<double>(span) / 10.0);
    return attenuation[s];
  };

  const auto nodes = network.nodes();
  std::vector<double> out_v(nodes.size(), 0.0), out_d(nodes.size(), 0.0);
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    double in_v = 0.0, in_d = 0.0;
    for (const Edge& edge : network.in_edges(n)) {
      const double launched =
          edge.branch == Branch::kVertical ? out_v[edge.from] : out_d[edge.from];
      const double arrived = launched * attenuate(edge.span);
      ledger.propagation += launched - arrived;
      (edge.branch == Branch::kVertical ? in_v : in_d) += arrived;
    }

    switch (nodes[n].kind) {
      case JunctionKind::kInputPort:
        out_v[n] = input_power;
        break;
      case JunctionKind::kSplit: {
        out_v[n] = (1.0 - f) * in_v;
        const double diagonal = f * in_v;
        const double bent = diagonal * params.bend_excess_loss;
        ledger.bend += bent;
        out_d[n] = diagonal - bent;
        break;
      }
      case JunctionKind::kPass:
        if (params.divert_crosstalk) {
          out_v[n] = in_v * (1.0 - x);
          out_d[n] = in_d * (1.0 - x);
          ledger.crosstalk_stray += (in_v + in_d) * x;
        } else {
          out_v[n] = in_v * (1.0 - x) + in_d * x;
          out_d[n] = in_d * (1.0 - x) + in_v * x;
        }
        break;
      case JunctionKind::kConverge:
        out_v[n] = in_v + in_d * converge_keep;
        ledger.residual_sink += in_d * params.converge_residual;
        ledger.converge_insertion += in_d * params.converge_insertion_loss;
        break;
      case JunctionKind::kOutputPort:
        dist.port_intensity[nodes[n].column] += in_v;
        break;
      case JunctionKind::kLossSink:
        ledger.residual_sink += in_v + in_d;
        break;
    }
  }
  return dist;
}

IntensityDistribution lossless_reference(const Instance& instance) {
  const SubsetCountTable table = count_subsets_dp(instance);
  const int n = static_cast<int>(instance.size());
  IntensityDistribution dist;
  dist.max_port = instance.total();
  const auto counts = table.counts();
  for (std::size_t s = 0; s < counts.size(); ++s) {
    if (counts[s] == 0) continue;
    dist.port_intensity.emplace(static_cast<std::int64_t>(s),
                                std::ldexp(static_cast<double>(counts[s]), -n));
  }
  return dist;
}

IntensityDistribution apply_noise(const IntensityDistribution& dist, const NoiseModel& noise) {
  if (!std::isfinite(noise.noise_floor_per_port) || noise.noise_floor_per_port < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "noise floor must be >= 0");
  }
  if (noise.photon_budget && *noise.photon_budget == 0) {
    throw Error(ErrorCode::kInvalidArgument, "photon budget must be positive");
  }
  IntensityDistribution noisy;
  noisy.ledger = dist.ledger;
  noisy.input_power = dist.input_power;
  noisy.max_port = dist.max_port;

  std::mt19937_64 rng(noise.seed);
  for (std::int64_t port = 0; port <= dist.max_port; ++port) {
    double value = dist.at(port);
    if (noise.photon_budget) {
      const auto budget = static_cast<double>(*noise.photon_budget);
      const double mean = budget * value / dist.input_power;
      double photons = 0.0;
      if (mean > 0.0) {
        std::poisson_distribution<std::uint64_t> shot(mean);
        photons = static_cast<double>(shot(rng));
      }
      value = photons / budget * dist.input_power;
    }
    value += noise.noise_floor_per_port;
    if (value != 0.0 || dist.port_intensity.count(port)) {
      noisy.port_intensity.emplace(port, value);
    }
  }
  return noisy;
}

}  // namespace pssp
