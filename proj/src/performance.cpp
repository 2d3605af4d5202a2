#include "pssp/performance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pssp/error.hpp"

namespace pssp {

namespace {

void require_positive(const char* field, double value) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw Error(ErrorCode::kInvalidParams, std::string(field) + " must be positive");
  }
}

void require_non_negative(const char* field, double value) {
  if (!std::isfinite(value) || value < 0.0) {
    throw Error(ErrorCode::kInvalidParams, std::string(field) + " must be >= 0");
  }
}

std::int64_t prime_sum(int n) {
  const auto primes = successive_primes(static_cast<std::size_t>(n));
  return std::accumulate(primes.begin(), primes.end(), std::int64_t{0});
}

// Photonic time on the first k primes, k = 1..n.
std::vector<double> photonic_times(int n, const GeometryParams& geom,
                                   const CarrierModel& carrier) {
  const auto primes = successive_primes(static_cast<std::size_t>(n));
  std::vector<double> times;
  for (int k = 1; k <= n; ++k) {
    const Instance inst = Instance::parse(
        std::vector<std::int64_t>(primes.begin(), primes.begin() + k));
    times.push_back(photonic_time_s(inst, geom, carrier));
  }
  return times;
}

}  // namespace

void GeometryParams::validate() const {
  require_non_negative("node_pitch_mm", node_pitch_mm);
  if (!std::isfinite(diagonal_factor) || diagonal_factor < 1.0) {
    throw Error(ErrorCode::kInvalidParams, "diagonal_factor must be >= 1");
  }
  require_non_negative("split_coupling_len_mm", split_coupling_len_mm);
  require_non_negative("converge_coupling_len_mm", converge_coupling_len_mm);
  require_non_negative("extra_len_per_junction_mm", extra_len_per_junction_mm);
}

CarrierModel CarrierModel::photon() { return {"photon", 2e11}; }
CarrierModel CarrierModel::actin() { return {"actin", 5e-3}; }

void CarrierModel::validate() const { require_positive("speed_mm_per_s", speed_mm_per_s); }

double ElectronicModel::total_ops(int n) const {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "N must be >= 1");
  return ops_per_subset_coefficient * static_cast<double>(n) * std::ldexp(1.0, n - 1);
}

void ElectronicModel::validate() const {
  require_positive("flops", flops);
  require_positive("ops_per_subset_coefficient", ops_per_subset_coefficient);
}

double SnrModel::offset_db() const { return 10.0 * std::log10(input_power / noise_power); }

void SnrModel::validate() const {
  require_positive("input_power", input_power);
  require_positive("noise_power", noise_power);
  if (!std::isfinite(c1) || !std::isfinite(c2)) {
    throw Error(ErrorCode::kInvalidParams, "SNR coefficients must be finite");
  }
}

double longest_path_length_mm(const Instance& instance, const GeometryParams& geom) {
  geom.validate();
  const auto blocks = static_cast<double>(instance.size());
  const double diagonal_mm =
      static_cast<double>(instance.total()) * geom.node_pitch_mm * geom.diagonal_factor;
  const double couplings_mm =
      blocks * (geom.split_coupling_len_mm + geom.converge_coupling_len_mm);
  return diagonal_mm + couplings_mm + 2.0 * blocks * geom.extra_len_per_junction_mm;
}

double photonic_time_s(const Instance& instance, const GeometryParams& geom,
                       const CarrierModel& carrier) {
  carrier.validate();
  return longest_path_length_mm(instance, geom) / carrier.speed_mm_per_s;
}

double electronic_time_s(int n, const ElectronicModel& model) {
  model.validate();
  return model.total_ops(n) / model.flops;
}

int crossover(const GeometryParams& geom, const CarrierModel& carrier,
              const ElectronicModel& model, int cap) {
  model.validate();
  const auto photonic = photonic_times(cap, geom, carrier);
  for (int n = 1; n <= cap; ++n) {
    if (photonic[static_cast<std::size_t>(n - 1)] < electronic_time_s(n, model)) return n;
  }
  throw Error(ErrorCode::kNoCrossover,
              model.name + ": no crossover up to N = " + std::to_string(cap));
}

double calibrate_flops(int target_n, const GeometryParams& geom, const CarrierModel& carrier,
                       double ops_per_subset_coefficient) {
  if (target_n < 1) throw Error(ErrorCode::kInvalidArgument, "target N must be >= 1");
  const ElectronicModel unit{"unit", 1.0, ops_per_subset_coefficient};
  const auto photonic = photonic_times(target_n, geom, carrier);
  // Crossover at k iff flops < ops(k) / t(k).
  auto break_even = [&](int k) {
    return unit.total_ops(k) / photonic[static_cast<std::size_t>(k - 1)];
  };
  const double upper = break_even(target_n);
  double lower = 0.0;
  for (int k = 1; k < target_n; ++k) lower = std::max(lower, break_even(k));
  if (!(lower < upper)) {
    throw Error(ErrorCode::kNoCrossover,
                "no FLOPS value puts the crossover at N = " + std::to_string(target_n));
  }
  return lower > 0.0 ? std::sqrt(lower * upper) : 0.5 * upper;
}

double snr_db(int n, const SnrModel& model) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "N must be >= 1");
  model.validate();
  return model.c1 * n + model.c2 * static_cast<double>(prime_sum(n)) + model.offset_db();
}

double snr_db(const Instance& instance, const SnrModel& model) {
  model.validate();
  return model.c1 * static_cast<double>(instance.size()) +
         model.c2 * static_cast<double>(instance.total()) + model.offset_db();
}

double fisher_info(double theta) {
  if (!(theta > 0.0 && theta < 1.0)) {
    throw Error(ErrorCode::kThetaOutOfRange, "theta must lie in (0,1)");
  }
  return 1.0 / (theta * (1.0 - theta));
}

double variance_bound(double theta, std::int64_t trials) {
  if (trials < 1) throw Error(ErrorCode::kInvalidArgument, "trials must be >= 1");
  if (!(theta > 0.0 && theta < 1.0)) {
    throw Error(ErrorCode::kThetaOutOfRange, "theta must lie in (0,1)");
  }
  return theta * (1.0 - theta) / static_cast<double>(trials);
}

double variance_bound(const FisherModel& model) {
  return variance_bound(model.theta, model.trials);
}

double theta_of_n(int n, const SnrModel& model) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "N must be >= 1");
  const double f = model.c1 * n + model.c2 * static_cast<double>(prime_sum(n));
  if (f >= 0.0) {
    throw Error(ErrorCode::kThetaOutOfRange,
                "F(N) = " + std::to_string(f) + " dB gives theta >= 1");
  }
  return std::pow(10.0, f / 10.0);
}

double quantum_time_multiplier(const QuantumSourceModel& model) {
  require_positive("m", model.m);
  return model.m;
}

double quantum_photonic_time_s(const Instance& instance, const GeometryParams& geom,
                               const CarrierModel& carrier, const QuantumSourceModel& model) {
  return quantum_time_multiplier(model) * photonic_time_s(instance, geom, carrier);
}

std::vector<RaceRow> race_table(int n_min, int n_max, const GeometryParams& geom,
                                const CarrierModel& photon, const CarrierModel& molecule,
                                const std::vector<ElectronicModel>& electronics) {
  if (n_min < 1 || n_max < n_min) {
    throw Error(ErrorCode::kInvalidArgument, "empty or invalid N range");
  }
  const auto primes = successive_primes(static_cast<std::size_t>(n_max));
  std::vector<RaceRow> rows;
  for (int n = n_min; n <= n_max; ++n) {
    const Instance inst =
        Instance::parse(std::vector<std::int64_t>(primes.begin(), primes.begin() + n));
    RaceRow row;
    row.n = n;
    row.photonic_s = photonic_time_s(inst, geom, photon);
    row.molecular_s = photonic_time_s(inst, geom, molecule);
    for (const auto& model : electronics) row.electronic_s.push_back(electronic_time_s(n, model));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<AnalysisRow> analysis_table(int n_min, int n_max, const SnrModel& model,
                                        std::int64_t trials) {
  if (n_min < 1 || n_max < n_min) {
    throw Error(ErrorCode::kInvalidArgument, "empty or invalid N range");
  }
  std::vector<AnalysisRow> rows;
  for (int n = n_min; n <= n_max; ++n) {
    AnalysisRow row;
    row.n = n;
    row.prime_sum = prime_sum(n);
    row.snr_db = snr_db(n, model);
    try {
      row.theta = theta_of_n(n, model);
      row.fisher_info = fisher_info(row.theta);
      row.variance_bound = variance_bound(row.theta, trials);
      row.theta_valid = true;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kThetaOutOfRange) throw;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace pssp
