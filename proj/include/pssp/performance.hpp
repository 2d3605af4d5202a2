#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pssp/ssp_core.hpp"

namespace pssp {

/// Chip geometry in millimetres. One node unit of depth is node_pitch_mm long
/// on a vertical guide and node_pitch_mm * diagonal_factor on a diagonal.
struct GeometryParams {
  double node_pitch_mm = 0.05;
  double diagonal_factor = 1.4142135623730951;
  double split_coupling_len_mm = 1.8;
  double converge_coupling_len_mm = 3.3;
  double extra_len_per_junction_mm = 0.0;

  void validate() const;
  friend bool operator==(const GeometryParams&, const GeometryParams&) = default;
};

struct CarrierModel {
  std::string name;
  double speed_mm_per_s = 0.0;

  static CarrierModel photon();  // 810 nm photons in laser-written glass
  static CarrierModel actin();   // actin filaments in molecular networks

  void validate() const;
  friend bool operator==(const CarrierModel&, const CarrierModel&) = default;
};

/// Brute-force electronic computer. Total operations for N elements are
/// ops_per_subset_coefficient * N * 2^(N-1), i.e. each subset costs its
/// cardinality in additions when the coefficient is 1.
struct ElectronicModel {
  std::string name;
  double flops = 0.0;
  double ops_per_subset_coefficient = 1.0;

  double total_ops(int n) const;
  void validate() const;
  friend bool operator==(const ElectronicModel&, const ElectronicModel&) = default;
};

/// SNR(N) = c1*N + c2*S + C with C = 10*log10(In/Noi).
struct SnrModel {
  double c1 = -3.212;
  double c2 = -0.0252;
  double input_power = 1.0;
  double noise_power = 1.0;

  double offset_db() const;  // C
  void validate() const;
  friend bool operator==(const SnrModel&, const SnrModel&) = default;
};

struct FisherModel {
  double theta = 0.5;
  std::int64_t trials = 1;
};

struct QuantumSourceModel {
  // Environment noise, in equivalent photons.
  double m = 1.0;
};

/// All-diagonal route to the port at `total`: sum(element) * pitch * diagonal
/// factor, plus one split and one converge coupling per block, plus the
/// per-junction extra for each of those 2N junctions.
double longest_path_length_mm(const Instance& instance, const GeometryParams& geom);

double photonic_time_s(const Instance& instance, const GeometryParams& geom,
                       const CarrierModel& carrier);

/// Throws kInvalidArgument for n < 1.
double electronic_time_s(int n, const ElectronicModel& model);

inline constexpr int kCrossoverCap = 64;

/// Smallest N in [1, cap] where the photonic computer on the first N primes is
/// strictly faster than the electronic model. Throws kNoCrossover.
int crossover(const GeometryParams& geom, const CarrierModel& carrier,
              const ElectronicModel& model, int cap = kCrossoverCap);

/// FLOPS that place the crossover exactly at target_n: the geometric mean of
/// the admissible interval [max_{k<n} ops(k)/t(k), ops(n)/t(n)). Throws
/// kNoCrossover if the interval is empty.
double calibrate_flops(int target_n, const GeometryParams& geom, const CarrierModel& carrier,
                       double ops_per_subset_coefficient = 1.0);

/// SNR in dB for the first n primes.
double snr_db(int n, const SnrModel& model);
/// SNR in dB for an arbitrary instance, with S = its total.
double snr_db(const Instance& instance, const SnrModel& model);

/// Per-trial Fisher information of a Bernoulli(theta) arrival. Throws
/// kThetaOutOfRange unless 0 < theta < 1.
double fisher_info(double theta);
/// Cramér–Rao bound theta(1-theta)/M on the variance of the estimate.
double variance_bound(double theta, std::int64_t trials);
double variance_bound(const FisherModel& model);
/// Arrival probability along the longest path, 10^(F(N)/10). Throws
/// kThetaOutOfRange when F(N) >= 0.
double theta_of_n(int n, const SnrModel& model);

/// Lower bound on how many times longer a heralded single-photon source takes.
double quantum_time_multiplier(const QuantumSourceModel& model);
double quantum_photonic_time_s(const Instance& instance, const GeometryParams& geom,
                               const CarrierModel& carrier, const QuantumSourceModel& model);

struct RaceRow {
  int n = 0;
  double photonic_s = 0.0;
  double molecular_s = 0.0;
  std::vector<double> electronic_s;  // one per model, in the given order
};

std::vector<RaceRow> race_table(int n_min, int n_max, const GeometryParams& geom,
                                const CarrierModel& photon, const CarrierModel& molecule,
                                const std::vector<ElectronicModel>& electronics);

struct AnalysisRow {
  int n = 0;
  std::int64_t prime_sum = 0;
  double snr_db = 0.0;
  // Unset when F(N) >= 0 (theta would not be a probability).
  bool theta_valid = false;
  double theta = 0.0;
  double fisher_info = 0.0;
  double variance_bound = 0.0;
};

std::vector<AnalysisRow> analysis_table(int n_min, int n_max, const SnrModel& model,
                                        std::int64_t trials);

}  // namespace pssp
