// Exercises the shared library through the C header only.
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "pssp/pssp.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  pssp_string_free(s);
  return out;
}

pssp_instance* make(std::vector<int64_t> elements, int has_target = 0, int64_t target = 0) {
  pssp_instance* inst = nullptr;
  REQUIRE(pssp_instance_create(elements.data(), elements.size(), has_target, target, &inst) == PSSP_OK);
  return inst;
}

}  // namespace

TEST_CASE("C API: version and errors") {
  CHECK(std::string(pssp_version()) == "0.1.0");
  CHECK(std::string(pssp_status_name(PSSP_ERR_TARGET_OUT_OF_RANGE)) == "TargetOutOfRange");

  const int64_t e[] = {1};
  pssp_instance* inst = nullptr;
  CHECK(pssp_instance_create(e, 1, 1, 5, &inst) == PSSP_ERR_TARGET_OUT_OF_RANGE);
  CHECK(inst == nullptr);
  CHECK(std::strlen(pssp_last_error()) > 0);
  CHECK(pssp_instance_create(nullptr, 0, 0, 0, &inst) == PSSP_ERR_EMPTY_INSTANCE);
  const int64_t bad[] = {3, -1};
  CHECK(pssp_instance_create(bad, 2, 0, 0, &inst) == PSSP_ERR_NON_POSITIVE_ELEMENT);
  CHECK(pssp_instance_create(e, 1, 0, 0, nullptr) == PSSP_ERR_INVALID_ARGUMENT);
  CHECK(pssp_instance_from_json("{", &inst) == PSSP_ERR_PARSE);

  char* hex = nullptr;
  REQUIRE(pssp_hash("a", &hex) == PSSP_OK);
  CHECK(take(hex) == "af63dc4c8601ec8c");

  // Destroying NULL is a no-op.
  pssp_instance_destroy(nullptr);
  pssp_network_destroy(nullptr);
  pssp_distribution_destroy(nullptr);
  pssp_report_destroy(nullptr);
  pssp_presets_destroy(nullptr);
}

TEST_CASE("C API: instances and exact solver") {
  auto* inst = make({2, 5, 7, 9}, 1, 14);
  CHECK(pssp_instance_size(inst) == 4);
  CHECK(pssp_instance_total(inst) == 23);
  int64_t target = 0;
  CHECK(pssp_instance_target(inst, &target) == 1);
  CHECK(target == 14);

  size_t written = 0;
  std::vector<uint64_t> counts(10);
  CHECK(pssp_count_subsets(inst, counts.data(), counts.size(), &written) == PSSP_ERR_BUFFER_TOO_SMALL);
  CHECK(written == 24);
  counts.resize(written);
  REQUIRE(pssp_count_subsets(inst, counts.data(), counts.size(), &written) == PSSP_OK);
  CHECK(counts[14] == 2);
  CHECK(counts[23] == 1);
  CHECK(counts[1] == 0);

  int answer = -1;
  REQUIRE(pssp_decide_exact(inst, &answer) == PSSP_OK);
  CHECK(answer == 1);

  char* doc = nullptr;
  REQUIRE(pssp_instance_to_json(inst, &doc) == PSSP_OK);
  pssp_instance* back = nullptr;
  const std::string text = take(doc);
  REQUIRE(pssp_instance_from_json(text.c_str(), &back) == PSSP_OK);
  CHECK(pssp_instance_total(back) == 23);
  pssp_instance_destroy(back);

  auto* open = make({4, 6});
  CHECK(pssp_instance_target(open, &target) == 0);
  CHECK(pssp_decide_exact(open, &answer) == PSSP_ERR_MISSING_TARGET);
  pssp_instance_destroy(open);

  pssp_instance* primes = nullptr;
  REQUIRE(pssp_instance_successive_primes(28, &primes) == PSSP_OK);
  CHECK(pssp_instance_total(primes) == 1371);
  pssp_instance_destroy(primes);
  pssp_instance_destroy(inst);
}

TEST_CASE("C API: network, propagation and read-out") {
  auto* inst = make({3, 7, 11}, 1, 14);
  pssp_network* net = nullptr;
  REQUIRE(pssp_network_build(inst, &net) == PSSP_OK);

  pssp_network_stats st{};
  REQUIRE(pssp_network_stats_get(net, &st) == PSSP_OK);
  CHECK(st.n_ports == 8);
  CHECK(st.n_split == 7);
  CHECK(st.depth == 21);

  std::vector<int64_t> ports(8);
  std::vector<uint64_t> paths(8);
  size_t n = 0;
  REQUIRE(pssp_network_port_paths(net, ports.data(), paths.data(), 8, &n) == PSSP_OK);
  CHECK(n == 8);
  CHECK(ports == std::vector<int64_t>{0, 3, 7, 10, 11, 14, 18, 21});
  for (auto p : paths) CHECK(p == 1);

  char* exported = nullptr;
  REQUIRE(pssp_network_export(net, &exported) == PSSP_OK);
  const std::string doc = take(exported);
  pssp_network* reimported = nullptr;
  REQUIRE(pssp_network_import(doc.c_str(), &reimported) == PSSP_OK);
  pssp_network_stats st2{};
  pssp_network_stats_get(reimported, &st2);
  CHECK(std::memcmp(&st, &st2, sizeof st) == 0);
  pssp_network_destroy(reimported);
  CHECK(pssp_network_import("{}", &reimported) == PSSP_ERR_PARSE);

  pssp_optical_params params{};
  REQUIRE(pssp_params_lossless(&params) == PSSP_OK);
  CHECK(params.split_diagonal_fraction == 0.5);
  pssp_distribution* dist = nullptr;
  REQUIRE(pssp_propagate(net, &params, 1.0, &dist) == PSSP_OK);
  CHECK(pssp_distribution_max_port(dist) == 21);
  CHECK(std::abs(pssp_distribution_at(dist, 14) - 0.125) < 1e-12);
  CHECK(pssp_distribution_at(dist, 5) == 0.0);

  pssp_band band{};
  REQUIRE(pssp_tolerance_band(dist, inst, &band) == PSSP_OK);
  CHECK(band.valid == 1);
  CHECK(band.lower == 0.0);

  pssp_report* report = nullptr;
  REQUIRE(pssp_read_out(dist, inst, 0.0, &report) == PSSP_OK);
  CHECK(pssp_report_answer(report) == PSSP_ANSWER_YES);
  CHECK(pssp_report_mismatch_count(report) == 0);
  pssp_output_meta meta{"feedfacefeedface", 9};
  char* rj = nullptr;
  REQUIRE(pssp_report_json(report, &meta, &rj) == PSSP_OK);
  CHECK(take(rj).find("\"feedfacefeedface\"") != std::string::npos);
  pssp_report_destroy(report);

  REQUIRE(pssp_classify(dist, 0.2, inst, &report) == PSSP_OK);
  CHECK(pssp_report_answer(report) == PSSP_ANSWER_NO);
  CHECK(pssp_report_mismatch_count(report) == 8);
  pssp_report_destroy(report);
  CHECK(pssp_classify(dist, -1.0, inst, &report) == PSSP_ERR_INVALID_ARGUMENT);

  char* csv = nullptr;
  REQUIRE(pssp_distribution_csv(dist, inst, &meta, &csv) == PSSP_OK);
  CHECK(take(csv).rfind("# pssp 0.1.0\n# config_hash feedfacefeedface\n# seed 9\n", 0) == 0);

  pssp_noise_model noise{1e-4, 0, 0};
  pssp_distribution* noisy = nullptr;
  REQUIRE(pssp_apply_noise(dist, &noise, &noisy) == PSSP_OK);
  CHECK(pssp_distribution_at(noisy, 5) == 1e-4);
  pssp_distribution_destroy(noisy);

  pssp_distribution* ref = nullptr;
  REQUIRE(pssp_lossless_reference(inst, &ref) == PSSP_OK);
  for (int64_t s = 0; s <= 21; ++s) CHECK(std::abs(pssp_distribution_at(ref, s) - pssp_distribution_at(dist, s)) < 1e-12);
  pssp_distribution_destroy(ref);

  params.converge_residual = 2.0;
  CHECK(pssp_params_validate(&params) == PSSP_ERR_INVALID_PARAMS);
  pssp_distribution* never = nullptr;
  CHECK(pssp_propagate(net, &params, 1.0, &never) == PSSP_ERR_INVALID_PARAMS);

  pssp_distribution_destroy(dist);
  pssp_network_destroy(net);
  pssp_instance_destroy(inst);
}

TEST_CASE("C API: lossy ledger closes") {
  auto* inst = make({3, 7, 9, 11});
  pssp_network* net = nullptr;
  REQUIRE(pssp_network_build(inst, &net) == PSSP_OK);
  pssp_presets* presets = nullptr;
  REQUIRE(pssp_presets_create(nullptr, &presets) == PSSP_OK);
  pssp_optical_params p{};
  REQUIRE(pssp_presets_optics(presets, "paper-default", &p) == PSSP_OK);
  CHECK(pssp_presets_optics(presets, "nope", &p) == PSSP_ERR_UNKNOWN_PRESET);

  pssp_distribution* dist = nullptr;
  REQUIRE(pssp_propagate(net, &p, 3.0, &dist) == PSSP_OK);
  pssp_loss_ledger l{};
  REQUIRE(pssp_distribution_ledger(dist, &l) == PSSP_OK);
  double ports = 0.0;
  for (int64_t s = 0; s <= pssp_distribution_max_port(dist); ++s) ports += pssp_distribution_at(dist, s);
  const double lost = l.propagation + l.bend + l.converge_insertion + l.residual_sink + l.crosstalk_stray;
  CHECK(std::abs(ports + lost - 3.0) < 1e-9);
  CHECK(l.residual_sink > 0.0);

  int n = 0, cap = 0;
  pssp_noise_model none{0.0, 0, 0};
  pssp_optical_params clean{};
  pssp_params_lossless(&clean);
  REQUIRE(pssp_max_reliable_size(&clean, &none, 20, &n, &cap) == PSSP_OK);
  CHECK(n == 20);
  CHECK(cap == 1);

  pssp_distribution_destroy(dist);
  pssp_presets_destroy(presets);
  pssp_network_destroy(net);
  pssp_instance_destroy(inst);
}

TEST_CASE("C API: presets and performance models") {
  pssp_presets* presets = nullptr;
  REQUIRE(pssp_presets_create(nullptr, &presets) == PSSP_OK);
  pssp_geometry g{};
  REQUIRE(pssp_presets_geometry(presets, &g) == PSSP_OK);
  double photon = 0.0;
  REQUIRE(pssp_presets_carrier_speed(presets, "photon", &photon) == PSSP_OK);
  CHECK(photon == 2e11);

  REQUIRE(pssp_presets_electronic_count(presets) == 3);
  const int expected[] = {6, 12, 28};
  for (size_t i = 0; i < 3; ++i) {
    const char* name = nullptr;
    double flops = 0.0, coef = 0.0;
    REQUIRE(pssp_presets_electronic(presets, i, &name, &flops, &coef) == PSSP_OK);
    int n = 0;
    REQUIRE(pssp_crossover(&g, photon, flops, coef, 64, &n) == PSSP_OK);
    CHECK(n == expected[i]);
    double calibrated = 0.0;
    REQUIRE(pssp_calibrate_flops(expected[i], &g, photon, coef, &calibrated) == PSSP_OK);
    CHECK(std::abs(calibrated / flops - 1.0) < 5e-3);
  }
  const char* name = nullptr;
  double flops = 0.0, coef = 0.0;
  CHECK(pssp_presets_electronic(presets, 3, &name, &flops, &coef) == PSSP_ERR_INVALID_ARGUMENT);
  int n = 0;
  CHECK(pssp_crossover(&g, photon, 1e40, 1.0, 64, &n) == PSSP_ERR_NO_CROSSOVER);

  auto* inst = make({2, 3, 5, 7});
  double seconds = 0.0;
  REQUIRE(pssp_photonic_time(inst, &g, photon, &seconds) == PSSP_OK);
  CHECK(seconds < 1e-9);
  double q = 0.0;
  REQUIRE(pssp_quantum_photonic_time(inst, &g, photon, 10.0, &q) == PSSP_OK);
  CHECK(q == doctest::Approx(10 * seconds));
  double mm = 0.0;
  REQUIRE(pssp_longest_path_length(inst, &g, &mm) == PSSP_OK);
  CHECK(mm == doctest::Approx(seconds * photon));
  REQUIRE(pssp_electronic_time(1, 1.0, 1.0, &seconds) == PSSP_OK);
  CHECK(seconds == 1.0);

  pssp_snr_model snr{};
  REQUIRE(pssp_presets_snr(presets, &snr) == PSSP_OK);
  double db = 0.0;
  REQUIRE(pssp_snr(4, &snr, &db) == PSSP_OK);
  CHECK(db == doctest::Approx(-13.2764));
  double theta = 0.0, info = 0.0, bound = 0.0;
  REQUIRE(pssp_theta_of_n(4, &snr, &theta) == PSSP_OK);
  CHECK(theta == doctest::Approx(0.04701).epsilon(1e-4));
  REQUIRE(pssp_fisher_info(0.5, &info) == PSSP_OK);
  CHECK(info == 4.0);
  REQUIRE(pssp_variance_bound(0.5, 100, &bound) == PSSP_OK);
  CHECK(bound == doctest::Approx(0.0025));
  CHECK(pssp_fisher_info(1.5, &info) == PSSP_ERR_THETA_OUT_OF_RANGE);

  pssp_output_meta meta{"0000000000000000", 0};
  char* csv = nullptr;
  REQUIRE(pssp_race_csv(presets, 1, 30, &meta, &csv) == PSSP_OK);
  const std::string race = take(csv);
  CHECK(race.find("# crossover,cpu,6") != std::string::npos);
  CHECK(race.find("# crossover,gpu,12") != std::string::npos);
  CHECK(race.find("# crossover,super,28") != std::string::npos);
  CHECK(pssp_race_csv(presets, 5, 4, &meta, &csv) == PSSP_ERR_INVALID_ARGUMENT);
  REQUIRE(pssp_analysis_csv(&snr, 1, 10, 1000, &meta, &csv) == PSSP_OK);
  CHECK(take(csv).find("N,prime_sum,snr_db") != std::string::npos);

  char* pj = nullptr;
  REQUIRE(pssp_presets_json(presets, &pj) == PSSP_OK);
  const std::string doc = take(pj);
  pssp_presets* copy = nullptr;
  REQUIRE(pssp_presets_create(doc.c_str(), &copy) == PSSP_OK);
  pssp_presets_destroy(copy);
  CHECK(pssp_presets_create("{\"oops\":1}", &copy) == PSSP_ERR_PARSE);

  pssp_instance_destroy(inst);
  pssp_presets_destroy(presets);
}
