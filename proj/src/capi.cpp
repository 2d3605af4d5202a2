#include "pssp/pssp.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "pssp/error.hpp"
#include "pssp/io.hpp"
#include "pssp/network.hpp"
#include "pssp/performance.hpp"
#include "pssp/presets.hpp"
#include "pssp/propagation.hpp"
#include "pssp/readout.hpp"
#include "pssp/ssp_core.hpp"

struct pssp_instance {
  pssp::Instance value;
};
struct pssp_network {
  pssp::JunctionNetwork value;
};
struct pssp_distribution {
  pssp::IntensityDistribution value;
};
struct pssp_report {
  pssp::DecisionReport value;
};
struct pssp_presets {
  pssp::PresetCatalog value;
};

namespace {

thread_local std::string g_last_error;

pssp_status fail(pssp_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Runs body, translating exceptions into status codes.
template <typename Body>
pssp_status guarded(Body&& body) noexcept {
  try {
    body();
    g_last_error.clear();
    return PSSP_OK;
  } catch (const pssp::Error& e) {
    return fail(static_cast<pssp_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(PSSP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PSSP_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(PSSP_ERR_INTERNAL, "unknown exception");
  }
}

void require(bool condition, const char* what) {
  if (!condition) throw pssp::Error(pssp::ErrorCode::kInvalidArgument, what);
}

char* copy_string(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

pssp::OpticalParams from_c(const pssp_optical_params& p) {
  pssp::OpticalParams o;
  o.split_diagonal_fraction = p.split_diagonal_fraction;
  o.pass_crosstalk = p.pass_crosstalk;
  o.converge_residual = p.converge_residual;
  o.converge_insertion_loss = p.converge_insertion_loss;
  o.propagation_loss_db_per_node = p.propagation_loss_db_per_node;
  o.bend_excess_loss = p.bend_excess_loss;
  o.divert_crosstalk = p.divert_crosstalk != 0;
  return o;
}

pssp_optical_params to_c(const pssp::OpticalParams& o) {
  return pssp_optical_params{o.split_diagonal_fraction, o.pass_crosstalk,
                             o.converge_residual,       o.converge_insertion_loss,
                             o.propagation_loss_db_per_node, o.bend_excess_loss,
                             o.divert_crosstalk ? 1 : 0};
}

pssp::NoiseModel from_c(const pssp_noise_model& n) {
  pssp::NoiseModel m;
  m.noise_floor_per_port = n.noise_floor_per_port;
  if (n.photon_budget > 0) m.photon_budget = n.photon_budget;
  m.seed = n.seed;
  return m;
}

pssp::GeometryParams from_c(const pssp_geometry& g) {
  return pssp::GeometryParams{g.node_pitch_mm, g.diagonal_factor, g.split_coupling_len_mm,
                              g.converge_coupling_len_mm, g.extra_len_per_junction_mm};
}

pssp::SnrModel from_c(const pssp_snr_model& s) {
  return pssp::SnrModel{s.c1, s.c2, s.input_power, s.noise_power};
}

pssp::OutputMeta from_c(const pssp_output_meta* meta) {
  pssp::OutputMeta m;
  m.version = pssp::kVersion;
  if (meta) {
    m.config_hash = meta->config_hash ? meta->config_hash : "";
    m.seed = meta->seed;
  }
  return m;
}

pssp::CarrierModel carrier(double speed) { return pssp::CarrierModel{"carrier", speed}; }

}  // namespace

extern "C" {

const char* pssp_version(void) { return pssp::kVersion; }

const char* pssp_last_error(void) { return g_last_error.c_str(); }

const char* pssp_status_name(pssp_status status) {
  switch (status) {
    case PSSP_OK: return "Ok";
    case PSSP_ERR_BUFFER_TOO_SMALL: return "BufferTooSmall";
    case PSSP_ERR_INTERNAL: return "Internal";
    default: return pssp::error_code_name(static_cast<pssp::ErrorCode>(status));
  }
}

void pssp_string_free(char* str) { std::free(str); }

pssp_status pssp_hash(const char* text, char** out_hex) {
  return guarded([&] {
    require(text && out_hex, "null argument");
    *out_hex = copy_string(pssp::fnv1a_hex(text));
  });
}

// ---- instances

pssp_status pssp_instance_create(const int64_t* elements, size_t count, int has_target,
                                 int64_t target, pssp_instance** out) {
  return guarded([&] {
    require(out && (elements || count == 0), "null argument");
    std::vector<std::int64_t> values(elements, elements + count);
    std::optional<std::int64_t> t;
    if (has_target) t = target;
    *out = new pssp_instance{pssp::Instance::parse(std::move(values), t)};
  });
}

pssp_status pssp_instance_from_json(const char* document, pssp_instance** out) {
  return guarded([&] {
    require(document && out, "null argument");
    *out = new pssp_instance{pssp::instance_from_json(document)};
  });
}

pssp_status pssp_instance_successive_primes(size_t n, pssp_instance** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = new pssp_instance{pssp::successive_primes_instance(n)};
  });
}

void pssp_instance_destroy(pssp_instance* instance) { delete instance; }

size_t pssp_instance_size(const pssp_instance* instance) {
  return instance ? instance->value.size() : 0;
}

int64_t pssp_instance_total(const pssp_instance* instance) {
  return instance ? instance->value.total() : 0;
}

int pssp_instance_target(const pssp_instance* instance, int64_t* target) {
  if (!instance || !instance->value.target()) return 0;
  if (target) *target = *instance->value.target();
  return 1;
}

pssp_status pssp_instance_to_json(const pssp_instance* instance, char** out) {
  return guarded([&] {
    require(instance && out, "null argument");
    *out = copy_string(pssp::instance_to_json(instance->value));
  });
}

pssp_status pssp_count_subsets(const pssp_instance* instance, uint64_t* counts, size_t capacity,
                               size_t* written) {
  if (!instance || !written) return fail(PSSP_ERR_INVALID_ARGUMENT, "null argument");
  const auto needed = static_cast<size_t>(instance->value.total()) + 1;
  *written = needed;
  if (!counts || capacity < needed) {
    return fail(PSSP_ERR_BUFFER_TOO_SMALL, "count buffer needs total+1 entries");
  }
  return guarded([&] {
    const auto table = pssp::count_subsets_dp(instance->value);
    std::copy(table.counts().begin(), table.counts().end(), counts);
  });
}

pssp_status pssp_decide_exact(const pssp_instance* instance, int* answer) {
  return guarded([&] {
    require(instance && answer, "null argument");
    *answer = pssp::decide(instance->value) ? 1 : 0;
  });
}

// ---- network

pssp_status pssp_network_build(const pssp_instance* instance, pssp_network** out) {
  return guarded([&] {
    require(instance && out, "null argument");
    *out = new pssp_network{pssp::build_network(instance->value)};
  });
}

pssp_status pssp_network_import(const char* document, pssp_network** out) {
  return guarded([&] {
    require(document && out, "null argument");
    *out = new pssp_network{pssp::import_network(document)};
  });
}

void pssp_network_destroy(pssp_network* network) { delete network; }

pssp_status pssp_network_stats_get(const pssp_network* network, pssp_network_stats* stats) {
  return guarded([&] {
    require(network && stats, "null argument");
    const auto s = pssp::network_stats(network->value);
    *stats = pssp_network_stats{s.n_split, s.n_pass,  s.n_converge, s.n_ports,
                                s.n_nodes, s.n_edges, s.depth};
  });
}

pssp_status pssp_network_export(const pssp_network* network, char** out_json) {
  return guarded([&] {
    require(network && out_json, "null argument");
    *out_json = copy_string(pssp::export_network(network->value));
  });
}

pssp_status pssp_network_port_paths(const pssp_network* network, int64_t* ports,
                                    uint64_t* paths, size_t capacity, size_t* written) {
  if (!network || !written) return fail(PSSP_ERR_INVALID_ARGUMENT, "null argument");
  const auto out_ports = network->value.output_ports();
  *written = out_ports.size();
  if (!ports || !paths || capacity < out_ports.size()) {
    return fail(PSSP_ERR_BUFFER_TOO_SMALL, "buffers need one entry per output port");
  }
  return guarded([&] {
    const auto counts = pssp::count_port_paths(network->value);
    std::copy(out_ports.begin(), out_ports.end(), ports);
    std::copy(counts.begin(), counts.end(), paths);
  });
}

// ---- propagation

pssp_status pssp_params_lossless(pssp_optical_params* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = to_c(pssp::OpticalParams::lossless());
  });
}

pssp_status pssp_params_validate(const pssp_optical_params* params) {
  return guarded([&] {
    require(params != nullptr, "null argument");
    from_c(*params).validate();
  });
}

pssp_status pssp_propagate(const pssp_network* network, const pssp_optical_params* params,
                           double input_power, pssp_distribution** out) {
  return guarded([&] {
    require(network && params && out, "null argument");
    *out = new pssp_distribution{pssp::propagate(network->value, from_c(*params), input_power)};
  });
}

pssp_status pssp_lossless_reference(const pssp_instance* instance, pssp_distribution** out) {
  return guarded([&] {
    require(instance && out, "null argument");
    *out = new pssp_distribution{pssp::lossless_reference(instance->value)};
  });
}

pssp_status pssp_apply_noise(const pssp_distribution* dist, const pssp_noise_model* noise,
                             pssp_distribution** out) {
  return guarded([&] {
    require(dist && noise && out, "null argument");
    *out = new pssp_distribution{pssp::apply_noise(dist->value, from_c(*noise))};
  });
}

void pssp_distribution_destroy(pssp_distribution* dist) { delete dist; }

double pssp_distribution_at(const pssp_distribution* dist, int64_t port) {
  return dist ? dist->value.at(port) : 0.0;
}

int64_t pssp_distribution_max_port(const pssp_distribution* dist) {
  return dist ? dist->value.max_port : 0;
}

pssp_status pssp_distribution_ledger(const pssp_distribution* dist, pssp_loss_ledger* ledger) {
  return guarded([&] {
    require(dist && ledger, "null argument");
    const auto& l = dist->value.ledger;
    *ledger = pssp_loss_ledger{l.propagation, l.bend, l.converge_insertion, l.residual_sink,
                               l.crosstalk_stray};
  });
}

pssp_status pssp_distribution_csv(const pssp_distribution* dist, const pssp_instance* instance,
                                  const pssp_output_meta* meta, char** out_csv) {
  return guarded([&] {
    require(dist && instance && out_csv, "null argument");
    const auto oracle = pssp::count_subsets_dp(instance->value);
    *out_csv = copy_string(pssp::distribution_csv(dist->value, oracle, from_c(meta)));
  });
}

// ---- readout

pssp_status pssp_tolerance_band(const pssp_distribution* dist, const pssp_instance* instance,
                                pssp_band* band) {
  return guarded([&] {
    require(dist && instance && band, "null argument");
    const auto b = pssp::tolerance_band(dist->value, pssp::count_subsets_dp(instance->value));
    *band = pssp_band{b.lower, b.upper, b.valid ? 1 : 0};
  });
}

pssp_status pssp_classify(const pssp_distribution* dist, double threshold,
                          const pssp_instance* instance, pssp_report** out) {
  return guarded([&] {
    require(dist && instance && out, "null argument");
    *out = new pssp_report{pssp::classify(dist->value, threshold, instance->value)};
  });
}

pssp_status pssp_read_out(const pssp_distribution* dist, const pssp_instance* instance,
                          double threshold, pssp_report** out) {
  return guarded([&] {
    require(dist && instance && out, "null argument");
    std::optional<double> t;
    if (threshold > 0.0) t = threshold;
    *out = new pssp_report{pssp::read_out(dist->value, instance->value, t)};
  });
}

void pssp_report_destroy(pssp_report* report) { delete report; }

pssp_answer pssp_report_answer(const pssp_report* report) {
  if (!report || !report->value.answer) return PSSP_ANSWER_NONE;
  switch (*report->value.answer) {
    case pssp::Answer::kYes: return PSSP_ANSWER_YES;
    case pssp::Answer::kNo: return PSSP_ANSWER_NO;
    case pssp::Answer::kIndeterminate: return PSSP_ANSWER_INDETERMINATE;
  }
  return PSSP_ANSWER_INDETERMINATE;
}

size_t pssp_report_mismatch_count(const pssp_report* report) {
  return report ? report->value.mismatches.size() : 0;
}

pssp_status pssp_report_band(const pssp_report* report, pssp_band* band) {
  return guarded([&] {
    require(report && band, "null argument");
    const auto& b = report->value.band;
    *band = pssp_band{b.lower, b.upper, b.valid ? 1 : 0};
  });
}

pssp_status pssp_report_json(const pssp_report* report, const pssp_output_meta* meta,
                             char** out_json) {
  return guarded([&] {
    require(report && out_json, "null argument");
    *out_json = copy_string(pssp::report_json(report->value, from_c(meta)));
  });
}

pssp_status pssp_max_reliable_size(const pssp_optical_params* params,
                                   const pssp_noise_model* noise, int cap, int* n,
                                   int* cap_reached) {
  return guarded([&] {
    require(params && noise && n, "null argument");
    const auto r = pssp::max_reliable_size(from_c(*params), from_c(*noise),
                                           cap > 0 ? cap : pssp::kReliableSizeCap);
    *n = r.n;
    if (cap_reached) *cap_reached = r.cap_reached ? 1 : 0;
  });
}

// ---- presets

pssp_status pssp_presets_create(const char* document, pssp_presets** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = new pssp_presets{document ? pssp::PresetCatalog::from_json(document)
                                     : pssp::PresetCatalog::builtin()};
  });
}

void pssp_presets_destroy(pssp_presets* presets) { delete presets; }

pssp_status pssp_presets_json(const pssp_presets* presets, char** out_json) {
  return guarded([&] {
    require(presets && out_json, "null argument");
    *out_json = copy_string(presets->value.to_json());
  });
}

pssp_status pssp_presets_optics(const pssp_presets* presets, const char* name,
                                pssp_optical_params* out) {
  return guarded([&] {
    require(presets && name && out, "null argument");
    *out = to_c(presets->value.optics_preset(name));
  });
}

pssp_status pssp_presets_geometry(const pssp_presets* presets, pssp_geometry* out) {
  return guarded([&] {
    require(presets && out, "null argument");
    const auto& g = presets->value.geometry;
    *out = pssp_geometry{g.node_pitch_mm, g.diagonal_factor, g.split_coupling_len_mm,
                         g.converge_coupling_len_mm, g.extra_len_per_junction_mm};
  });
}

pssp_status pssp_presets_carrier_speed(const pssp_presets* presets, const char* name,
                                       double* speed_mm_per_s) {
  return guarded([&] {
    require(presets && name && speed_mm_per_s, "null argument");
    *speed_mm_per_s = presets->value.carrier(name).speed_mm_per_s;
  });
}

size_t pssp_presets_electronic_count(const pssp_presets* presets) {
  return presets ? presets->value.electronics.size() : 0;
}

pssp_status pssp_presets_electronic(const pssp_presets* presets, size_t index, const char** name,
                                    double* flops, double* ops_per_subset_coefficient) {
  return guarded([&] {
    require(presets != nullptr, "null argument");
    require(index < presets->value.electronics.size(), "electronic model index out of range");
    const auto& m = presets->value.electronics[index];
    if (name) *name = m.name.c_str();
    if (flops) *flops = m.flops;
    if (ops_per_subset_coefficient) *ops_per_subset_coefficient = m.ops_per_subset_coefficient;
  });
}

pssp_status pssp_presets_snr(const pssp_presets* presets, pssp_snr_model* out) {
  return guarded([&] {
    require(presets && out, "null argument");
    const auto& s = presets->value.snr;
    *out = pssp_snr_model{s.c1, s.c2, s.input_power, s.noise_power};
  });
}

// ---- performance models

pssp_status pssp_longest_path_length(const pssp_instance* instance, const pssp_geometry* geom,
                                     double* mm) {
  return guarded([&] {
    require(instance && geom && mm, "null argument");
    *mm = pssp::longest_path_length_mm(instance->value, from_c(*geom));
  });
}

pssp_status pssp_photonic_time(const pssp_instance* instance, const pssp_geometry* geom,
                               double speed_mm_per_s, double* seconds) {
  return guarded([&] {
    require(instance && geom && seconds, "null argument");
    *seconds = pssp::photonic_time_s(instance->value, from_c(*geom), carrier(speed_mm_per_s));
  });
}

pssp_status pssp_quantum_photonic_time(const pssp_instance* instance, const pssp_geometry* geom,
                                       double speed_mm_per_s, double m, double* seconds) {
  return guarded([&] {
    require(instance && geom && seconds, "null argument");
    *seconds = pssp::quantum_photonic_time_s(instance->value, from_c(*geom),
                                             carrier(speed_mm_per_s),
                                             pssp::QuantumSourceModel{m});
  });
}

pssp_status pssp_electronic_time(int n, double flops, double ops_per_subset_coefficient,
                                 double* seconds) {
  return guarded([&] {
    require(seconds != nullptr, "null argument");
    *seconds = pssp::electronic_time_s(
        n, pssp::ElectronicModel{"electronic", flops, ops_per_subset_coefficient});
  });
}

pssp_status pssp_crossover(const pssp_geometry* geom, double speed_mm_per_s, double flops,
                           double ops_per_subset_coefficient, int cap, int* n) {
  return guarded([&] {
    require(geom && n, "null argument");
    *n = pssp::crossover(from_c(*geom), carrier(speed_mm_per_s),
                         pssp::ElectronicModel{"electronic", flops, ops_per_subset_coefficient},
                         cap > 0 ? cap : pssp::kCrossoverCap);
  });
}

pssp_status pssp_calibrate_flops(int target_n, const pssp_geometry* geom, double speed_mm_per_s,
                                 double ops_per_subset_coefficient, double* flops) {
  return guarded([&] {
    require(geom && flops, "null argument");
    *flops = pssp::calibrate_flops(target_n, from_c(*geom), carrier(speed_mm_per_s),
                                   ops_per_subset_coefficient);
  });
}

pssp_status pssp_snr(int n, const pssp_snr_model* model, double* db) {
  return guarded([&] {
    require(model && db, "null argument");
    *db = pssp::snr_db(n, from_c(*model));
  });
}

pssp_status pssp_fisher_info(double theta, double* info) {
  return guarded([&] {
    require(info != nullptr, "null argument");
    *info = pssp::fisher_info(theta);
  });
}

pssp_status pssp_variance_bound(double theta, int64_t trials, double* bound) {
  return guarded([&] {
    require(bound != nullptr, "null argument");
    *bound = pssp::variance_bound(theta, trials);
  });
}

pssp_status pssp_theta_of_n(int n, const pssp_snr_model* model, double* theta) {
  return guarded([&] {
    require(model && theta, "null argument");
    *theta = pssp::theta_of_n(n, from_c(*model));
  });
}

pssp_status pssp_race_csv(const pssp_presets* presets, int n_min, int n_max,
                          const pssp_output_meta* meta, char** out_csv) {
  return guarded([&] {
    require(presets && out_csv, "null argument");
    const auto& catalog = presets->value;
    const auto& photon = catalog.carrier("photon");
    const auto rows = pssp::race_table(n_min, n_max, catalog.geometry, photon,
                                       catalog.carrier("actin"), catalog.electronics);
    std::vector<pssp::CrossoverResult> crossovers;
    for (const auto& model : catalog.electronics) {
      pssp::CrossoverResult c{model.name, 0};
      try {
        c.n = pssp::crossover(catalog.geometry, photon, model);
      } catch (const pssp::Error& e) {
        if (e.code() != pssp::ErrorCode::kNoCrossover) throw;
      }
      crossovers.push_back(c);
    }
    *out_csv = copy_string(pssp::race_csv(rows, catalog.electronics, crossovers, from_c(meta)));
  });
}

pssp_status pssp_analysis_csv(const pssp_snr_model* model, int n_min, int n_max, int64_t trials,
                              const pssp_output_meta* meta, char** out_csv) {
  return guarded([&] {
    require(model && out_csv, "null argument");
    const auto m = from_c(*model);
    const auto rows = pssp::analysis_table(n_min, n_max, m, trials);
    *out_csv = copy_string(pssp::analysis_csv(rows, m, trials, from_c(meta)));
  });
}

}  // extern "C"
