/*
 * C interface to the photonic subset-sum simulator.
 *
 * Objects are opaque handles created by pssp_*_create / builders and released
 * with the matching *_destroy. Every fallible call returns a pssp_status; on
 * failure pssp_last_error() describes the cause for the calling thread.
 * Strings returned through char** are owned by the caller and released with
 * pssp_string_free.
 */
#ifndef PSSP_PSSP_H
#define PSSP_PSSP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(PSSP_BUILDING_LIBRARY)
#    define PSSP_API __declspec(dllexport)
#  else
#    define PSSP_API __declspec(dllimport)
#  endif
#else
#  define PSSP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pssp_status {
  PSSP_OK = 0,
  PSSP_ERR_INVALID_ARGUMENT = 1,
  PSSP_ERR_EMPTY_INSTANCE = 2,
  PSSP_ERR_NON_POSITIVE_ELEMENT = 3,
  PSSP_ERR_TARGET_OUT_OF_RANGE = 4,
  PSSP_ERR_COUNT_OVERFLOW = 5,
  PSSP_ERR_INSTANCE_TOO_LARGE = 6,
  PSSP_ERR_MISSING_TARGET = 7,
  PSSP_ERR_INVALID_PARAMS = 8,
  PSSP_ERR_THETA_OUT_OF_RANGE = 9,
  PSSP_ERR_NO_CROSSOVER = 10,
  PSSP_ERR_UNKNOWN_PRESET = 11,
  PSSP_ERR_PARSE = 12,
  PSSP_ERR_IO = 13,
  PSSP_ERR_BUFFER_TOO_SMALL = 14,
  PSSP_ERR_INTERNAL = 99
} pssp_status;

typedef enum pssp_answer {
  PSSP_ANSWER_YES = 0,
  PSSP_ANSWER_NO = 1,
  PSSP_ANSWER_INDETERMINATE = 2,
  PSSP_ANSWER_NONE = 3 /* instance has no target */
} pssp_answer;

typedef struct pssp_instance pssp_instance;
typedef struct pssp_network pssp_network;
typedef struct pssp_distribution pssp_distribution;
typedef struct pssp_report pssp_report;
typedef struct pssp_presets pssp_presets;

typedef struct pssp_optical_params {
  double split_diagonal_fraction;
  double pass_crosstalk;
  double converge_residual;
  double converge_insertion_loss;
  double propagation_loss_db_per_node;
  double bend_excess_loss;
  int divert_crosstalk;
} pssp_optical_params;

typedef struct pssp_noise_model {
  double noise_floor_per_port;
  uint64_t photon_budget; /* 0 = no shot noise */
  uint64_t seed;
} pssp_noise_model;

typedef struct pssp_network_stats {
  size_t n_split;
  size_t n_pass;
  size_t n_converge;
  size_t n_ports;
  size_t n_nodes;
  size_t n_edges;
  int64_t depth;
} pssp_network_stats;

typedef struct pssp_loss_ledger {
  double propagation;
  double bend;
  double converge_insertion;
  double residual_sink;
  double crosstalk_stray;
} pssp_loss_ledger;

typedef struct pssp_band {
  double lower;
  double upper;
  int valid;
} pssp_band;

typedef struct pssp_geometry {
  double node_pitch_mm;
  double diagonal_factor;
  double split_coupling_len_mm;
  double converge_coupling_len_mm;
  double extra_len_per_junction_mm;
} pssp_geometry;

typedef struct pssp_snr_model {
  double c1;
  double c2;
  double input_power;
  double noise_power;
} pssp_snr_model;

typedef struct pssp_output_meta {
  const char* config_hash;
  uint64_t seed;
} pssp_output_meta;

/* ---- library ---------------------------------------------------------- */

PSSP_API const char* pssp_version(void);
/* Message for the last failed call on this thread; never NULL. */
PSSP_API const char* pssp_last_error(void);
PSSP_API const char* pssp_status_name(pssp_status status);
PSSP_API void pssp_string_free(char* str);
PSSP_API pssp_status pssp_hash(const char* text, char** out_hex);

/* ---- instances -------------------------------------------------------- */

PSSP_API pssp_status pssp_instance_create(const int64_t* elements, size_t count,
                                          int has_target, int64_t target,
                                          pssp_instance** out);
PSSP_API pssp_status pssp_instance_from_json(const char* document, pssp_instance** out);
PSSP_API pssp_status pssp_instance_successive_primes(size_t n, pssp_instance** out);
PSSP_API void pssp_instance_destroy(pssp_instance* instance);
PSSP_API size_t pssp_instance_size(const pssp_instance* instance);
PSSP_API int64_t pssp_instance_total(const pssp_instance* instance);
/* Returns 1 and writes the target when present, 0 otherwise. */
PSSP_API int pssp_instance_target(const pssp_instance* instance, int64_t* target);
PSSP_API pssp_status pssp_instance_to_json(const pssp_instance* instance, char** out);

/* counts must hold total+1 entries; *written receives total+1. */
PSSP_API pssp_status pssp_count_subsets(const pssp_instance* instance, uint64_t* counts,
                                        size_t capacity, size_t* written);
PSSP_API pssp_status pssp_decide_exact(const pssp_instance* instance, int* answer);

/* ---- network ---------------------------------------------------------- */

PSSP_API pssp_status pssp_network_build(const pssp_instance* instance, pssp_network** out);
PSSP_API pssp_status pssp_network_import(const char* document, pssp_network** out);
PSSP_API void pssp_network_destroy(pssp_network* network);
PSSP_API pssp_status pssp_network_stats_get(const pssp_network* network,
                                            pssp_network_stats* stats);
PSSP_API pssp_status pssp_network_export(const pssp_network* network, char** out_json);
/* Paths per output port (branch-preserving through crossings). */
PSSP_API pssp_status pssp_network_port_paths(const pssp_network* network, int64_t* ports,
                                             uint64_t* paths, size_t capacity,
                                             size_t* written);

/* ---- propagation ------------------------------------------------------ */

PSSP_API pssp_status pssp_params_lossless(pssp_optical_params* out);
PSSP_API pssp_status pssp_params_validate(const pssp_optical_params* params);
PSSP_API pssp_status pssp_propagate(const pssp_network* network,
                                    const pssp_optical_params* params, double input_power,
                                    pssp_distribution** out);
PSSP_API pssp_status pssp_lossless_reference(const pssp_instance* instance,
                                             pssp_distribution** out);
PSSP_API pssp_status pssp_apply_noise(const pssp_distribution* dist,
                                      const pssp_noise_model* noise, pssp_distribution** out);
PSSP_API void pssp_distribution_destroy(pssp_distribution* dist);
/* Intensity at a port column; 0 for ports that received no light. */
PSSP_API double pssp_distribution_at(const pssp_distribution* dist, int64_t port);
PSSP_API int64_t pssp_distribution_max_port(const pssp_distribution* dist);
PSSP_API pssp_status pssp_distribution_ledger(const pssp_distribution* dist,
                                              pssp_loss_ledger* ledger);
PSSP_API pssp_status pssp_distribution_csv(const pssp_distribution* dist,
                                           const pssp_instance* instance,
                                           const pssp_output_meta* meta, char** out_csv);

/* ---- readout ---------------------------------------------------------- */

PSSP_API pssp_status pssp_tolerance_band(const pssp_distribution* dist,
                                         const pssp_instance* instance, pssp_band* band);
PSSP_API pssp_status pssp_classify(const pssp_distribution* dist, double threshold,
                                   const pssp_instance* instance, pssp_report** out);
/* threshold <= 0 selects the band midpoint, or indeterminate if none. */
PSSP_API pssp_status pssp_read_out(const pssp_distribution* dist,
                                   const pssp_instance* instance, double threshold,
                                   pssp_report** out);
PSSP_API void pssp_report_destroy(pssp_report* report);
PSSP_API pssp_answer pssp_report_answer(const pssp_report* report);
PSSP_API size_t pssp_report_mismatch_count(const pssp_report* report);
PSSP_API pssp_status pssp_report_band(const pssp_report* report, pssp_band* band);
PSSP_API pssp_status pssp_report_json(const pssp_report* report,
                                      const pssp_output_meta* meta, char** out_json);
PSSP_API pssp_status pssp_max_reliable_size(const pssp_optical_params* params,
                                            const pssp_noise_model* noise, int cap,
                                            int* n, int* cap_reached);

/* ---- presets ---------------------------------------------------------- */

/* document may be NULL for the built-in presets. */
PSSP_API pssp_status pssp_presets_create(const char* document, pssp_presets** out);
PSSP_API void pssp_presets_destroy(pssp_presets* presets);
PSSP_API pssp_status pssp_presets_json(const pssp_presets* presets, char** out_json);
PSSP_API pssp_status pssp_presets_optics(const pssp_presets* presets, const char* name,
                                         pssp_optical_params* out);
PSSP_API pssp_status pssp_presets_geometry(const pssp_presets* presets, pssp_geometry* out);
PSSP_API pssp_status pssp_presets_carrier_speed(const pssp_presets* presets, const char* name,
                                                double* speed_mm_per_s);
PSSP_API size_t pssp_presets_electronic_count(const pssp_presets* presets);
/* Name pointer stays valid for the lifetime of the presets handle. */
PSSP_API pssp_status pssp_presets_electronic(const pssp_presets* presets, size_t index,
                                             const char** name, double* flops,
                                             double* ops_per_subset_coefficient);
PSSP_API pssp_status pssp_presets_snr(const pssp_presets* presets, pssp_snr_model* out);

/* ---- performance models ----------------------------------------------- */

PSSP_API pssp_status pssp_longest_path_length(const pssp_instance* instance,
                                              const pssp_geometry* geom, double* mm);
PSSP_API pssp_status pssp_photonic_time(const pssp_instance* instance,
                                        const pssp_geometry* geom, double speed_mm_per_s,
                                        double* seconds);
PSSP_API pssp_status pssp_quantum_photonic_time(const pssp_instance* instance,
                                                const pssp_geometry* geom,
                                                double speed_mm_per_s, double m,
                                                double* seconds);
PSSP_API pssp_status pssp_electronic_time(int n, double flops,
                                          double ops_per_subset_coefficient, double* seconds);
PSSP_API pssp_status pssp_crossover(const pssp_geometry* geom, double speed_mm_per_s,
                                    double flops, double ops_per_subset_coefficient, int cap,
                                    int* n);
PSSP_API pssp_status pssp_calibrate_flops(int target_n, const pssp_geometry* geom,
                                          double speed_mm_per_s,
                                          double ops_per_subset_coefficient, double* flops);
PSSP_API pssp_status pssp_snr(int n, const pssp_snr_model* model, double* db);
PSSP_API pssp_status pssp_fisher_info(double theta, double* info);
PSSP_API pssp_status pssp_variance_bound(double theta, int64_t trials, double* bound);
PSSP_API pssp_status pssp_theta_of_n(int n, const pssp_snr_model* model, double* theta);

/* Race table over the first n_min..n_max primes, using the presets'
 * geometry, "photon"/"actin" carriers and every electronic model, followed by
 * one crossover row per electronic model. */
PSSP_API pssp_status pssp_race_csv(const pssp_presets* presets, int n_min, int n_max,
                                   const pssp_output_meta* meta, char** out_csv);
PSSP_API pssp_status pssp_analysis_csv(const pssp_snr_model* model, int n_min, int n_max,
                                       int64_t trials, const pssp_output_meta* meta,
                                       char** out_csv);

#ifdef __cplusplus
}
#endif

#endif /* PSSP_PSSP_H */
