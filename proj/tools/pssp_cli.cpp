// pssp: command-line front end for the photonic subset-sum simulator.
//
//   pssp decide          --elements 2,5,7,9 --target 14
//   pssp simulate        --elements 3,7,11 --preset paper-default
//   pssp race            --n-min 1 --n-max 30
//   pssp analyze         --n-min 1 --n-max 10 --in-over-noi 10
//   pssp export-network  --instance inst.json
//   pssp stats           --elements 3,7,9,11
//
// Global flags (--config, --seed, --out, --preset) may appear anywhere.
// Exit codes: 0 yes / ok, 1 no, 2 indeterminate, 3 usage, config or IO error.
//
// The config file is JSON. Sections "optics", "geometry", "carriers",
// "electronics" and "snr" overlay the built-in presets (see
// config/presets.json). A "run" section supplies defaults for any
// command-line option, keyed by the long option name with '-' replaced by
// '_', plus "instance" for an inline instance object.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pssp/pssp.h"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitIndeterminate = 2;
constexpr int kExitError = 3;

struct CliError {
  int exit_code;
  std::string message;
};

void check(pssp_status status) {
  if (status != PSSP_OK) {
    throw CliError{kExitError,
                   std::string(pssp_status_name(status)) + ": " + pssp_last_error()};
  }
}

template <typename T, void (*Destroy)(T*)>
struct Deleter {
  void operator()(T* p) const { Destroy(p); }
};
using InstancePtr = std::unique_ptr<pssp_instance, Deleter<pssp_instance, pssp_instance_destroy>>;
using NetworkPtr = std::unique_ptr<pssp_network, Deleter<pssp_network, pssp_network_destroy>>;
using DistPtr =
    std::unique_ptr<pssp_distribution, Deleter<pssp_distribution, pssp_distribution_destroy>>;
using ReportPtr = std::unique_ptr<pssp_report, Deleter<pssp_report, pssp_report_destroy>>;
using PresetsPtr = std::unique_ptr<pssp_presets, Deleter<pssp_presets, pssp_presets_destroy>>;

// Owns a string returned by the library.
std::string take(char* raw) {
  std::string s = raw ? raw : "";
  pssp_string_free(raw);
  return s;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{kExitError, "cannot read '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Options shared by all subcommands. Unset optionals fall back to the config
// file's "run" section, then to built-in defaults.
struct Options {
  std::optional<std::string> config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<std::string> preset;

  std::optional<std::string> elements;
  std::optional<std::string> instance_file;
  std::optional<std::int64_t> target;
  std::optional<double> threshold;
  std::optional<double> noise_floor;
  std::optional<std::uint64_t> photon_budget;
  std::optional<double> input_power;
  std::optional<int> n_min;
  std::optional<int> n_max;
  std::optional<double> in_over_noi;
  std::optional<std::int64_t> trials;
};

// Fully resolved settings; serialised into the config hash.
struct RunConfig {
  json instance;  // {"elements": [...], "target": ...} or null
  std::string preset = "lossless";
  std::optional<double> threshold;
  double noise_floor = 0.0;
  std::uint64_t photon_budget = 0;
  double input_power = 1.0;
  std::uint64_t seed = 0;
  std::optional<std::string> out_dir;
  int n_min = 1;
  int n_max = 30;
  std::optional<double> in_over_noi;
  std::int64_t trials = 1000;

  json to_json() const {
    return {{"instance", instance},
            {"preset", preset},
            {"threshold", threshold ? json(*threshold) : json(nullptr)},
            {"noise_floor", noise_floor},
            {"photon_budget", photon_budget},
            {"input_power", input_power},
            {"seed", seed},
            {"n_min", n_min},
            {"n_max", n_max},
            {"in_over_noi", in_over_noi ? json(*in_over_noi) : json(nullptr)},
            {"trials", trials}};
  }
};

std::vector<std::int64_t> parse_element_list(const std::string& text) {
  std::vector<std::int64_t> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw CliError{kExitError, "bad element '" + item + "' in --elements"};
    }
  }
  return values;
}

template <typename T>
void resolve(std::optional<T> flag, const json& run, const char* key, T& slot) {
  if (flag) {
    slot = *flag;
  } else if (run.contains(key) && !run[key].is_null()) {
    slot = run[key].get<T>();
  }
}

template <typename T>
void resolve(std::optional<T> flag, const json& run, const char* key, std::optional<T>& slot) {
  if (flag) {
    slot = *flag;
  } else if (run.contains(key) && !run[key].is_null()) {
    slot = run[key].get<T>();
  }
}

struct Context {
  RunConfig run;
  PresetsPtr presets;
  std::string config_hash;
};

Context load_context(const Options& opt, const std::string& command) {
  static const std::vector<std::string> kSections = {"optics", "geometry", "carriers",
                                                     "electronics", "snr", "run"};
  static const std::vector<std::string> kRunKeys = {
      "instance", "elements",      "instance_file", "target",      "preset",
      "threshold", "noise_floor",  "photon_budget", "input_power", "seed",
      "out",       "n_min",        "n_max",         "in_over_noi", "trials"};

  Context ctx;
  json config = json::object();
  std::string config_text;
  if (opt.config_path) {
    config_text = read_file(*opt.config_path);
    try {
      config = json::parse(config_text);
    } catch (const json::exception& e) {
      throw CliError{kExitError, std::string("config: ") + e.what()};
    }
    if (!config.is_object()) throw CliError{kExitError, "config must be a JSON object"};
    for (const auto& [key, value] : config.items()) {
      if (std::find(kSections.begin(), kSections.end(), key) == kSections.end()) {
        throw CliError{kExitError, "config: unknown section '" + key + "'"};
      }
    }
  }
  pssp_presets* presets = nullptr;
  check(pssp_presets_create(opt.config_path ? config_text.c_str() : nullptr, &presets));
  ctx.presets.reset(presets);

  const json run = config.value("run", json::object());
  for (const auto& [key, value] : run.items()) {
    if (std::find(kRunKeys.begin(), kRunKeys.end(), key) == kRunKeys.end()) {
      throw CliError{kExitError, "config: unknown run setting '" + key + "'"};
    }
  }

  RunConfig& rc = ctx.run;
  try {
    std::optional<std::int64_t> target;
    resolve(opt.target, run, "target", target);

    if (opt.elements) {
      rc.instance = {{"elements", parse_element_list(*opt.elements)}};
    } else if (opt.instance_file) {
      rc.instance = json::parse(read_file(*opt.instance_file));
    } else if (run.contains("instance")) {
      rc.instance = run["instance"];
    } else if (run.contains("elements")) {
      rc.instance = {{"elements", run["elements"]}};
    } else if (run.contains("instance_file")) {
      rc.instance = json::parse(read_file(run["instance_file"].get<std::string>()));
    } else {
      rc.instance = nullptr;
    }
    if (!rc.instance.is_null()) {
      if (!rc.instance.is_object()) throw CliError{kExitError, "instance must be a JSON object"};
      // An explicit target overrides the one in the instance document.
      if (target) rc.instance["target"] = *target;
      if (!rc.instance.contains("target")) rc.instance["target"] = nullptr;
    }

    resolve(opt.preset, run, "preset", rc.preset);
    resolve(opt.threshold, run, "threshold", rc.threshold);
    resolve(opt.noise_floor, run, "noise_floor", rc.noise_floor);
    resolve(opt.photon_budget, run, "photon_budget", rc.photon_budget);
    resolve(opt.input_power, run, "input_power", rc.input_power);
    resolve(opt.seed, run, "seed", rc.seed);
    resolve(opt.out_dir, run, "out", rc.out_dir);
    resolve(opt.n_min, run, "n_min", rc.n_min);
    resolve(opt.n_max, run, "n_max", rc.n_max);
    resolve(opt.in_over_noi, run, "in_over_noi", rc.in_over_noi);
    resolve(opt.trials, run, "trials", rc.trials);
  } catch (const json::exception& e) {
    throw CliError{kExitError, std::string("config: ") + e.what()};
  }

  // Unknown preset names are rejected up front, whatever the command.
  pssp_optical_params probe{};
  check(pssp_presets_optics(ctx.presets.get(), rc.preset.c_str(), &probe));

  json effective;
  effective["command"] = command;
  effective["presets"] = json::parse(take([&] {
    char* s = nullptr;
    check(pssp_presets_json(ctx.presets.get(), &s));
    return s;
  }()));
  effective["run"] = rc.to_json();
  ctx.config_hash = take([&] {
    char* s = nullptr;
    check(pssp_hash(effective.dump().c_str(), &s));
    return s;
  }());
  return ctx;
}

void emit(const Context& ctx, const std::string& filename, const std::string& content) {
  if (!ctx.run.out_dir) {
    std::cout << content;
    return;
  }
  std::error_code ec;
  fs::create_directories(*ctx.run.out_dir, ec);
  const fs::path path = fs::path(*ctx.run.out_dir) / filename;
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << content)) throw CliError{kExitError, "cannot write '" + path.string() + "'"};
  std::cerr << "wrote " << path.string() << '\n';
}

pssp_output_meta meta_of(const Context& ctx) {
  return pssp_output_meta{ctx.config_hash.c_str(), ctx.run.seed};
}

// Returns null with `out_of_range` set when the target lies outside [0, total].
InstancePtr load_instance(const Context& ctx, std::string* out_of_range = nullptr) {
  if (ctx.run.instance.is_null()) {
    throw CliError{kExitError, "no instance: use --elements, --instance or a config run section"};
  }
  pssp_instance* inst = nullptr;
  const pssp_status status = pssp_instance_from_json(ctx.run.instance.dump().c_str(), &inst);
  if (status == PSSP_ERR_TARGET_OUT_OF_RANGE && out_of_range) {
    *out_of_range = pssp_last_error();
    return nullptr;
  }
  check(status);
  return InstancePtr(inst);
}

DistPtr simulate(const Context& ctx, const pssp_instance* inst) {
  pssp_network* net = nullptr;
  check(pssp_network_build(inst, &net));
  NetworkPtr network(net);
  pssp_optical_params params{};
  check(pssp_presets_optics(ctx.presets.get(), ctx.run.preset.c_str(), &params));
  pssp_distribution* raw = nullptr;
  check(pssp_propagate(network.get(), &params, ctx.run.input_power, &raw));
  DistPtr dist(raw);
  if (ctx.run.noise_floor > 0.0 || ctx.run.photon_budget > 0) {
    const pssp_noise_model noise{ctx.run.noise_floor, ctx.run.photon_budget, ctx.run.seed};
    check(pssp_apply_noise(dist.get(), &noise, &raw));
    dist.reset(raw);
  }
  return dist;
}

int cmd_decide(const Context& ctx) {
  std::string rejection;
  InstancePtr inst = load_instance(ctx, &rejection);
  if (!inst) {
    json doc = {{"meta", {{"version", pssp_version()}, {"config_hash", ctx.config_hash},
                          {"seed", ctx.run.seed}}},
                {"answer", "no"},
                {"reason", "TargetOutOfRange"},
                {"detail", rejection}};
    emit(ctx, "report.json", doc.dump(2) + "\n");
    std::cerr << "answer: no (TargetOutOfRange: " << rejection << ")\n";
    return kExitNo;
  }
  if (!pssp_instance_target(inst.get(), nullptr)) {
    throw CliError{kExitError, "decide needs a target (--target)"};
  }

  DistPtr dist = simulate(ctx, inst.get());
  pssp_report* raw = nullptr;
  check(pssp_read_out(dist.get(), inst.get(), ctx.run.threshold.value_or(0.0), &raw));
  ReportPtr report(raw);

  const pssp_output_meta meta = meta_of(ctx);
  char* text = nullptr;
  check(pssp_report_json(report.get(), &meta, &text));
  emit(ctx, "report.json", take(text));

  int exact = 0;
  check(pssp_decide_exact(inst.get(), &exact));
  const pssp_answer answer = pssp_report_answer(report.get());
  const size_t mismatches = pssp_report_mismatch_count(report.get());
  std::cerr << "oracle: " << (exact ? "yes" : "no") << ", port mismatches: " << mismatches
            << '\n';

  if (ctx.run.preset == "lossless" && ctx.run.noise_floor == 0.0 &&
      ctx.run.photon_budget == 0 && pssp_instance_size(inst.get()) <= 20 &&
      answer != PSSP_ANSWER_INDETERMINATE && (answer == PSSP_ANSWER_YES) != (exact != 0)) {
    throw CliError{kExitError, "internal error: lossless read-out contradicts the oracle"};
  }

  switch (answer) {
    case PSSP_ANSWER_YES: std::cerr << "answer: yes\n"; return kExitYes;
    case PSSP_ANSWER_NO: std::cerr << "answer: no\n"; return kExitNo;
    default: std::cerr << "answer: indeterminate\n"; return kExitIndeterminate;
  }
}

int cmd_simulate(const Context& ctx) {
  InstancePtr inst = load_instance(ctx);
  DistPtr dist = simulate(ctx, inst.get());
  const pssp_output_meta meta = meta_of(ctx);
  char* text = nullptr;
  check(pssp_distribution_csv(dist.get(), inst.get(), &meta, &text));
  emit(ctx, "distribution.csv", take(text));
  return kExitYes;
}

int cmd_race(const Context& ctx) {
  if (ctx.run.n_min < 1 || ctx.run.n_max < ctx.run.n_min) {
    throw CliError{kExitError, "empty N range: need 1 <= n-min <= n-max"};
  }
  const pssp_output_meta meta = meta_of(ctx);
  char* text = nullptr;
  check(pssp_race_csv(ctx.presets.get(), ctx.run.n_min, ctx.run.n_max, &meta, &text));
  emit(ctx, "race.csv", take(text));
  return kExitYes;
}

int cmd_analyze(const Context& ctx) {
  if (ctx.run.n_min < 1 || ctx.run.n_max < ctx.run.n_min) {
    throw CliError{kExitError, "empty N range: need 1 <= n-min <= n-max"};
  }
  pssp_snr_model model{};
  check(pssp_presets_snr(ctx.presets.get(), &model));
  if (ctx.run.in_over_noi) {
    model.input_power = *ctx.run.in_over_noi;
    model.noise_power = 1.0;
  }
  const pssp_output_meta meta = meta_of(ctx);
  char* text = nullptr;
  check(pssp_analysis_csv(&model, ctx.run.n_min, ctx.run.n_max, ctx.run.trials, &meta, &text));
  emit(ctx, "analysis.csv", take(text));
  return kExitYes;
}

int cmd_export_network(const Context& ctx) {
  InstancePtr inst = load_instance(ctx);
  pssp_network* net = nullptr;
  check(pssp_network_build(inst.get(), &net));
  NetworkPtr network(net);
  char* text = nullptr;
  check(pssp_network_export(network.get(), &text));
  emit(ctx, "network.json", take(text) + "\n");
  return kExitYes;
}

int cmd_stats(const Context& ctx) {
  InstancePtr inst = load_instance(ctx);
  pssp_network* net = nullptr;
  check(pssp_network_build(inst.get(), &net));
  NetworkPtr network(net);
  pssp_network_stats s{};
  check(pssp_network_stats_get(network.get(), &s));
  const json doc = {{"meta", {{"version", pssp_version()}, {"config_hash", ctx.config_hash},
                              {"seed", ctx.run.seed}}},
                    {"n_split", s.n_split},
                    {"n_pass", s.n_pass},
                    {"n_converge", s.n_converge},
                    {"n_ports", s.n_ports},
                    {"n_nodes", s.n_nodes},
                    {"n_edges", s.n_edges},
                    {"depth", s.depth}};
  emit(ctx, "stats.json", doc.dump(2) + "\n");
  return kExitYes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Photonic subset-sum simulator"};
  app.require_subcommand(1);
  Options opt;

  auto add_global = [&](CLI::App* cmd) {
    cmd->add_option("--config", opt.config_path, "JSON config (preset sections + run)");
    cmd->add_option("--seed", opt.seed, "RNG seed, recorded in every output");
    cmd->add_option("--out", opt.out_dir, "Write outputs into this directory");
    cmd->add_option("--preset", opt.preset, "Optics preset (lossless, paper-default, ...)");
  };
  auto add_instance = [&](CLI::App* cmd) {
    cmd->add_option("--elements", opt.elements, "Comma-separated elements, e.g. 2,5,7,9");
    cmd->add_option("--instance", opt.instance_file, "Instance JSON file");
    cmd->add_option("--target", opt.target, "Target sum");
  };
  auto add_noise = [&](CLI::App* cmd) {
    cmd->add_option("--noise-floor", opt.noise_floor, "Noise added to every port");
    cmd->add_option("--photon-budget", opt.photon_budget, "Photons for Poisson shot noise");
    cmd->add_option("--input-power", opt.input_power, "Launched power");
  };
  auto add_range = [&](CLI::App* cmd) {
    cmd->add_option("--n-min", opt.n_min, "First N (default 1)");
    cmd->add_option("--n-max", opt.n_max, "Last N (default 30)");
  };

  add_global(&app);
  auto* decide = app.add_subcommand("decide", "Decide the SSP by optical read-out");
  auto* sim = app.add_subcommand("simulate", "Per-port intensity CSV with loss ledger");
  auto* race = app.add_subcommand("race", "Photonic vs molecular vs electronic timing");
  auto* analyze = app.add_subcommand("analyze", "SNR and Fisher information per N");
  auto* exportn = app.add_subcommand("export-network", "Junction network as JSON");
  auto* stats = app.add_subcommand("stats", "Junction counts of the network");
  for (auto* cmd : {decide, sim, race, analyze, exportn, stats}) add_global(cmd);
  for (auto* cmd : {decide, sim, exportn, stats}) add_instance(cmd);
  add_noise(decide);
  add_noise(sim);
  decide->add_option("--threshold", opt.threshold, "Read-out threshold (default: band midpoint)");
  add_range(race);
  add_range(analyze);
  analyze->add_option("--in-over-noi", opt.in_over_noi, "Input-to-noise power ratio");
  analyze->add_option("--trials", opt.trials, "Independent trials M for the variance bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    CLI::App* cmd = app.get_subcommands().front();
    const std::string name = cmd->get_name();
    const Context ctx = load_context(opt, name);
    if (name == "decide") return cmd_decide(ctx);
    if (name == "simulate") return cmd_simulate(ctx);
    if (name == "race") return cmd_race(ctx);
    if (name == "analyze") return cmd_analyze(ctx);
    if (name == "export-network") return cmd_export_network(ctx);
    return cmd_stats(ctx);
  } catch (const CliError& e) {
    std::cerr << "pssp: " << e.message << '\n';
    return e.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "pssp: " << e.what() << '\n';
    return kExitError;
  }
}
