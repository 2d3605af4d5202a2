#include "pssp/presets.hpp"

#include <json.hpp>

#include "pssp/error.hpp"

namespace pssp {

namespace {

using nlohmann::json;

// Reads the known numeric fields of `obj` into the given slots, rejecting
// any field not listed.
template <typename Slots>
void read_fields(const json& obj, const char* section, Slots&& slots) {
  if (!obj.is_object()) {
    throw Error(ErrorCode::kParse, std::string(section) + " must be an object");
  }
  for (const auto& [key, value] : obj.items()) {
    if (!slots(key, value)) {
      throw Error(ErrorCode::kParse, std::string("unknown field '") + key + "' in " + section);
    }
  }
}

OpticalParams optics_from_json(const json& obj, OpticalParams p) {
  read_fields(obj, "optics", [&](const std::string& k, const json& v) {
    if (k == "split_diagonal_fraction") p.split_diagonal_fraction = v.get<double>();
    else if (k == "pass_crosstalk") p.pass_crosstalk = v.get<double>();
    else if (k == "converge_residual") p.converge_residual = v.get<double>();
    else if (k == "converge_insertion_loss") p.converge_insertion_loss = v.get<double>();
    else if (k == "propagation_loss_db_per_node") p.propagation_loss_db_per_node = v.get<double>();
    else if (k == "bend_excess_loss") p.bend_excess_loss = v.get<double>();
    else if (k == "divert_crosstalk") p.divert_crosstalk = v.get<bool>();
    else return false;
    return true;
  });
  p.validate();
  return p;
}

json optics_to_json(const OpticalParams& p) {
  return {{"split_diagonal_fraction", p.split_diagonal_fraction},
          {"pass_crosstalk", p.pass_crosstalk},
          {"converge_residual", p.converge_residual},
          {"converge_insertion_loss", p.converge_insertion_loss},
          {"propagation_loss_db_per_node", p.propagation_loss_db_per_node},
          {"bend_excess_loss", p.bend_excess_loss},
          {"divert_crosstalk", p.divert_crosstalk}};
}

}  // namespace

PresetCatalog PresetCatalog::builtin() {
  PresetCatalog c;
  c.optics.emplace("lossless", OpticalParams::lossless());
  c.optics.emplace("paper-default", OpticalParams::measured_default());
  c.carriers.emplace("photon", CarrierModel::photon());
  c.carriers.emplace("actin", CarrierModel::actin());
  // Calibrated with calibrate_flops() for crossovers at N = 6, 12, 28 under
  // the default geometry, rounded to three significant figures.
  c.electronics = {{"cpu", 8.17e11, 1.0}, {"gpu", 4.68e13, 1.0}, {"super", 2.24e18, 1.0}};
  return c;
}

PresetCatalog PresetCatalog::from_json(std::string_view document, const PresetCatalog& base) {
  PresetCatalog c = base;
  try {
    const json doc = json::parse(document);
    if (!doc.is_object()) throw Error(ErrorCode::kParse, "config must be a JSON object");
    // "run" belongs to the command-line front end and is skipped here.
    for (const auto& [key, value] : doc.items()) {
      if (key != "optics" && key != "geometry" && key != "carriers" && key != "electronics" &&
          key != "snr" && key != "run") {
        throw Error(ErrorCode::kParse, "unknown config section '" + key + "'");
      }
    }

    if (doc.contains("optics")) {
      for (const auto& [name, obj] : doc["optics"].items()) {
        const auto it = c.optics.find(name);
        c.optics[name] = optics_from_json(obj, it == c.optics.end() ? OpticalParams{} : it->second);
      }
    }
    if (doc.contains("geometry")) {
      GeometryParams& g = c.geometry;
      read_fields(doc["geometry"], "geometry", [&](const std::string& k, const json& v) {
        if (k == "node_pitch_mm") g.node_pitch_mm = v.get<double>();
        else if (k == "diagonal_factor") g.diagonal_factor = v.get<double>();
        else if (k == "split_coupling_len_mm") g.split_coupling_len_mm = v.get<double>();
        else if (k == "converge_coupling_len_mm") g.converge_coupling_len_mm = v.get<double>();
        else if (k == "extra_len_per_junction_mm") g.extra_len_per_junction_mm = v.get<double>();
        else return false;
        return true;
      });
      g.validate();
    }
    if (doc.contains("carriers")) {
      for (const auto& [name, obj] : doc["carriers"].items()) {
        CarrierModel m{name, c.carriers.count(name) ? c.carriers[name].speed_mm_per_s : 0.0};
        read_fields(obj, "carriers", [&](const std::string& k, const json& v) {
          if (k != "speed_mm_per_s") return false;
          m.speed_mm_per_s = v.get<double>();
          return true;
        });
        m.validate();
        c.carriers[name] = m;
      }
    }
    if (doc.contains("electronics")) {
      const json& list = doc["electronics"];
      if (!list.is_array()) throw Error(ErrorCode::kParse, "electronics must be an array");
      c.electronics.clear();
      for (const json& obj : list) {
        ElectronicModel m;
        read_fields(obj, "electronics", [&](const std::string& k, const json& v) {
          if (k == "name") m.name = v.get<std::string>();
          else if (k == "flops") m.flops = v.get<double>();
          else if (k == "ops_per_subset_coefficient") m.ops_per_subset_coefficient = v.get<double>();
          else return false;
          return true;
        });
        if (m.name.empty()) throw Error(ErrorCode::kParse, "electronic model without a name");
        m.validate();
        c.electronics.push_back(m);
      }
    }
    if (doc.contains("snr")) {
      SnrModel& s = c.snr;
      read_fields(doc["snr"], "snr", [&](const std::string& k, const json& v) {
        if (k == "c1") s.c1 = v.get<double>();
        else if (k == "c2") s.c2 = v.get<double>();
        else if (k == "input_power") s.input_power = v.get<double>();
        else if (k == "noise_power") s.noise_power = v.get<double>();
        else return false;
        return true;
      });
      s.validate();
    }
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::kParse, std::string("config: ") + ex.what());
  }
  return c;
}

std::string PresetCatalog::to_json() const {
  json doc;
  for (const auto& [name, p] : optics) doc["optics"][name] = optics_to_json(p);
  doc["geometry"] = {{"node_pitch_mm", geometry.node_pitch_mm},
                     {"diagonal_factor", geometry.diagonal_factor},
                     {"split_coupling_len_mm", geometry.split_coupling_len_mm},
                     {"converge_coupling_len_mm", geometry.converge_coupling_len_mm},
                     {"extra_len_per_junction_mm", geometry.extra_len_per_junction_mm}};
  for (const auto& [name, m] : carriers) doc["carriers"][name] = {{"speed_mm_per_s", m.speed_mm_per_s}};
  doc["electronics"] = json::array();
  for (const auto& m : electronics) {
    doc["electronics"].push_back({{"name", m.name},
                                  {"flops", m.flops},
                                  {"ops_per_subset_coefficient", m.ops_per_subset_coefficient}});
  }
  doc["snr"] = {{"c1", snr.c1}, {"c2", snr.c2},
                {"input_power", snr.input_power}, {"noise_power", snr.noise_power}};
  return doc.dump(2);
}

const OpticalParams& PresetCatalog::optics_preset(const std::string& name) const {
  const auto it = optics.find(name);
  if (it == optics.end()) throw Error(ErrorCode::kUnknownPreset, "unknown optics preset '" + name + "'");
  return it->second;
}

const CarrierModel& PresetCatalog::carrier(const std::string& name) const {
  const auto it = carriers.find(name);
  if (it == carriers.end()) throw Error(ErrorCode::kUnknownPreset, "unknown carrier '" + name + "'");
  return it->second;
}

const ElectronicModel& PresetCatalog::electronic(const std::string& name) const {
  for (const auto& m : electronics) {
    if (m.name == name) return m;
  }
  throw Error(ErrorCode::kUnknownPreset, "unknown electronic model '" + name + "'");
}

}  // namespace pssp
