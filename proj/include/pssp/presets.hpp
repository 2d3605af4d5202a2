#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "pssp/performance.hpp"
#include "pssp/propagation.hpp"

namespace pssp {

inline constexpr const char* kVersion = "0.1.0";

/// Named model presets. The shipped config/presets.json mirrors builtin().
struct PresetCatalog {
  std::map<std::string, OpticalParams> optics;
  GeometryParams geometry;
  std::map<std::string, CarrierModel> carriers;
  // Column order of the race table.
  std::vector<ElectronicModel> electronics;
  SnrModel snr;

  static PresetCatalog builtin();

  /// Overlays the sections present in a config document onto `base`. Unknown
  /// fields are rejected (kParse); section entries replace same-named presets.
  static PresetCatalog from_json(std::string_view document, const PresetCatalog& base);
  static PresetCatalog from_json(std::string_view document) {
    return from_json(document, builtin());
  }

  std::string to_json() const;

  /// Throw kUnknownPreset for unknown names.
  const OpticalParams& optics_preset(const std::string& name) const;
  const CarrierModel& carrier(const std::string& name) const;
  const ElectronicModel& electronic(const std::string& name) const;

  friend bool operator==(const PresetCatalog&, const PresetCatalog&) = default;
};

}  // namespace pssp
