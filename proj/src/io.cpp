#include "pssp/io.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "pssp/error.hpp"

namespace pssp {

namespace {

using nlohmann::json;

void write_header(std::ostringstream& out, const OutputMeta& meta) {
  out << "# pssp " << meta.version << '\n'
      << "# config_hash " << meta.config_hash << '\n'
      << "# seed " << meta.seed << '\n';
}

json meta_json(const OutputMeta& meta) {
  return {{"version", meta.version}, {"config_hash", meta.config_hash}, {"seed", meta.seed}};
}

}  // namespace

Instance instance_from_json(std::string_view document) {
  std::vector<std::int64_t> elements;
  std::optional<std::int64_t> target;
  try {
    const json doc = json::parse(document);
    if (!doc.is_object()) throw Error(ErrorCode::kParse, "instance must be a JSON object");
    const json& list = doc.at("elements");
    if (!list.is_array()) throw Error(ErrorCode::kParse, "elements must be an array");
    for (const json& v : list) {
      if (!v.is_number_integer()) throw Error(ErrorCode::kParse, "elements must be integers");
      elements.push_back(v.get<std::int64_t>());
    }
    if (doc.contains("target") && !doc["target"].is_null()) {
      if (!doc["target"].is_number_integer()) {
        throw Error(ErrorCode::kParse, "target must be an integer or null");
      }
      target = doc["target"].get<std::int64_t>();
    }
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::kParse, std::string("instance document: ") + ex.what());
  }
  return Instance::parse(std::move(elements), target);
}

std::string instance_to_json(const Instance& instance) {
  json doc;
  doc["elements"] = std::vector<std::int64_t>(instance.elements().begin(), instance.elements().end());
  doc["target"] = instance.target() ? json(*instance.target()) : json(nullptr);
  return doc.dump();
}

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (const unsigned char ch : text) {
    hash ^= ch;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string distribution_csv(const IntensityDistribution& dist, const SubsetCountTable& oracle,
                             const OutputMeta& meta) {
  std::ostringstream out;
  write_header(out, meta);
  out << "port,intensity,category\n";
  for (std::int64_t s = 0; s <= oracle.total(); ++s) {
    out << s << ',' << format_number(dist.at(s)) << ','
        << (oracle.achievable(s) ? "present" : "absent") << '\n';
  }
  const LossLedger& l = dist.ledger;
  out << "# ledger,propagation," << format_number(l.propagation) << '\n'
      << "# ledger,bend," << format_number(l.bend) << '\n'
      << "# ledger,converge_insertion," << format_number(l.converge_insertion) << '\n'
      << "# ledger,residual_sink," << format_number(l.residual_sink) << '\n'
      << "# ledger,crosstalk_stray," << format_number(l.crosstalk_stray) << '\n'
      << "# input_power," << format_number(dist.input_power) << '\n';
  const ThresholdBand band = tolerance_band(dist, oracle);
  out << "# band," << format_number(band.lower) << ',' << format_number(band.upper) << ','
      << (band.valid ? "valid" : "invalid") << '\n';
  return out.str();
}

std::string report_json(const DecisionReport& report, const OutputMeta& meta) {
  json doc;
  doc["meta"] = meta_json(meta);
  doc["answer"] = report.answer ? json(answer_name(*report.answer)) : json(nullptr);
  doc["threshold"] = report.threshold ? json(*report.threshold) : json(nullptr);
  doc["band"] = {{"lower", report.band.lower},
                 {"upper", report.band.upper},
                 {"valid", report.band.valid}};
  json ports = json::array();
  for (const PortReading& r : report.ports) {
    ports.push_back({{"port", r.port},
                     {"intensity", r.intensity},
                     {"class", report.threshold ? json(port_class_name(r.measured)) : json(nullptr)},
                     {"oracle", port_class_name(r.oracle)}});
  }
  doc["ports"] = std::move(ports);
  doc["mismatches"] = report.mismatches;
  return doc.dump(2) + "\n";
}

std::string race_csv(const std::vector<RaceRow>& rows,
                     const std::vector<ElectronicModel>& electronics,
                     const std::vector<CrossoverResult>& crossovers, const OutputMeta& meta) {
  std::ostringstream out;
  write_header(out, meta);
  out << "N,photonic_s,molecular_s";
  for (const auto& m : electronics) out << ',' << m.name << "_s";
  out << '\n';
  for (const RaceRow& row : rows) {
    out << row.n << ',' << format_number(row.photonic_s) << ',' << format_number(row.molecular_s);
    for (const double t : row.electronic_s) out << ',' << format_number(t);
    out << '\n';
  }
  for (const auto& c : crossovers) {
    out << "# crossover," << c.model << ',';
    if (c.n > 0) {
      out << c.n;
    } else {
      out << "none";
    }
    out << '\n';
  }
  return out.str();
}

std::string analysis_csv(const std::vector<AnalysisRow>& rows, const SnrModel& model,
                         std::int64_t trials, const OutputMeta& meta) {
  std::ostringstream out;
  write_header(out, meta);
  out << "# snr_offset_db," << format_number(model.offset_db()) << '\n'
      << "# trials," << trials << '\n'
      << "N,prime_sum,snr_db,theta,fisher_info,variance_bound,theta_valid\n";
  for (const AnalysisRow& row : rows) {
    out << row.n << ',' << row.prime_sum << ',' << format_number(row.snr_db) << ',';
    if (row.theta_valid) {
      out << format_number(row.theta) << ',' << format_number(row.fisher_info) << ','
          << format_number(row.variance_bound) << ",1\n";
    } else {
      out << ",,,0\n";
    }
  }
  return out.str();
}

}  // namespace pssp
