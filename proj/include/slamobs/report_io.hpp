#pragma once

// Serialization of analysis reports (JSON document, plain text) and of
// covariance traces (CSV).

#include <charconv>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include <nlohmann/json.hpp>

#include "slamobs/analysis.hpp"
#include "slamobs/ekf_sim.hpp"

namespace slamobs {

/// Top-level fields of a report document, in emission order.
inline const std::vector<std::string>& report_fields() {
  static const std::vector<std::string> fields{
      "scope",       "segment", "expansion", "tolerance",    "max_power",  "matrix_rows",
      "matrix_cols", "rank",    "nullity",   "state_labels", "null_basis", "functionals",
      "modes"};
  return fields;
}

inline nlohmann::ordered_json report_to_json(const ObservabilityReport& rep) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["scope"] = to_string(rep.scope);
  j["segment"] = rep.segment ? ordered_json(*rep.segment) : ordered_json(nullptr);
  j["expansion"] = to_string(rep.expansion);
  j["tolerance"] = rep.rel_tol;
  j["max_power"] = rep.max_power;
  j["matrix_rows"] = rep.matrix_rows;
  j["matrix_cols"] = rep.matrix_cols;
  j["rank"] = rep.rank;
  j["nullity"] = rep.nullity;
  j["state_labels"] = rep.state_labels;
  ordered_json basis = ordered_json::array();
  for (Eigen::Index k = 0; k < rep.null_basis.dim(); ++k) {
    ordered_json v = ordered_json::array();
    for (Eigen::Index i = 0; i < rep.null_basis.vectors.rows(); ++i) v.push_back(rep.null_basis.vectors(i, k));
    basis.push_back(v);
  }
  j["null_basis"] = basis;
  ordered_json funcs = ordered_json::array();
  for (const auto& m : rep.mode_results) {
    funcs.push_back({{"label", m.label},
                     {"group", m.group},
                     {"observable", m.observable},
                     {"null_projection", m.null_projection}});
  }
  j["functionals"] = funcs;
  ordered_json modes = ordered_json::array();
  for (const auto& g : rep.group_verdicts()) {
    modes.push_back({{"label", g.group}, {"observable", g.observable}});
  }
  j["modes"] = modes;
  return j;
}

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

inline void write_report_text(std::ostream& os, const ObservabilityReport& rep) {
  os << "scope:       " << to_string(rep.scope);
  if (rep.segment) os << " (segment " << *rep.segment << ")";
  os << "\nexpansion:   " << to_string(rep.expansion) << "\n";
  os << "tolerance:   " << rep.rel_tol << "\n";
  os << "matrix:      " << rep.matrix_rows << " x " << rep.matrix_cols << "\n";
  os << "rank:        " << rep.rank << " of " << rep.matrix_cols << "\n";
  os << "nullity:     " << rep.nullity << "\n";
  std::vector<std::string> obs, unobs;
  for (const auto& g : rep.group_verdicts()) (g.observable ? obs : unobs).push_back(g.group);
  os << "observable:   " << (obs.empty() ? "-" : join(obs, ", ")) << "\n";
  os << "unobservable: " << (unobs.empty() ? "-" : join(unobs, ", ")) << "\n";
  std::vector<std::string> partial;
  for (const auto& m : rep.mode_results) {
    if (m.observable && !rep.verdict(m.group.empty() ? m.label : m.group).value_or(true)) {
      partial.push_back(m.label);
    }
  }
  if (!partial.empty()) os << "observable axes of unobservable modes: " << join(partial, ", ") << "\n";
}

inline std::string schedule_string(const DetectionSchedule& s, const std::vector<std::string>& names) {
  std::vector<std::string> segs;
  for (std::size_t i = 0; i < s.n_segments(); ++i) {
    std::vector<std::string> seen;
    for (std::size_t c = 0; c < s.n_features(); ++c) {
      if (s.detected(c, i)) seen.push_back(names[c]);
    }
    segs.push_back("{" + join(seen, ",") + "}");
  }
  return join(segs, " / ");
}

struct CaseRow {
  int case_id;
  std::string schedule;
  ObservabilityReport report;
};

inline void write_cases_table(std::ostream& os, const std::vector<CaseRow>& rows, Expansion mode) {
  os << "expansion: " << to_string(mode) << "\n";
  os << std::left << std::setw(6) << "case" << std::setw(22) << "schedule" << std::setw(6) << "rank"
     << std::setw(9) << "nullity" << "observable modes\n";
  for (const auto& r : rows) {
    std::vector<std::string> obs;
    for (const auto& g : r.report.group_verdicts()) {
      if (g.observable) obs.push_back(g.group);
    }
    os << std::left << std::setw(6) << r.case_id << std::setw(22) << r.schedule << std::setw(6)
       << r.report.rank << std::setw(9) << r.report.nullity << join(obs, ", ") << "\n";
  }
}

/// Locale-independent number formatting for CSV cells.
inline std::string format_number(double v, int precision = 10) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, precision);
  return std::string(buf, res.ptr);
}

inline std::string format_time(double t) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), t, std::chars_format::fixed, 6);
  return std::string(buf, res.ptr);
}

inline const std::vector<TraceGroup>& trace_groups() {
  static const std::vector<TraceGroup> groups{TraceGroup::position, TraceGroup::velocity,
                                              TraceGroup::attitude, TraceGroup::features,
                                              TraceGroup::relative};
  return groups;
}

inline void write_trace_csv(std::ostream& os, const CovarianceTrace& trace, TraceGroup group) {
  std::vector<const TraceColumn*> cols;
  for (const auto& c : trace.columns) {
    if (c.group == group) cols.push_back(&c);
  }
  os << "time_s";
  for (const auto* c : cols) os << ',' << c->label;
  os << '\n';
  for (std::size_t k = 0; k < trace.times.size(); ++k) {
    os << format_time(trace.times[k]);
    for (const auto* c : cols) os << ',' << format_number(c->values[k]);
    os << '\n';
  }
}

inline void write_states_csv(std::ostream& os, const StateRun& run) {
  os << "time_s,true_n,true_e,true_u,ins_n,ins_e,ins_u,est_n,est_e,est_u\n";
  for (std::size_t k = 0; k < run.times.size(); ++k) {
    os << format_time(run.times[k]);
    for (const Vec3* v : {&run.true_position[k], &run.ins_position[k], &run.estimated_position[k]}) {
      for (int a = 0; a < 3; ++a) os << ',' << format_number((*v)(a));
    }
    os << '\n';
  }
}

/// Writes <group>.csv for every trace group plus trajectory.csv when a state
/// run is present. Returns the written paths.
inline std::vector<std::filesystem::path> write_simulation_csvs(const SimulationResult& result,
                                                                const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + dir.string() + "': " + ec.message());
  std::vector<std::filesystem::path> written;
  auto open = [&](const std::string& name) {
    const auto path = dir / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    written.push_back(path);
    return out;
  };
  for (TraceGroup g : trace_groups()) {
    auto out = open(std::string(to_string(g)) + ".csv");
    write_trace_csv(out, result.trace, g);
  }
  if (result.states) {
    auto out = open("trajectory.csv");
    write_states_csv(out, *result.states);
  }
  return written;
}

}  // namespace slamobs
