#pragma once

// Subcommands behind the `slamobs` executable. Each returns a process exit
// code and writes to the given streams so it can be driven from tests.

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "slamobs/analysis.hpp"
#include "slamobs/ekf_sim.hpp"
#include "slamobs/report_io.hpp"
#include "slamobs/scenario_file.hpp"

namespace slamobs::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;  // parse or validation failure
inline constexpr int kExitIo = 2;       // missing input or unwritable output

struct AnalyzeFlags {
  std::optional<std::size_t> local;
  std::optional<double> tol;
  std::optional<Expansion> expansion;
  std::optional<std::string> out_dir;  // writes <dir>/report.json
  bool text = false;
};

inline int cmd_analyze(const std::string& path, const AnalyzeFlags& flags, std::ostream& out,
                       std::ostream& err) {
  if (!std::filesystem::exists(path)) {
    err << "error: scenario file '" << path << "' not found\n";
    return kExitIo;
  }
  ObservabilityReport rep;
  try {
    const ScenarioFile sf = load_scenario(path);
    const Scenario sc = build_analysis_scenario(sf);
    AnalysisOptions opts = build_analysis_options(sf);
    if (flags.tol) opts.rel_tol = *flags.tol;
    if (flags.expansion) opts.expansion = *flags.expansion;
    rep = flags.local ? analyze_local(sc, *flags.local, opts) : analyze_total(sc, opts);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  if (flags.out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(*flags.out_dir, ec);
    const auto file = std::filesystem::path(*flags.out_dir) / "report.json";
    std::ofstream f(file);
    if (ec || !f) {
      err << "error: cannot write '" << file.string() << "'\n";
      return kExitIo;
    }
    f << report_to_json(rep).dump(2) << "\n";
    out << "wrote " << file.string() << "\n";
  }
  if (flags.text) {
    write_report_text(out, rep);
  } else if (!flags.out_dir) {
    out << report_to_json(rep).dump(2) << "\n";
  }
  return kExitOk;
}

struct SimulateFlags {
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  std::optional<double> duration;
};

inline int cmd_simulate(const std::string& path, const SimulateFlags& flags, std::ostream& out,
                        std::ostream& err) {
  if (!std::filesystem::exists(path)) {
    err << "error: scenario file '" << path << "' not found\n";
    return kExitIo;
  }
  SimulationResult result;
  try {
    const ScenarioFile sf = load_scenario(path);
    SimulationSetup setup = build_simulation_setup(sf);
    if (flags.duration) {
      if (!(*flags.duration >= 0.0)) throw ScenarioError("--duration must be >= 0");
      setup.duration = *flags.duration;
    }
    result = simulate(setup, flags.seed);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  try {
    for (const auto& p : write_simulation_csvs(result, flags.out_dir)) out << "wrote " << p.string() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}

struct CasesFlags {
  bool first_order = false;
  bool exact = false;
  std::optional<std::array<Vec3, 2>> forces;
  std::optional<double> tol;
};

inline std::vector<CaseRow> run_cases(const CaseGeometry& geometry, const AnalysisOptions& opts) {
  std::vector<CaseRow> rows;
  const auto names = default_feature_names(2);
  for (int id = 1; id <= 4; ++id) {
    rows.push_back({id, schedule_string(case_schedule(id), names), analyze_case(id, geometry, opts)});
  }
  return rows;
}

inline int cmd_cases(const CasesFlags& flags, std::ostream& out, std::ostream& err) {
  CaseGeometry geometry;
  if (flags.forces) geometry.forces = *flags.forces;
  std::vector<Expansion> modes;
  if (flags.exact || !flags.first_order) modes.push_back(Expansion::exact);
  if (flags.first_order) modes.push_back(Expansion::first_order);
  try {
    for (std::size_t i = 0; i < modes.size(); ++i) {
      AnalysisOptions opts;
      opts.expansion = modes[i];
      if (flags.tol) opts.rel_tol = *flags.tol;
      if (i) out << "\n";
      write_cases_table(out, run_cases(geometry, opts), modes[i]);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitOk;
}

}  // namespace slamobs::cli
