// slamobs: observability analysis and covariance simulation for inertial SLAM.

#include <array>
#include <iostream>
#include <vector>

#include "CLI11.hpp"
#include "slamobs/cli.hpp"

int main(int argc, char** argv) {
  using namespace slamobs;

  CLI::App app{"Observability analysis and covariance simulation for airborne inertial SLAM"};
  app.require_subcommand(1);

  std::string analyze_path;
  cli::AnalyzeFlags analyze_flags;
  std::size_t local_segment = 0;
  double analyze_tol = kDefaultRankTol;
  bool analyze_first_order = false;
  bool analyze_exact = false;
  std::string analyze_out;
  auto* analyze = app.add_subcommand("analyze", "Rank, null space and observable modes of a scenario");
  analyze->add_option("file", analyze_path, "Scenario file")->required();
  auto* local_opt = analyze->add_option("--local", local_segment, "Analyze one segment (0-based) locally");
  auto* analyze_tol_opt = analyze->add_option("--tol", analyze_tol, "Relative rank tolerance")
                              ->check(CLI::PositiveNumber);
  auto* a_fo = analyze->add_flag("--first-order", analyze_first_order, "Use e^{F dt} ~ I + F dt");
  auto* a_ex = analyze->add_flag("--exact", analyze_exact, "Use the exact segment transition");
  a_fo->excludes(a_ex);
  auto* analyze_out_opt = analyze->add_option("--out", analyze_out, "Directory for report.json");
  analyze->add_flag("--text", analyze_flags.text, "Print a human-readable summary");

  std::string simulate_path;
  cli::SimulateFlags simulate_flags;
  double duration = 0.0;
  auto* simulate = app.add_subcommand("simulate", "EKF covariance simulation with CSV traces");
  simulate->add_option("file", simulate_path, "Scenario file")->required();
  simulate->add_option("--seed", simulate_flags.seed, "Seed for the state run")->capture_default_str();
  simulate->add_option("--out", simulate_flags.out_dir, "Output directory for CSV files")
      ->capture_default_str();
  auto* duration_opt =
      simulate->add_option("--duration", duration, "Truncate the run (s)")->check(CLI::NonNegativeNumber);

  cli::CasesFlags cases_flags;
  std::vector<double> forces;
  double cases_tol = kDefaultRankTol;
  auto* cases = app.add_subcommand("cases", "Rank table of the four two-segment detection cases");
  cases->add_flag("--first-order", cases_flags.first_order, "Tabulate with e^{F dt} ~ I + F dt");
  cases->add_flag("--exact", cases_flags.exact, "Tabulate with the exact transition (default)");
  auto* forces_opt = cases->add_option("--forces", forces, "f1x f1y f1z f2x f2y f2z")->expected(6);
  auto* cases_tol_opt = cases->add_option("--tol", cases_tol, "Relative rank tolerance")
                            ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and friends exit 0; usage errors share the invalid-input code.
    return app.exit(e) == 0 ? cli::kExitOk : cli::kExitInvalid;
  }

  if (analyze->parsed()) {
    if (*local_opt) analyze_flags.local = local_segment;
    if (*analyze_tol_opt) analyze_flags.tol = analyze_tol;
    if (analyze_first_order) analyze_flags.expansion = Expansion::first_order;
    if (analyze_exact) analyze_flags.expansion = Expansion::exact;
    if (*analyze_out_opt) analyze_flags.out_dir = analyze_out;
    return cli::cmd_analyze(analyze_path, analyze_flags, std::cout, std::cerr);
  }
  if (simulate->parsed()) {
    if (*duration_opt) simulate_flags.duration = duration;
    return cli::cmd_simulate(simulate_path, simulate_flags, std::cout, std::cerr);
  }
  if (*forces_opt) {
    cases_flags.forces = std::array<Vec3, 2>{Vec3(forces[0], forces[1], forces[2]),
                                             Vec3(forces[3], forces[4], forces[5])};
  }
  if (*cases_tol_opt) cases_flags.tol = cases_tol;
  return cli::cmd_cases(cases_flags, std::cout, std::cerr);
}
