// Acceptance gate. Prints one PASS/FAIL line per criterion and exits nonzero
// when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "slamobs/cli.hpp"
#include "test_support.hpp"

namespace {

using namespace slamobs;
namespace fs = std::filesystem;

struct Outcome {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

const std::string kScenarioDir = SLAMOBS_SCENARIO_DIR;

Outcome c1_local_rank_eight() {
  const auto t0 = Clock::now();
  const auto rep = analyze_local(case_scenario(2), 0);
  const double dt = seconds_since(t0);
  const bool ok = rep.rank == 8 && rep.matrix_cols == 12 && dt < 1.0;
  return {ok, "rank " + std::to_string(rep.rank) + " of " + std::to_string(rep.matrix_cols) + ", " +
                  fmt(dt * 1e3) + " ms"};
}

Outcome c2_total_rank_twelve() {
  const auto rep = analyze_case(2);
  const bool ok = rep.rank == 12 && rep.matrix_cols == 15 && rep.nullity == 3;
  return {ok, "rank " + std::to_string(rep.rank) + " of " + std::to_string(rep.matrix_cols) +
                  ", nullity " + std::to_string(rep.nullity)};
}

Outcome c3_mode_classification() {
  const auto rep = analyze_case(2);
  std::vector<std::string> wrong;
  for (const char* g : {"dv", "psi", "dp-m2", "m1-m2"}) {
    for (const char* ax : {"_x", "_y", "_z"}) {
      if (!rep.verdict(std::string(g) + ax).value_or(false)) wrong.push_back(std::string(g) + ax);
    }
  }
  for (const char* g : {"dp", "m1", "m2"}) {
    if (rep.verdict(g).value_or(true)) wrong.push_back(g);
  }
  return {wrong.empty(), wrong.empty() ? "observable: dv, psi, dp-m2, m1-m2; unobservable: dp, m1, m2"
                                       : "misclassified: " + join(wrong, ", ")};
}

Outcome c4_nullity_floor() {
  std::mt19937_64 rng(1001);
  int below = 0, min_nullity = std::numeric_limits<int>::max();
  const int runs = 200;
  for (int i = 0; i < runs; ++i) {
    const auto rep = analyze_total(test::random_scenario(rng));
    min_nullity = std::min(min_nullity, static_cast<int>(rep.nullity));
    if (rep.nullity < 3) ++below;
  }
  return {below == 0, std::to_string(runs) + " scenarios, min nullity " + std::to_string(min_nullity)};
}

Outcome c5_augmentation_equivalence() {
  std::mt19937_64 rng(1002);
  int bad = 0;
  const int runs = 100;
  for (int i = 0; i < runs; ++i) {
    const AugmentedSystem sys = augment(test::random_scenario(rng));
    const Matrix q = tom(sys.stripes);
    const Matrix qp = tom(pad_unobserved_feature(sys, "padded").stripes);
    if (numerical_rank(qp) != numerical_rank(q) || null_space(qp).dim() != null_space(q).dim() + 3) ++bad;
  }
  return {bad == 0, std::to_string(runs) + " scenarios, " + std::to_string(bad) + " mismatches"};
}

Outcome c6_single_segment_collapse() {
  std::mt19937_64 rng(1003);
  int bad = 0;
  const int runs = 50;
  for (int i = 0; i < runs; ++i) {
    const Scenario sc = test::random_scenario(rng, {1, 1, 1, 4});
    const auto a = analyze_total(sc);
    const auto b = analyze_local(sc, 0);
    if (a.rank != b.rank || a.nullity != b.nullity || a.mode_results != b.mode_results) ++bad;
  }
  return {bad == 0, std::to_string(runs) + " scenarios, " + std::to_string(bad) + " mismatches"};
}

double first_finite(const std::vector<double>& v) {
  for (double x : v) {
    if (std::isfinite(x)) return x;
  }
  return std::numeric_limits<double>::infinity();
}

Outcome c7_covariance_consistency() {
  const auto t0 = Clock::now();
  SimulationSetup setup = build_simulation_setup(load_scenario(kScenarioDir + "/paper_sec6.scenario"));
  setup.run_states = false;
  const auto res = simulate(setup);
  const double dt = seconds_since(t0);
  const auto& tr = res.trace;
  std::vector<std::string> fails;
  std::ostringstream info;

  for (const char* ax : {"x", "y", "z"}) {
    const std::string l = std::string("dv_") + ax;
    const double ratio = tr.at(l, 50.0) / tr.at(l, 0.0);
    if (!(ratio <= 0.20)) fails.push_back("(a) " + l + " ratio " + fmt(ratio));
  }
  double min_feature = std::numeric_limits<double>::infinity();
  for (const char* f : {"m1", "m2"}) {
    for (const char* ax : {"_x", "_y", "_z"}) {
      const double v = tr.at(std::string(f) + ax, 100.0);
      min_feature = std::min(min_feature, v);
      if (!(v >= 0.5)) fails.push_back(std::string("(b) ") + f + ax + " " + fmt(v));
    }
  }
  double worst_rel = 0.0;
  for (const char* g : {"dp-m2", "m1-m2"}) {
    for (const char* ax : {"_x", "_y", "_z"}) {
      const std::string l = std::string(g) + ax;
      const double first = first_finite(tr.series(l));
      const double ratio = tr.at(l, 100.0) / first;
      worst_rel = std::max(worst_rel, ratio);
      if (!(ratio <= 0.25)) {
        fails.push_back("(c) " + l + " " + fmt(first) + " -> " + fmt(tr.at(l, 100.0)) + " ratio " + fmt(ratio));
      }
    }
  }
  const double y0 = tr.at("psi_z", 0.0), y50 = tr.at("psi_z", 50.0), y100 = tr.at("psi_z", 100.0);
  const double seg1_change = std::abs(y50 - y0) / y0;
  const double seg2_drop = (y50 - y100) / y50;
  if (!(seg2_drop >= 0.10)) fails.push_back("(d) segment-2 yaw drop " + fmt(seg2_drop));
  if (!(seg1_change < 0.10)) fails.push_back("(d) segment-1 yaw change " + fmt(seg1_change));
  if (!(dt < 30.0)) fails.push_back("runtime " + fmt(dt) + " s");

  info << "min feature STD " << fmt(min_feature) << " m, worst relative ratio " << fmt(worst_rel)
       << ", yaw " << fmt(y0) << " -> " << fmt(y50) << " -> " << fmt(y100) << " rad, " << fmt(dt) << " s";
  if (!fails.empty()) info << "; failed: " << join(fails, "; ");
  return {fails.empty(), info.str()};
}

Outcome c8_numerical_hygiene() {
  SimulationSetup setup = SimulationSetup::paper_default();
  setup.run_states = false;
  std::mt19937_64 rng(1008);
  std::normal_distribution<double> normal(0.0, 1.0);
  double worst_asym = 0.0, worst_eig = 0.0, worst_increase = -std::numeric_limits<double>::infinity();
  std::size_t events = 0, updates = 0;
  simulate(setup, 0, [&](const SimulationEvent& e) {
    ++events;
    const Matrix& p = e.after;
    const double scale = p.cwiseAbs().maxCoeff();
    worst_asym = std::max(worst_asym, (p - p.transpose()).cwiseAbs().maxCoeff() / scale);
    const Eigen::SelfAdjointEigenSolver<Matrix> es(p, Eigen::EigenvaluesOnly);
    worst_eig = std::min(worst_eig, es.eigenvalues().minCoeff() / es.eigenvalues().maxCoeff());
    if (e.kind != SimulationEvent::Kind::update) return;
    ++updates;
    for (int k = 0; k < 20; ++k) {
      Vector w(p.rows());
      for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = normal(rng);
      const double before = w.dot(e.before * w), after = w.dot(p * w);
      worst_increase = std::max(worst_increase, (after - before) / before);
    }
  });
  // Relative slack of 1e-9 on the variance comparison absorbs round-off only.
  const bool ok = worst_asym <= 1e-9 && worst_eig >= -1e-9 && worst_increase <= 1e-9;
  return {ok, std::to_string(events) + " steps, " + std::to_string(updates) + " updates; asymmetry " +
                  fmt(worst_asym) + ", min eig/max " + fmt(worst_eig) + ", worst variance change " +
                  fmt(worst_increase)};
}

Outcome c9_oracle_equivalence() {
  double worst = 0.0;
  int compared = 0;
  auto compare = [&](const Scenario& sc, bool first_order) {
    const Matrix got = tom(augment(sc).stripes, 2, first_order ? Expansion::first_order : Expansion::exact);
    const Matrix want = test::to_eigen(oracle::tom(test::oracle_segments(sc), sc.feature_names.size(), 2, first_order));
    if (got.rows() != want.rows() || got.cols() != want.cols()) {
      worst = std::numeric_limits<double>::infinity();
      return;
    }
    const double scale = std::max(1.0, want.cwiseAbs().maxCoeff());
    worst = std::max(worst, (got - want).cwiseAbs().maxCoeff() / scale);
    ++compared;
  };
  for (int id = 1; id <= 4; ++id) {
    compare(case_scenario(id), false);
    compare(case_scenario(id), true);
  }
  std::mt19937_64 rng(1009);
  for (int i = 0; i < 20; ++i) compare(test::random_scenario(rng), false);
  return {worst <= 1e-12, std::to_string(compared) + " matrices, worst scaled difference " + fmt(worst)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome c10_determinism() {
  const fs::path base = fs::temp_directory_path() / "slamobs_acceptance_determinism";
  fs::remove_all(base);
  std::ostringstream out, err;
  cli::SimulateFlags flags;
  flags.seed = 20240101;
  for (const char* run : {"a", "b"}) {
    flags.out_dir = (base / run).string();
    if (cli::cmd_simulate(kScenarioDir + "/paper_sec6.scenario", flags, out, err) != cli::kExitOk) {
      return {false, "simulate failed: " + err.str()};
    }
  }
  int files = 0, differ = 0;
  for (const auto& e : fs::directory_iterator(base / "a")) {
    ++files;
    if (slurp(e.path()) != slurp(base / "b" / e.path().filename())) ++differ;
  }
  fs::remove_all(base);
  return {files > 0 && differ == 0, std::to_string(files) + " CSV files, " + std::to_string(differ) + " differ"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 local rank 8 of 12 (case 2, segment 1)", c1_local_rank_eight},
      {"2 total rank 12 of 15 (case 2)", c2_total_rank_twelve},
      {"3 mode classification (case 2)", c3_mode_classification},
      {"4 nullity floor over random scenarios", c4_nullity_floor},
      {"5 padding equivalence over random scenarios", c5_augmentation_equivalence},
      {"6 single-segment total equals local", c6_single_segment_collapse},
      {"7 covariance/observability consistency", c7_covariance_consistency},
      {"8 covariance symmetry, PSD, update monotonicity", c8_numerical_hygiene},
      {"9 oracle equivalence of assembled matrices", c9_oracle_equivalence},
      {"10 byte-identical simulate output per seed", c10_determinism},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << name << "  [" << o.detail << "]\n";
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size()
            << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
