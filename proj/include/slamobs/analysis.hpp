#pragma once

// Rank and unobservable-subspace reports for SLAM scenarios.
//
// Observable modes are decided by row-space membership of a fixed candidate
// family of linear functionals (per-axis dp, dv, psi, each feature, each
// vehicle-feature difference and each feature-feature difference), plus any
// functionals the caller supplies. A 3-vector mode counts as observable only
// when all three of its axes are.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "slamobs/pwcs.hpp"
#include "slamobs/slam_model.hpp"

namespace slamobs {

inline constexpr double kGravity = 9.81;

struct CandidateFunctional {
  std::string label;
  std::string group;  // vector mode this axis belongs to; empty for ad-hoc functionals
  Vector weights;
};

struct ModeResult {
  std::string label;
  std::string group;
  bool observable = false;
  double null_projection = 0.0;  // ||N^T w|| / ||w||

  bool operator==(const ModeResult&) const = default;
};

struct GroupVerdict {
  std::string group;
  bool observable = false;

  bool operator==(const GroupVerdict&) const = default;
};

enum class Scope { local, total };

inline const char* to_string(Scope s) { return s == Scope::local ? "local" : "total"; }

struct AnalysisOptions {
  Expansion expansion = Expansion::exact;
  double rel_tol = kDefaultRankTol;
  int max_power = kDefaultMaxPower;
  std::vector<CandidateFunctional> extra_candidates;  // weights over the full augmented state
};

struct ObservabilityReport {
  Scope scope = Scope::total;
  std::optional<std::size_t> segment;
  Expansion expansion = Expansion::exact;
  double rel_tol = kDefaultRankTol;
  int max_power = kDefaultMaxPower;
  Eigen::Index matrix_rows = 0;
  Eigen::Index matrix_cols = 0;
  int rank = 0;
  Eigen::Index nullity = 0;
  std::vector<std::string> state_labels;
  NullSpaceBasis null_basis;
  std::vector<ModeResult> mode_results;

  /// Per-group verdicts in first-appearance order; ad-hoc functionals form
  /// their own single-member group.
  std::vector<GroupVerdict> group_verdicts() const {
    std::vector<GroupVerdict> out;
    for (const auto& r : mode_results) {
      const std::string& g = r.group.empty() ? r.label : r.group;
      auto it = std::find_if(out.begin(), out.end(),
                             [&](const GroupVerdict& v) { return v.group == g; });
      if (it == out.end()) {
        out.push_back({g, r.observable});
      } else {
        it->observable = it->observable && r.observable;
      }
    }
    return out;
  }

  std::optional<bool> verdict(const std::string& label) const {
    for (const auto& r : mode_results) {
      if (r.label == label) return r.observable;
    }
    for (const auto& g : group_verdicts()) {
      if (g.group == label) return g.observable;
    }
    return std::nullopt;
  }
};

/// Standard candidates over an augmented state with the given feature names.
inline std::vector<CandidateFunctional> standard_candidates(
    const std::vector<std::string>& feature_names) {
  static const char* axes[] = {"x", "y", "z"};
  const std::size_t L = feature_names.size();
  const Eigen::Index n = augmented_dim(L);
  std::vector<CandidateFunctional> out;
  auto add = [&](const std::string& group, int plus_col, int minus_col) {
    for (int a = 0; a < 3; ++a) {
      Vector w = Vector::Zero(n);
      w(plus_col + a) = 1.0;
      if (minus_col >= 0) w(minus_col + a) = -1.0;
      out.push_back({group + "_" + axes[a], group, std::move(w)});
    }
  };
  add("dp", kPosIdx, -1);
  add("dv", kVelIdx, -1);
  add("psi", kAttIdx, -1);
  for (std::size_t c = 0; c < L; ++c) add(feature_names[c], feature_col(c), -1);
  for (std::size_t c = 0; c < L; ++c) add("dp-" + feature_names[c], kPosIdx, feature_col(c));
  for (std::size_t c = 0; c < L; ++c) {
    for (std::size_t d = c + 1; d < L; ++d) {
      add(feature_names[c] + "-" + feature_names[d], feature_col(c), feature_col(d));
    }
  }
  return out;
}

inline std::vector<CandidateFunctional> standard_candidates(std::size_t n_features) {
  return standard_candidates(default_feature_names(n_features));
}

namespace detail {

inline ObservabilityReport build_report(const Matrix& q, std::vector<std::string> labels,
                                        const std::vector<CandidateFunctional>& candidates,
                                        const AnalysisOptions& options) {
  ObservabilityReport rep;
  rep.expansion = options.expansion;
  rep.rel_tol = options.rel_tol;
  rep.max_power = options.max_power;
  rep.matrix_rows = q.rows();
  rep.matrix_cols = q.cols();
  rep.rank = numerical_rank(q, options.rel_tol);
  rep.null_basis = null_space(q, options.rel_tol);
  rep.nullity = rep.null_basis.dim();
  rep.state_labels = std::move(labels);
  for (const auto& cand : candidates) {
    if (cand.weights.size() != q.cols()) {
      throw std::invalid_argument("candidate functional '" + cand.label + "' has length " +
                                  std::to_string(cand.weights.size()) + ", expected " +
                                  std::to_string(q.cols()));
    }
    if (cand.weights.norm() == 0.0) {
      throw std::invalid_argument("candidate functional '" + cand.label + "' is zero");
    }
    const double projection =
        rep.nullity == 0 ? 0.0
                         : (rep.null_basis.vectors.transpose() * cand.weights).norm() /
                               cand.weights.norm();
    rep.mode_results.push_back({cand.label, cand.group,
                                is_functional_observable(rep.null_basis, cand.weights, options.rel_tol),
                                projection});
  }
  return rep;
}

}  // namespace detail

/// Local report on the segment's own system: the vehicle plus the features
/// detected in that segment. User functionals that weight absent features are
/// unobservable there (those states never enter the segment's measurements).
inline ObservabilityReport analyze_local(const Scenario& scenario, std::size_t segment_index,
                                         const AnalysisOptions& options = {}) {
  validate(scenario);
  if (segment_index >= scenario.segments.size()) {
    throw std::out_of_range("analyze_local: segment index " + std::to_string(segment_index) +
                            " out of range (" + std::to_string(scenario.segments.size()) +
                            " segments)");
  }
  const SegmentSpec& seg = scenario.segments[segment_index];
  std::vector<std::size_t> present;  // global indices of features seen in this segment
  std::vector<std::string> names;
  std::map<std::size_t, Vec3> local_rel;
  for (const auto& [c, r] : seg.feature_rel_pos) {
    local_rel[present.size()] = r;
    present.push_back(c);
    names.push_back(scenario.feature_names[c]);
  }
  const PwcsStripe stripe{augmented_dynamics(seg.specific_force, present.size()),
                          augmented_observation(local_rel, present.size()), seg.duration};
  const Matrix q = lom(stripe, options.max_power);

  auto candidates = standard_candidates(names);
  const Eigen::Index full_n = augmented_dim(scenario.feature_names.size());
  std::vector<CandidateFunctional> absent;  // extras touching unseen features
  for (const auto& extra : options.extra_candidates) {
    if (extra.weights.size() != full_n) {
      throw std::invalid_argument("candidate functional '" + extra.label + "' has length " +
                                  std::to_string(extra.weights.size()) + ", expected " +
                                  std::to_string(full_n));
    }
    Vector local = Vector::Zero(augmented_dim(present.size()));
    local.head(kVehicleStates) = extra.weights.head(kVehicleStates);
    for (std::size_t k = 0; k < present.size(); ++k) {
      local.segment<3>(feature_col(k)) = extra.weights.segment<3>(feature_col(present[k]));
    }
    const double dropped = std::sqrt(std::max(0.0, extra.weights.squaredNorm() - local.squaredNorm()));
    if (dropped > 0.0) {
      absent.push_back(extra);
    } else {
      candidates.push_back({extra.label, extra.group, std::move(local)});
    }
  }
  auto rep = detail::build_report(q, state_labels(names), candidates, options);
  for (const auto& extra : absent) {
    rep.mode_results.push_back({extra.label, extra.group, false, 1.0});
  }
  rep.scope = Scope::local;
  rep.segment = segment_index;
  return rep;
}

/// Total report on the TOM of the augmented system.
inline ObservabilityReport analyze_total(const Scenario& scenario,
                                         const AnalysisOptions& options = {}) {
  const AugmentedSystem sys = augment(scenario);
  if (sys.stripes.empty()) {
    throw std::invalid_argument("analyze_total: scenario has no segments");
  }
  const Matrix q = tom(sys.stripes, options.max_power, options.expansion);
  auto candidates = standard_candidates(scenario.feature_names);
  candidates.insert(candidates.end(), options.extra_candidates.begin(),
                    options.extra_candidates.end());
  auto rep = detail::build_report(q, sys.state_labels, candidates, options);
  rep.scope = Scope::total;
  return rep;
}

/// Geometry for the two-segment, two-feature cases. One vehicle position is
/// used for both segments, so r_c = feature_c - vehicle throughout.
struct CaseGeometry {
  std::array<Vec3, 2> features{Vec3(10.0, 0.0, 0.0), Vec3(20.0, 100.0, 0.0)};
  Vec3 vehicle{0.0, 0.0, 100.0};
  std::array<Vec3, 2> forces{Vec3(0.0, 0.0, kGravity), Vec3(0.0, 0.1, kGravity)};
  double segment_duration = 50.0;
};

/// Detection schedule of the four two-segment cases:
/// 1: {m1} / {m2}   2: {m1} / {m1, m2}   3: {m1, m2} / {m2}   4: {m1, m2} / {m1, m2}.
inline DetectionSchedule case_schedule(int case_id) {
  switch (case_id) {
    case 1: return DetectionSchedule({{true, false}, {false, true}});
    case 2: return DetectionSchedule({{true, true}, {false, true}});
    case 3: return DetectionSchedule({{true, false}, {true, true}});
    case 4: return DetectionSchedule({{true, true}, {true, true}});
    default:
      throw std::invalid_argument("case id must be 1..4, got " + std::to_string(case_id));
  }
}

inline Scenario case_scenario(int case_id, const CaseGeometry& geometry = {}) {
  Scenario sc;
  sc.feature_names = default_feature_names(2);
  sc.schedule = case_schedule(case_id);
  for (std::size_t i = 0; i < 2; ++i) {
    SegmentSpec seg;
    seg.duration = geometry.segment_duration;
    seg.specific_force = geometry.forces[i];
    for (std::size_t c = 0; c < 2; ++c) {
      if (sc.schedule.detected(c, i)) seg.feature_rel_pos[c] = geometry.features[c] - geometry.vehicle;
    }
    sc.segments.push_back(std::move(seg));
  }
  return sc;
}

inline ObservabilityReport analyze_case(int case_id, const CaseGeometry& geometry = {},
                                        const AnalysisOptions& options = {}) {
  return analyze_total(case_scenario(case_id, geometry), options);
}

}  // namespace slamobs
