#pragma once

// Inertial SLAM error model and its fixed-dimension augmentation.
//
// Error state layout: dp (0..2), dv (3..5), psi (6..8), then one 3-block per
// map feature starting at column 9. Features are static, so their rows of F
// are zero; a feature missing from a segment keeps its (zeroed) band in H so
// that every segment shares the same state vector.

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "slamobs/pwcs.hpp"

namespace slamobs {

inline constexpr int kVehicleStates = 9;
inline constexpr int kPosIdx = 0;
inline constexpr int kVelIdx = 3;
inline constexpr int kAttIdx = 6;

inline constexpr int feature_col(std::size_t c) { return kVehicleStates + 3 * static_cast<int>(c); }
inline constexpr int augmented_dim(std::size_t n_features) { return feature_col(n_features); }

struct InsErrorState {
  Vec3 dp = Vec3::Zero();
  Vec3 dv = Vec3::Zero();
  Vec3 psi = Vec3::Zero();

  Vector stacked() const {
    Vector x(kVehicleStates);
    x << dp, dv, psi;
    return x;
  }
};

/// One constant segment: duration, specific force and, for every feature seen
/// during the segment, its position relative to the vehicle (segment start).
struct SegmentSpec {
  double duration = 0.0;
  Vec3 specific_force = Vec3::Zero();
  std::map<std::size_t, Vec3> feature_rel_pos;  // feature index -> r^n
};

/// a[c][i] == true when feature c is detected in segment i.
class DetectionSchedule {
 public:
  DetectionSchedule() = default;

  explicit DetectionSchedule(std::vector<std::vector<bool>> detected)
      : detected_(std::move(detected)) {
    n_segments_ = detected_.empty() ? 0 : detected_.front().size();
    for (std::size_t c = 0; c < detected_.size(); ++c) {
      if (detected_[c].size() != n_segments_) {
        throw std::invalid_argument("DetectionSchedule: ragged schedule at feature " +
                                    std::to_string(c));
      }
      bool seen = false;
      for (bool a : detected_[c]) seen = seen || a;
      if (!seen) {
        throw std::invalid_argument("DetectionSchedule: feature " + std::to_string(c) +
                                    " is never detected");
      }
    }
  }

  /// Schedule with no features over `n_segments` segments.
  static DetectionSchedule vehicle_only(std::size_t n_segments) {
    DetectionSchedule s;
    s.n_segments_ = n_segments;
    return s;
  }

  std::size_t n_features() const { return detected_.size(); }
  std::size_t n_segments() const { return n_segments_; }
  bool detected(std::size_t feature, std::size_t segment) const {
    return detected_.at(feature).at(segment);
  }
  const std::vector<std::vector<bool>>& matrix() const { return detected_; }

  /// N_j: number of features detected in segment j.
  std::size_t detections_in_segment(std::size_t segment) const {
    std::size_t count = 0;
    for (const auto& row : detected_) count += row.at(segment) ? 1 : 0;
    return count;
  }

  /// M: detections of features that had already been detected in an earlier segment.
  std::size_t repeated_detections() const {
    std::size_t repeats = 0;
    for (const auto& row : detected_) {
      bool seen = false;
      for (bool a : row) {
        if (a && seen) ++repeats;
        seen = seen || a;
      }
    }
    return repeats;
  }

  bool operator==(const DetectionSchedule&) const = default;

 private:
  std::vector<std::vector<bool>> detected_;
  std::size_t n_segments_ = 0;
};

/// Analysis input: named features, a schedule, and per-segment geometry.
struct Scenario {
  std::vector<std::string> feature_names;
  DetectionSchedule schedule;
  std::vector<SegmentSpec> segments;
};

struct AugmentedSystem {
  std::vector<PwcsStripe> stripes;
  std::vector<std::string> state_labels;

  Eigen::Index state_dim() const {
    return static_cast<Eigen::Index>(state_labels.size());
  }
};

/// INS error dynamics: I in the (dp, dv) block, skew(f) in the (dv, psi) block.
inline Matrix ins_error_f(const Vec3& specific_force) {
  Matrix f = Matrix::Zero(kVehicleStates, kVehicleStates);
  f.block<3, 3>(kPosIdx, kVelIdx) = Mat3::Identity();
  f.block<3, 3>(kVelIdx, kAttIdx) = skew(specific_force);
  return f;
}

/// Vehicle part of a feature observation: [-I  0  skew(r)].
inline Matrix feature_obs_row(const Vec3& rel_pos) {
  Matrix h = Matrix::Zero(3, kVehicleStates);
  h.block<3, 3>(0, kPosIdx) = -Mat3::Identity();
  h.block<3, 3>(0, kAttIdx) = skew(rel_pos);
  return h;
}

inline std::vector<std::string> state_labels(const std::vector<std::string>& feature_names) {
  static const char* axes[] = {"x", "y", "z"};
  std::vector<std::string> labels;
  for (const char* block : {"dp", "dv", "psi"}) {
    for (const char* ax : axes) labels.push_back(std::string(block) + "_" + ax);
  }
  for (const auto& name : feature_names) {
    for (const char* ax : axes) labels.push_back(name + "_" + ax);
  }
  return labels;
}

inline std::vector<std::string> default_feature_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t c = 0; c < n; ++c) names.push_back("m" + std::to_string(c + 1));
  return names;
}

/// Error dynamics padded with zero rows/cols for `n_features` static features.
inline Matrix augmented_dynamics(const Vec3& specific_force, std::size_t n_features) {
  const int n = augmented_dim(n_features);
  Matrix f = Matrix::Zero(n, n);
  f.topLeftCorner(kVehicleStates, kVehicleStates) = ins_error_f(specific_force);
  return f;
}

/// Stacked observation with one 3-row band per feature; bands for features
/// that are not in `rel_pos` stay zero.
inline Matrix augmented_observation(const std::map<std::size_t, Vec3>& rel_pos,
                                    std::size_t n_features) {
  const int n = augmented_dim(n_features);
  Matrix h = Matrix::Zero(3 * static_cast<Eigen::Index>(n_features), n);
  for (const auto& [c, r] : rel_pos) {
    if (c >= n_features) {
      throw std::invalid_argument("augmented_observation: feature index out of range");
    }
    const auto band = static_cast<Eigen::Index>(3 * c);
    h.block(band, 0, 3, kVehicleStates) = feature_obs_row(r);
    h.block<3, 3>(band, feature_col(c)) = Mat3::Identity();
  }
  return h;
}

inline void validate(const Scenario& scenario) {
  const auto& schedule = scenario.schedule;
  if (scenario.segments.size() != schedule.n_segments()) {
    throw std::invalid_argument("scenario: " + std::to_string(scenario.segments.size()) +
                                " segments but schedule covers " +
                                std::to_string(schedule.n_segments()));
  }
  if (scenario.feature_names.size() != schedule.n_features()) {
    throw std::invalid_argument("scenario: feature name count does not match schedule");
  }
  for (std::size_t i = 0; i < scenario.segments.size(); ++i) {
    const auto& seg = scenario.segments[i];
    if (!(seg.duration > 0.0) || !std::isfinite(seg.duration)) {
      throw std::invalid_argument("segment " + std::to_string(i) + ": duration must be positive");
    }
    detail::require_finite(seg.specific_force, "segment specific force");
    for (const auto& [c, r] : seg.feature_rel_pos) {
      if (c >= schedule.n_features()) {
        throw std::invalid_argument("segment " + std::to_string(i) +
                                    ": relative position for unknown feature " +
                                    std::to_string(c));
      }
      detail::require_finite(r, "segment relative position");
    }
    for (std::size_t c = 0; c < schedule.n_features(); ++c) {
      const bool scheduled = schedule.detected(c, i);
      const bool supplied = seg.feature_rel_pos.count(c) > 0;
      if (scheduled && !supplied) {
        throw std::invalid_argument("segment " + std::to_string(i) + ": feature " +
                                    scenario.feature_names[c] +
                                    " is scheduled but has no relative position");
      }
      if (!scheduled && supplied) {
        throw std::invalid_argument("segment " + std::to_string(i) + ": feature " +
                                    scenario.feature_names[c] +
                                    " has a relative position but is not scheduled");
      }
    }
  }
}

/// Fixed-dimension system over all L features: n = 9 + 3L for every segment.
inline AugmentedSystem augment(const DetectionSchedule& schedule,
                               const std::vector<SegmentSpec>& segments,
                               const std::vector<std::string>& feature_names) {
  Scenario scenario{feature_names, schedule, segments};
  validate(scenario);
  const std::size_t L = schedule.n_features();
  AugmentedSystem sys;
  sys.state_labels = state_labels(feature_names);
  sys.stripes.reserve(segments.size());
  for (const auto& seg : segments) {
    sys.stripes.push_back(PwcsStripe{augmented_dynamics(seg.specific_force, L),
                                     augmented_observation(seg.feature_rel_pos, L),
                                     seg.duration});
  }
  return sys;
}

inline AugmentedSystem augment(const DetectionSchedule& schedule,
                               const std::vector<SegmentSpec>& segments) {
  return augment(schedule, segments, default_feature_names(schedule.n_features()));
}

inline AugmentedSystem augment(const Scenario& scenario) {
  return augment(scenario.schedule, scenario.segments, scenario.feature_names);
}

/// Appends `extra_states` unmeasured, dynamics-free states to a stripe.
inline PwcsStripe equivalence_pad(const PwcsStripe& stripe, int extra_states) {
  if (extra_states < 0) {
    throw std::invalid_argument("equivalence_pad: extra_states must be >= 0");
  }
  if (extra_states == 0) return stripe;
  const Eigen::Index n = stripe.state_dim();
  const Eigen::Index m = stripe.observation.rows();
  PwcsStripe out;
  out.dynamics = Matrix::Zero(n + extra_states, n + extra_states);
  out.dynamics.topLeftCorner(n, n) = stripe.dynamics;
  out.observation = Matrix::Zero(m, n + extra_states);
  out.observation.leftCols(n) = stripe.observation;
  out.delta = stripe.delta;
  return out;
}

/// Adds a feature that is never observed: padded state plus a zero H band,
/// so the scenario stays well-formed as a SLAM system with L + 1 features.
inline AugmentedSystem pad_unobserved_feature(const AugmentedSystem& sys, const std::string& name) {
  AugmentedSystem out;
  out.state_labels = sys.state_labels;
  for (const char* ax : {"x", "y", "z"}) out.state_labels.push_back(name + "_" + ax);
  for (const auto& s : sys.stripes) {
    PwcsStripe padded = equivalence_pad(s, 3);
    Matrix h = Matrix::Zero(padded.observation.rows() + 3, padded.observation.cols());
    h.topRows(padded.observation.rows()) = padded.observation;
    padded.observation = std::move(h);
    out.stripes.push_back(std::move(padded));
  }
  return out;
}

}  // namespace slamobs
