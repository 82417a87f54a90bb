#pragma once

// Covariance simulation of inertial SLAM along a piece-wise constant
// acceleration trajectory.
//
// Frames: navigation frame is north-east-up (x, y, z), gravity along -z.
// The error state is the augmented SLAM state (dp, dv, psi, m_1 .. m_L).
// The covariance is propagated at the IMU rate and updated at the vision frame
// rate with all currently visible features stacked into one update. Features
// that have not been seen yet carry the prior U_m block with zero
// cross-covariance; their STDs are reported as +inf until first detection.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "slamobs/pwcs.hpp"
#include "slamobs/slam_model.hpp"

namespace slamobs {

inline constexpr double kDegToRad = std::numbers::pi / 180.0;
inline constexpr double kDefaultFeaturePrior = 1e9;  // m^2

struct TrajectorySegment {
  double duration = 0.0;  // s
  Vec3 accel = Vec3::Zero();  // specific force (F_N, F_E, F_U), m/s^2

  bool operator==(const TrajectorySegment&) const = default;
};

struct TrajectorySample {
  double t = 0.0;
  Vec3 position = Vec3::Zero();
  Vec3 velocity = Vec3::Zero();
  Vec3 specific_force = Vec3::Zero();
};

struct TrajectoryConfig {
  Vec3 p0{0.0, 0.0, 100.0};
  Vec3 v0{0.1, 0.0, 0.0};
  std::vector<TrajectorySegment> segments;
  double gravity = 9.81;

  bool operator==(const TrajectoryConfig&) const = default;

  /// Two 50 s segments: level flight, then 0.1 m/s^2 eastward.
  static TrajectoryConfig paper_default() {
    TrajectoryConfig c;
    c.segments = {{50.0, Vec3(0.0, 0.0, c.gravity)}, {50.0, Vec3(0.0, 0.1, c.gravity)}};
    return c;
  }

  void validate() const {
    detail::require_finite(p0, "trajectory p0");
    detail::require_finite(v0, "trajectory v0");
    if (!std::isfinite(gravity)) throw std::invalid_argument("trajectory: gravity not finite");
    for (std::size_t i = 0; i < segments.size(); ++i) {
      if (!(segments[i].duration > 0.0) || !std::isfinite(segments[i].duration)) {
        throw std::invalid_argument("trajectory segment " + std::to_string(i) +
                                    ": duration must be positive");
      }
      detail::require_finite(segments[i].accel, "trajectory segment accel");
    }
  }

  double total_duration() const {
    double t = 0.0;
    for (const auto& s : segments) t += s.duration;
    return t;
  }

  double segment_start(std::size_t i) const {
    double t = 0.0;
    for (std::size_t k = 0; k < i && k < segments.size(); ++k) t += segments[k].duration;
    return t;
  }

  /// Segment containing t; boundaries belong to the later segment and times
  /// past the end map to the last segment.
  std::size_t segment_at(double t) const {
    if (segments.empty()) throw std::logic_error("trajectory has no segments");
    double end = 0.0;
    for (std::size_t i = 0; i < segments.size(); ++i) {
      end += segments[i].duration;
      if (t < end) return i;
    }
    return segments.size() - 1;
  }

  Vec3 net_accel(std::size_t i) const {
    return segments.at(i).accel - Vec3(0.0, 0.0, gravity);
  }

  /// Closed-form kinematics under piece-wise constant acceleration.
  TrajectorySample state_at(double t) const {
    Vec3 p = p0;
    Vec3 v = v0;
    double t0 = 0.0;
    for (std::size_t i = 0; i < segments.size(); ++i) {
      const double end = t0 + segments[i].duration;
      const bool last = i + 1 == segments.size();
      const double tau = (t < end || last) ? t - t0 : segments[i].duration;
      const Vec3 a = net_accel(i);
      if (t < end || last) {
        return {t, p + v * tau + 0.5 * a * tau * tau, v + a * tau, segments[i].accel};
      }
      p += v * tau + 0.5 * a * tau * tau;
      v += a * tau;
      t0 = end;
    }
    return {t, p + v * t, v, Vec3(0.0, 0.0, gravity)};
  }
};

/// Samples at `rate_hz` from t = 0 to the end of the last segment.
inline std::vector<TrajectorySample> generate_trajectory(const TrajectoryConfig& config,
                                                         double rate_hz) {
  config.validate();
  if (!(rate_hz > 0.0)) throw std::invalid_argument("generate_trajectory: rate must be positive");
  const auto steps = static_cast<std::size_t>(std::floor(config.total_duration() * rate_hz + 1e-9));
  std::vector<TrajectorySample> out;
  out.reserve(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    out.push_back(config.state_at(static_cast<double>(k) / rate_hz));
  }
  return out;
}

struct SensorConfig {
  double imu_rate_hz = 100.0;
  double accel_noise = 0.01;        // m/s^2, 1 sigma
  double gyro_noise_deg_s = 0.1;    // deg/s, 1 sigma
  double frame_rate_hz = 25.0;
  double fov_deg = 15.0;            // half-angle about the boresight
  double range_error_m = 5.0;
  double bearing_noise_deg = 0.1;
  double elevation_noise_deg = 0.1;
  Vec3 boresight{0.0, 0.0, -1.0};   // navigation frame; straight down by default

  bool operator==(const SensorConfig&) const = default;

  void validate() const {
    auto positive = [](double v, const char* name) {
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument(std::string("sensor: ") + name + " must be positive");
      }
    };
    auto non_negative = [](double v, const char* name) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument(std::string("sensor: ") + name + " must be non-negative");
      }
    };
    positive(imu_rate_hz, "imu_rate_hz");
    positive(frame_rate_hz, "frame_rate_hz");
    positive(fov_deg, "fov_deg");
    non_negative(accel_noise, "accel_noise");
    non_negative(gyro_noise_deg_s, "gyro_noise_deg_s");
    non_negative(range_error_m, "range_error_m");
    non_negative(bearing_noise_deg, "bearing_noise_deg");
    non_negative(elevation_noise_deg, "elevation_noise_deg");
    if (imu_rate_hz < frame_rate_hz) {
      throw std::invalid_argument("sensor: imu_rate_hz must be >= frame_rate_hz");
    }
    detail::require_finite(boresight, "sensor boresight");
    if (boresight.norm() == 0.0) throw std::invalid_argument("sensor: zero boresight");
  }

  /// Columns: boresight, and two axes completing a right-handed frame.
  Mat3 sensor_axes() const {
    const Vec3 x = boresight.normalized();
    Vec3 ref(1.0, 0.0, 0.0);
    if (std::abs(x.dot(ref)) > 0.9) ref = Vec3(0.0, 1.0, 0.0);
    const Vec3 z = (ref - ref.dot(x) * x).normalized();
    const Vec3 y = z.cross(x);
    Mat3 c;
    c << x, y, z;
    return c;
  }

  bool in_fov(const Vec3& rel_pos) const {
    const double r = rel_pos.norm();
    if (r == 0.0) return false;
    const double cos_angle = rel_pos.dot(boresight.normalized()) / r;
    return cos_angle >= std::cos(fov_deg * kDegToRad);
  }
};

struct InitialCovarianceConfig {
  enum class Interpretation { variance, std_dev };

  std::array<double, 9> diagonal{1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 0.0873, 0.0873, 0.0873};
  Interpretation interpretation = Interpretation::variance;
  double feature_prior = kDefaultFeaturePrior;  // U_m diagonal, m^2

  bool operator==(const InitialCovarianceConfig&) const = default;

  Matrix vehicle_covariance() const {
    Matrix p = Matrix::Zero(kVehicleStates, kVehicleStates);
    for (int i = 0; i < kVehicleStates; ++i) {
      const double d = diagonal[static_cast<std::size_t>(i)];
      if (!(d >= 0.0) || !std::isfinite(d)) {
        throw std::invalid_argument("initial covariance: diagonal entries must be >= 0");
      }
      p(i, i) = interpretation == Interpretation::variance ? d : d * d;
    }
    return p;
  }
};

/// Augmented covariance with per-feature initialization flags.
struct AugmentedCovariance {
  Matrix P;
  std::vector<bool> feature_initialized;

  std::size_t n_features() const { return feature_initialized.size(); }

  /// Vehicle block from `vehicle`, every feature block set to prior * I.
  static AugmentedCovariance make(const Matrix& vehicle, std::size_t n_features,
                                  double feature_prior = kDefaultFeaturePrior) {
    if (vehicle.rows() != kVehicleStates || vehicle.cols() != kVehicleStates) {
      throw std::invalid_argument("AugmentedCovariance: vehicle block must be 9x9");
    }
    const int n = augmented_dim(n_features);
    AugmentedCovariance c;
    c.P = Matrix::Zero(n, n);
    c.P.topLeftCorner(kVehicleStates, kVehicleStates) = vehicle;
    for (int i = kVehicleStates; i < n; ++i) c.P(i, i) = feature_prior;
    c.feature_initialized.assign(n_features, false);
    return c;
  }
};

inline void symmetrize(Matrix& p) { p = 0.5 * (p + p.transpose()).eval(); }

/// Continuous process-noise intensity: accel noise drives dv, gyro noise drives psi.
inline Matrix process_noise_intensity(const SensorConfig& sensor, std::size_t n_features) {
  const int n = augmented_dim(n_features);
  Matrix q = Matrix::Zero(n, n);
  const double sa2 = sensor.accel_noise * sensor.accel_noise;
  const double sg = sensor.gyro_noise_deg_s * kDegToRad;
  for (int a = 0; a < 3; ++a) {
    q(kVelIdx + a, kVelIdx + a) = sa2;
    q(kAttIdx + a, kAttIdx + a) = sg * sg;
  }
  return q;
}

/// P <- Phi P Phi^T + Q dt, Phi = e^{F dt}.
inline AugmentedCovariance propagate(const AugmentedCovariance& cov, const Matrix& f,
                                     const Matrix& q_proc, double dt) {
  const Eigen::Index n = cov.P.rows();
  if (f.rows() != n || f.cols() != n || q_proc.rows() != n || q_proc.cols() != n) {
    throw std::invalid_argument("propagate: dimension mismatch");
  }
  if (!(dt > 0.0)) throw std::invalid_argument("propagate: dt must be positive");
  const Matrix phi = state_transition(f, dt, Expansion::exact);
  AugmentedCovariance out = cov;
  out.P = phi * cov.P * phi.transpose() + q_proc * dt;
  symmetrize(out.P);
  return out;
}

inline Matrix kalman_gain(const Matrix& p, const Matrix& h, const Matrix& r) {
  const Matrix s = h * p * h.transpose() + r;
  Eigen::LLT<Matrix> llt(s);
  if (llt.info() != Eigen::Success) {
    throw std::domain_error("kalman update: innovation covariance is not positive definite");
  }
  return llt.solve(h * p).transpose();
}

/// Joseph-form update: P <- (I - KH) P (I - KH)^T + K R K^T.
inline AugmentedCovariance update(const AugmentedCovariance& cov, const Matrix& h, const Matrix& r) {
  const Eigen::Index n = cov.P.rows();
  if (h.cols() != n || r.rows() != h.rows() || r.cols() != h.rows()) {
    throw std::invalid_argument("update: dimension mismatch");
  }
  if (h.rows() == 0) return cov;
  if (!r.isApprox(r.transpose(), 1e-12)) throw std::invalid_argument("update: R is not symmetric");
  const Matrix k = kalman_gain(cov.P, h, r);
  const Matrix ikh = Matrix::Identity(n, n) - k * h;
  AugmentedCovariance out = cov;
  out.P = ikh * cov.P * ikh.transpose() + k * r * k.transpose();
  symmetrize(out.P);
  return out;
}

/// Sets feature c's block to u_m * I with zero cross-covariance.
inline AugmentedCovariance initialize_feature(const AugmentedCovariance& cov, std::size_t feature,
                                              double u_m = kDefaultFeaturePrior) {
  if (feature >= cov.n_features()) {
    throw std::out_of_range("initialize_feature: no feature " + std::to_string(feature));
  }
  if (cov.feature_initialized[feature]) {
    throw std::logic_error("initialize_feature: feature " + std::to_string(feature) +
                           " already initialized");
  }
  if (!(u_m >= 0.0) || !std::isfinite(u_m)) {
    throw std::invalid_argument("initialize_feature: prior must be finite and >= 0");
  }
  AugmentedCovariance out = cov;
  const int col = feature_col(feature);
  out.P.middleRows(col, 3).setZero();
  out.P.middleCols(col, 3).setZero();
  out.P.block<3, 3>(col, col) = u_m * Mat3::Identity();
  out.feature_initialized[feature] = true;
  return out;
}

struct MeasurementNoise {
  Mat3 cov;
  bool floored = false;  // a zero sigma was replaced by the floor
};

/// Cartesian covariance of a range/bearing/elevation measurement.
///
/// Bearing and elevation are spherical angles in the sensor frame whose
/// x-axis is the boresight, so R = C J diag(s_r^2, s_b^2, s_e^2) J^T C^T.
/// Principal variances below 1e-12 of the largest one are floored there.
inline MeasurementNoise measurement_noise_cartesian(const Vec3& rel_pos, const SensorConfig& sensor) {
  detail::require_finite(rel_pos, "measurement_noise_cartesian");
  const double rho = rel_pos.norm();
  if (rho == 0.0) throw std::invalid_argument("measurement_noise_cartesian: zero range");
  const Mat3 axes = sensor.sensor_axes();
  const Vec3 s = axes.transpose() * rel_pos;
  const double bearing = std::atan2(s.y(), s.x());
  const double elevation = std::asin(std::clamp(s.z() / rho, -1.0, 1.0));
  const double cb = std::cos(bearing), sb = std::sin(bearing);
  const double ce = std::cos(elevation), se = std::sin(elevation);

  // Orthonormal directions of d(range), d(bearing), d(elevation).
  Mat3 u;
  u.col(0) = s / rho;
  u.col(1) = Vec3(-sb, cb, 0.0);
  u.col(2) = Vec3(-se * cb, -se * sb, ce);
  Vec3 var(sensor.range_error_m * sensor.range_error_m,
           std::pow(rho * ce * sensor.bearing_noise_deg * kDegToRad, 2),
           std::pow(rho * sensor.elevation_noise_deg * kDegToRad, 2));
  MeasurementNoise out;
  const double floor = 1e-12 * var.maxCoeff();
  for (int i = 0; i < 3; ++i) {
    if (var(i) <= floor) {
      var(i) = floor > 0.0 ? floor : 1e-12;
      out.floored = true;
    }
  }
  out.cov = axes * u * var.asDiagonal() * u.transpose() * axes.transpose();
  out.cov = 0.5 * (out.cov + out.cov.transpose()).eval();
  return out;
}

enum class TraceGroup { position, velocity, attitude, features, relative };

inline const char* to_string(TraceGroup g) {
  switch (g) {
    case TraceGroup::position: return "position";
    case TraceGroup::velocity: return "velocity";
    case TraceGroup::attitude: return "attitude";
    case TraceGroup::features: return "features";
    case TraceGroup::relative: return "relative";
  }
  return "?";
}

struct TraceColumn {
  std::string label;
  TraceGroup group;
  Vector weights;              // functional w; the recorded value is sqrt(w^T P w)
  std::vector<std::size_t> features;  // features the functional depends on
  std::vector<double> values;
};

struct CovarianceTrace {
  std::vector<double> times;
  std::vector<TraceColumn> columns;

  const std::vector<double>& series(const std::string& label) const {
    for (const auto& c : columns) {
      if (c.label == label) return c.values;
    }
    throw std::out_of_range("CovarianceTrace: no series '" + label + "'");
  }

  /// Index of the sample nearest to t.
  std::size_t index_at(double t) const {
    if (times.empty()) throw std::out_of_range("CovarianceTrace: empty");
    auto it = std::lower_bound(times.begin(), times.end(), t - 1e-9);
    if (it == times.end()) return times.size() - 1;
    return static_cast<std::size_t>(it - times.begin());
  }

  double at(const std::string& label, double t) const { return series(label)[index_at(t)]; }
};

/// Monte-Carlo-free state run: truth, unaided INS, and filtered positions.
struct StateRun {
  std::vector<double> times;
  std::vector<Vec3> true_position;
  std::vector<Vec3> ins_position;
  std::vector<Vec3> estimated_position;
};

struct SimulationSetup {
  std::vector<std::string> feature_names;
  std::vector<Vec3> feature_positions;
  // Explicit a[c][segment] over trajectory segments; nullopt means field-of-view gating.
  std::optional<DetectionSchedule> schedule;
  TrajectoryConfig trajectory = TrajectoryConfig::paper_default();
  SensorConfig sensor;
  InitialCovarianceConfig initial;
  std::optional<double> duration;  // truncates the run; 0 gives an empty run
  bool run_states = true;

  /// Paper configuration: m1 = [10,0,0], m2 = [20,100,0], case-2 schedule.
  static SimulationSetup paper_default() {
    SimulationSetup s;
    s.feature_names = {"m1", "m2"};
    s.feature_positions = {Vec3(10.0, 0.0, 0.0), Vec3(20.0, 100.0, 0.0)};
    s.schedule = DetectionSchedule({{true, true}, {false, true}});
    return s;
  }
};

struct SimulationEvent {
  enum class Kind { propagate, update } kind;
  double t;
  const Matrix& before;
  const Matrix& after;
};

using SimulationObserver = std::function<void(const SimulationEvent&)>;

struct SimulationResult {
  CovarianceTrace trace;
  std::optional<StateRun> states;
};

namespace detail {

inline std::vector<TraceColumn> trace_columns(const std::vector<std::string>& names) {
  static const char* axes[] = {"x", "y", "z"};
  const std::size_t L = names.size();
  const Eigen::Index n = augmented_dim(L);
  std::vector<TraceColumn> cols;
  auto add = [&](const std::string& base, TraceGroup g, int plus, int minus,
                 std::vector<std::size_t> feats) {
    for (int a = 0; a < 3; ++a) {
      Vector w = Vector::Zero(n);
      w(plus + a) = 1.0;
      if (minus >= 0) w(minus + a) = -1.0;
      cols.push_back({base + "_" + axes[a], g, std::move(w), feats, {}});
    }
  };
  add("dp", TraceGroup::position, kPosIdx, -1, {});
  add("dv", TraceGroup::velocity, kVelIdx, -1, {});
  add("psi", TraceGroup::attitude, kAttIdx, -1, {});
  for (std::size_t c = 0; c < L; ++c) add(names[c], TraceGroup::features, feature_col(c), -1, {c});
  for (std::size_t c = 0; c < L; ++c) {
    add("dp-" + names[c], TraceGroup::relative, kPosIdx, feature_col(c), {c});
  }
  for (std::size_t c = 0; c < L; ++c) {
    for (std::size_t d = c + 1; d < L; ++d) {
      add(names[c] + "-" + names[d], TraceGroup::relative, feature_col(c), feature_col(d), {c, d});
    }
  }
  return cols;
}

/// Draws from N(0, cov) via an eigen-decomposition (cov may be singular).
inline Vector sample_gaussian(const Matrix& cov, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::SelfAdjointEigenSolver<Matrix> es(cov);
  Vector z(cov.rows());
  for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = normal(rng);
  const Vector scale = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * scale.asDiagonal() * z;
}

}  // namespace detail

/// Runs the covariance simulation (and, when enabled, a seeded state run).
inline SimulationResult simulate(const SimulationSetup& setup, std::uint64_t seed = 0,
                                 const SimulationObserver& observer = {}) {
  setup.trajectory.validate();
  setup.sensor.validate();
  if (setup.trajectory.segments.empty()) {
    throw std::invalid_argument("simulate: trajectory has no segments");
  }
  const std::size_t L = setup.feature_positions.size();
  if (setup.feature_names.size() != L) {
    throw std::invalid_argument("simulate: feature names and positions differ in count");
  }
  if (setup.schedule) {
    if (setup.schedule->n_features() != L ||
        setup.schedule->n_segments() != setup.trajectory.segments.size()) {
      throw std::invalid_argument("simulate: schedule must be features x trajectory segments");
    }
  }
  const double total = setup.trajectory.total_duration();
  const double duration = setup.duration ? std::min(*setup.duration, total) : total;
  if (!(duration >= 0.0)) throw std::invalid_argument("simulate: duration must be >= 0");

  const SensorConfig& sensor = setup.sensor;
  const Eigen::Index n = augmented_dim(L);
  const Matrix q_proc = process_noise_intensity(sensor, L);
  const Matrix p0 = setup.initial.vehicle_covariance();

  SimulationResult result;
  result.trace.columns = detail::trace_columns(setup.feature_names);
  if (setup.run_states) result.states.emplace();
  if (duration == 0.0) return result;

  AugmentedCovariance cov = AugmentedCovariance::make(p0, L, setup.initial.feature_prior);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector x_true = Vector::Zero(n);
  Vector x_hat = Vector::Zero(n);
  if (setup.run_states) x_true = detail::sample_gaussian(cov.P, rng);

  const auto n_frames = static_cast<std::size_t>(std::floor(duration * sensor.frame_rate_hz + 1e-9));
  const double frame_dt = 1.0 / sensor.frame_rate_hz;
  const auto substeps = static_cast<int>(std::ceil(frame_dt * sensor.imu_rate_hz - 1e-9));
  const double dt = frame_dt / substeps;
  const double sigma_a = sensor.accel_noise * std::sqrt(dt);
  const double sigma_g = sensor.gyro_noise_deg_s * kDegToRad * std::sqrt(dt);

  auto visible = [&](std::size_t c, double t, const Vec3& vehicle) {
    if (setup.schedule) return setup.schedule->detected(c, setup.trajectory.segment_at(t));
    return sensor.in_fov(setup.feature_positions[c] - vehicle);
  };

  for (std::size_t k = 0; k <= n_frames; ++k) {
    const double t = static_cast<double>(k) * frame_dt;
    if (k > 0) {
      for (int s = 0; s < substeps; ++s) {
        const double ts = t - frame_dt + s * dt;
        const std::size_t seg = setup.trajectory.segment_at(ts + 0.5 * dt);
        const Matrix f = augmented_dynamics(setup.trajectory.segments[seg].accel, L);
        AugmentedCovariance next = propagate(cov, f, q_proc, dt);
        if (observer) observer({SimulationEvent::Kind::propagate, ts + dt, cov.P, next.P});
        cov = std::move(next);
        if (setup.run_states) {
          const Matrix phi = state_transition(f, dt, Expansion::exact);
          x_true = phi * x_true;
          x_hat = phi * x_hat;
          for (int a = 0; a < 3; ++a) {
            x_true(kVelIdx + a) += sigma_a * normal(rng);
            x_true(kAttIdx + a) += sigma_g * normal(rng);
          }
        }
      }
    }

    const TrajectorySample truth = setup.trajectory.state_at(t);
    std::vector<std::size_t> seen;
    for (std::size_t c = 0; c < L; ++c) {
      if (visible(c, t, truth.position)) seen.push_back(c);
    }
    if (!seen.empty()) {
      for (std::size_t c : seen) {
        if (!cov.feature_initialized[c]) cov = initialize_feature(cov, c, setup.initial.feature_prior);
      }
      const auto m = static_cast<Eigen::Index>(3 * seen.size());
      Matrix h = Matrix::Zero(m, n);
      Matrix r = Matrix::Zero(m, m);
      for (std::size_t j = 0; j < seen.size(); ++j) {
        const std::size_t c = seen[j];
        const Vec3 rel = setup.feature_positions[c] - truth.position;
        const auto row = static_cast<Eigen::Index>(3 * j);
        h.block(row, 0, 3, kVehicleStates) = feature_obs_row(rel);
        h.block<3, 3>(row, feature_col(c)) = Mat3::Identity();
        r.block<3, 3>(row, row) = measurement_noise_cartesian(rel, sensor).cov;
      }
      if (setup.run_states) {
        const Matrix gain = kalman_gain(cov.P, h, r);
        const Vector noise = detail::sample_gaussian(r, rng);
        const Vector z = h * x_true + noise;
        x_hat += gain * (z - h * x_hat);
      }
      AugmentedCovariance next = update(cov, h, r);
      if (observer) observer({SimulationEvent::Kind::update, t, cov.P, next.P});
      cov = std::move(next);
    }

    result.trace.times.push_back(t);
    for (auto& col : result.trace.columns) {
      bool ready = true;
      for (std::size_t c : col.features) ready = ready && cov.feature_initialized[c];
      col.values.push_back(ready ? std::sqrt(std::max(0.0, col.weights.dot(cov.P * col.weights)))
                                 : std::numeric_limits<double>::infinity());
    }
    if (setup.run_states) {
      auto& st = *result.states;
      st.times.push_back(t);
      st.true_position.push_back(truth.position);
      st.ins_position.push_back(truth.position + x_true.segment<3>(kPosIdx));
      st.estimated_position.push_back(truth.position + x_true.segment<3>(kPosIdx) -
                                      x_hat.segment<3>(kPosIdx));
    }
  }
  return result;
}

}  // namespace slamobs
