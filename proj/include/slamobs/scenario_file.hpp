#pragma once

// Declarative scenario files (JSON).
//
// A scenario either lists analysis segments explicitly (duration, specific
// force, per-feature relative positions) or leaves them out and lets them be
// derived from the trajectory and the true feature positions. See
// docs/file_formats.md for the full schema.

#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "slamobs/analysis.hpp"
#include "slamobs/ekf_sim.hpp"
#include "slamobs/slam_model.hpp"

namespace slamobs {

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FeatureDef {
  std::string name;
  std::optional<Vec3> position;

  bool operator==(const FeatureDef&) const = default;
};

struct SegmentDef {
  double duration = 0.0;
  Vec3 specific_force = Vec3::Zero();
  std::map<std::string, Vec3> relative_positions;

  bool operator==(const SegmentDef&) const = default;
};

struct ScheduleDef {
  enum class Kind { implied, fov, matrix };
  Kind kind = Kind::implied;
  std::vector<std::vector<bool>> matrix;  // [feature][segment]

  bool operator==(const ScheduleDef&) const = default;
};

struct CandidateDef {
  std::string label;
  std::map<std::string, double> weights;  // state label -> weight

  bool operator==(const CandidateDef&) const = default;
};

struct AnalysisDef {
  Expansion expansion = Expansion::exact;
  double tolerance = kDefaultRankTol;
  int max_power = kDefaultMaxPower;

  bool operator==(const AnalysisDef&) const = default;
};

struct ScenarioFile {
  std::string name;
  double gravity = kGravity;
  AnalysisDef analysis;
  std::vector<FeatureDef> features;
  std::vector<SegmentDef> segments;
  ScheduleDef schedule;
  std::optional<TrajectoryConfig> trajectory;  // gravity mirrors the top-level value
  std::optional<SensorConfig> sensor;
  std::optional<InitialCovarianceConfig> initial_covariance;
  std::vector<CandidateDef> candidates;

  bool operator==(const ScenarioFile&) const = default;

  std::vector<std::string> feature_names() const {
    std::vector<std::string> out;
    for (const auto& f : features) out.push_back(f.name);
    return out;
  }

  std::size_t feature_index(const std::string& name) const {
    for (std::size_t i = 0; i < features.size(); ++i) {
      if (features[i].name == name) return i;
    }
    throw ScenarioError("unknown feature '" + name + "'");
  }
};

namespace detail {

using nlohmann::json;

inline void check_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ScenarioError(path + ": expected an object");
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ScenarioError(path + "." + key + ": unknown field");
  }
}

inline double get_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ScenarioError(path + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ScenarioError(path + ": not finite");
  return v;
}

inline double get_positive(const json& j, const std::string& path) {
  const double v = get_number(j, path);
  if (!(v > 0.0)) throw ScenarioError(path + ": must be positive");
  return v;
}

inline double get_non_negative(const json& j, const std::string& path) {
  const double v = get_number(j, path);
  if (!(v >= 0.0)) throw ScenarioError(path + ": must be non-negative");
  return v;
}

inline Vec3 get_vec3(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) throw ScenarioError(path + ": expected an array of 3 numbers");
  return Vec3(get_number(j[0], path + "[0]"), get_number(j[1], path + "[1]"),
              get_number(j[2], path + "[2]"));
}

inline std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ScenarioError(path + ": expected a string");
  return j.get<std::string>();
}

inline Expansion get_expansion(const json& j, const std::string& path) {
  const std::string s = get_string(j, path);
  if (s == "exact") return Expansion::exact;
  if (s == "first_order") return Expansion::first_order;
  throw ScenarioError(path + ": expected \"exact\" or \"first_order\"");
}

inline json vec_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

inline std::string line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace detail

inline ScenarioFile scenario_from_json(const nlohmann::json& root) {
  using detail::check_keys;
  detail::check_keys(root, "scenario",
                     {"name", "gravity", "analysis", "features", "segments", "schedule", "trajectory",
                      "sensor", "initial_covariance", "candidates"});
  ScenarioFile sf;
  if (root.contains("name")) sf.name = detail::get_string(root["name"], "name");
  if (root.contains("gravity")) sf.gravity = detail::get_number(root["gravity"], "gravity");

  if (root.contains("analysis")) {
    const auto& a = root["analysis"];
    check_keys(a, "analysis", {"expansion", "tolerance", "max_power"});
    if (a.contains("expansion")) sf.analysis.expansion = detail::get_expansion(a["expansion"], "analysis.expansion");
    if (a.contains("tolerance")) sf.analysis.tolerance = detail::get_positive(a["tolerance"], "analysis.tolerance");
    if (a.contains("max_power")) {
      if (!a["max_power"].is_number_integer() || a["max_power"].get<int>() < 1) {
        throw ScenarioError("analysis.max_power: expected an integer >= 1");
      }
      sf.analysis.max_power = a["max_power"].get<int>();
    }
  }

  if (!root.contains("features") || !root["features"].is_array()) {
    throw ScenarioError("features: required array is missing");
  }
  for (std::size_t i = 0; i < root["features"].size(); ++i) {
    const std::string path = "features[" + std::to_string(i) + "]";
    const auto& f = root["features"][i];
    check_keys(f, path, {"name", "position"});
    if (!f.contains("name")) throw ScenarioError(path + ".name: required");
    FeatureDef def{detail::get_string(f["name"], path + ".name"), std::nullopt};
    if (def.name.empty()) throw ScenarioError(path + ".name: empty");
    for (const auto& prev : sf.features) {
      if (prev.name == def.name) throw ScenarioError(path + ".name: duplicate feature '" + def.name + "'");
    }
    if (f.contains("position")) def.position = detail::get_vec3(f["position"], path + ".position");
    sf.features.push_back(std::move(def));
  }

  if (root.contains("segments")) {
    if (!root["segments"].is_array()) throw ScenarioError("segments: expected an array");
    for (std::size_t i = 0; i < root["segments"].size(); ++i) {
      const std::string path = "segments[" + std::to_string(i) + "]";
      const auto& s = root["segments"][i];
      check_keys(s, path, {"duration", "specific_force", "relative_positions"});
      if (!s.contains("duration")) throw ScenarioError(path + ".duration: required");
      if (!s.contains("specific_force")) throw ScenarioError(path + ".specific_force: required");
      SegmentDef seg;
      seg.duration = detail::get_positive(s["duration"], path + ".duration");
      seg.specific_force = detail::get_vec3(s["specific_force"], path + ".specific_force");
      if (s.contains("relative_positions")) {
        const auto& rp = s["relative_positions"];
        if (!rp.is_object()) throw ScenarioError(path + ".relative_positions: expected an object");
        for (const auto& [key, value] : rp.items()) {
          sf.feature_index(key);  // must name a declared feature
          seg.relative_positions[key] = detail::get_vec3(value, path + ".relative_positions." + key);
        }
      }
      sf.segments.push_back(std::move(seg));
    }
  }

  if (root.contains("schedule")) {
    const auto& s = root["schedule"];
    if (s.is_string()) {
      if (s.get<std::string>() != "auto") throw ScenarioError("schedule: expected \"auto\" or a 0/1 matrix");
      sf.schedule.kind = ScheduleDef::Kind::fov;
    } else if (s.is_array()) {
      sf.schedule.kind = ScheduleDef::Kind::matrix;
      for (std::size_t c = 0; c < s.size(); ++c) {
        const std::string path = "schedule[" + std::to_string(c) + "]";
        if (!s[c].is_array()) throw ScenarioError(path + ": expected an array of 0/1");
        std::vector<bool> row;
        for (std::size_t i = 0; i < s[c].size(); ++i) {
          const auto& v = s[c][i];
          if (!v.is_number_integer() || (v.get<int>() != 0 && v.get<int>() != 1)) {
            throw ScenarioError(path + "[" + std::to_string(i) + "]: expected 0 or 1");
          }
          row.push_back(v.get<int>() == 1);
        }
        sf.schedule.matrix.push_back(std::move(row));
      }
      if (sf.schedule.matrix.size() != sf.features.size()) {
        throw ScenarioError("schedule: expected one row per feature (" +
                            std::to_string(sf.features.size()) + ")");
      }
    } else {
      throw ScenarioError("schedule: expected \"auto\" or a 0/1 matrix");
    }
  }

  if (root.contains("trajectory")) {
    const auto& t = root["trajectory"];
    check_keys(t, "trajectory", {"p0", "v0", "segments"});
    TrajectoryConfig tc;
    tc.segments.clear();
    tc.gravity = sf.gravity;
    if (t.contains("p0")) tc.p0 = detail::get_vec3(t["p0"], "trajectory.p0");
    if (t.contains("v0")) tc.v0 = detail::get_vec3(t["v0"], "trajectory.v0");
    if (!t.contains("segments") || !t["segments"].is_array() || t["segments"].empty()) {
      throw ScenarioError("trajectory.segments: required non-empty array");
    }
    for (std::size_t i = 0; i < t["segments"].size(); ++i) {
      const std::string path = "trajectory.segments[" + std::to_string(i) + "]";
      const auto& s = t["segments"][i];
      check_keys(s, path, {"duration", "accel"});
      if (!s.contains("duration")) throw ScenarioError(path + ".duration: required");
      if (!s.contains("accel")) throw ScenarioError(path + ".accel: required");
      tc.segments.push_back({detail::get_positive(s["duration"], path + ".duration"),
                             detail::get_vec3(s["accel"], path + ".accel")});
    }
    sf.trajectory = std::move(tc);
  }

  if (root.contains("sensor")) {
    const auto& s = root["sensor"];
    check_keys(s, "sensor",
               {"imu_rate_hz", "accel_noise", "gyro_noise_deg_s", "frame_rate_hz", "fov_deg",
                "range_error_m", "bearing_noise_deg", "elevation_noise_deg", "boresight"});
    SensorConfig sc;
    auto pos = [&](const char* key, double& field) {
      if (s.contains(key)) field = detail::get_positive(s[key], std::string("sensor.") + key);
    };
    auto nonneg = [&](const char* key, double& field) {
      if (s.contains(key)) field = detail::get_non_negative(s[key], std::string("sensor.") + key);
    };
    pos("imu_rate_hz", sc.imu_rate_hz);
    nonneg("accel_noise", sc.accel_noise);
    nonneg("gyro_noise_deg_s", sc.gyro_noise_deg_s);
    pos("frame_rate_hz", sc.frame_rate_hz);
    pos("fov_deg", sc.fov_deg);
    nonneg("range_error_m", sc.range_error_m);
    nonneg("bearing_noise_deg", sc.bearing_noise_deg);
    nonneg("elevation_noise_deg", sc.elevation_noise_deg);
    if (s.contains("boresight")) sc.boresight = detail::get_vec3(s["boresight"], "sensor.boresight");
    try {
      sc.validate();
    } catch (const std::invalid_argument& e) {
      throw ScenarioError(e.what());
    }
    sf.sensor = sc;
  }

  if (root.contains("initial_covariance")) {
    const auto& c = root["initial_covariance"];
    check_keys(c, "initial_covariance", {"diagonal", "interpretation", "feature_prior_m2"});
    InitialCovarianceConfig ic;
    if (c.contains("diagonal")) {
      const auto& d = c["diagonal"];
      if (!d.is_array() || d.size() != 9) {
        throw ScenarioError("initial_covariance.diagonal: expected an array of 9 numbers");
      }
      for (std::size_t i = 0; i < 9; ++i) {
        ic.diagonal[i] = detail::get_non_negative(d[i], "initial_covariance.diagonal[" + std::to_string(i) + "]");
      }
    }
    if (c.contains("interpretation")) {
      const std::string s = detail::get_string(c["interpretation"], "initial_covariance.interpretation");
      if (s == "variance") {
        ic.interpretation = InitialCovarianceConfig::Interpretation::variance;
      } else if (s == "std") {
        ic.interpretation = InitialCovarianceConfig::Interpretation::std_dev;
      } else {
        throw ScenarioError("initial_covariance.interpretation: expected \"variance\" or \"std\"");
      }
    }
    if (c.contains("feature_prior_m2")) {
      ic.feature_prior = detail::get_non_negative(c["feature_prior_m2"], "initial_covariance.feature_prior_m2");
    }
    sf.initial_covariance = ic;
  }

  if (root.contains("candidates")) {
    if (!root["candidates"].is_array()) throw ScenarioError("candidates: expected an array");
    const auto labels = state_labels(sf.feature_names());
    for (std::size_t i = 0; i < root["candidates"].size(); ++i) {
      const std::string path = "candidates[" + std::to_string(i) + "]";
      const auto& c = root["candidates"][i];
      check_keys(c, path, {"label", "weights"});
      if (!c.contains("label")) throw ScenarioError(path + ".label: required");
      if (!c.contains("weights") || !c["weights"].is_object() || c["weights"].empty()) {
        throw ScenarioError(path + ".weights: required non-empty object");
      }
      CandidateDef def{detail::get_string(c["label"], path + ".label"), {}};
      for (const auto& [key, value] : c["weights"].items()) {
        if (std::find(labels.begin(), labels.end(), key) == labels.end()) {
          throw ScenarioError(path + ".weights." + key + ": unknown state label");
        }
        def.weights[key] = detail::get_number(value, path + ".weights." + key);
      }
      sf.candidates.push_back(std::move(def));
    }
  }
  return sf;
}

inline ScenarioFile parse_scenario(const std::string& text) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ScenarioError("parse error at " + detail::line_col(text, e.byte == 0 ? 0 : e.byte - 1) + ": " +
                        e.what());
  }
  return scenario_from_json(root);
}

inline ScenarioFile load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_scenario(ss.str());
  } catch (const ScenarioError& e) {
    throw ScenarioError(path + ": " + e.what());
  }
}

inline nlohmann::json to_json(const ScenarioFile& sf) {
  using nlohmann::json;
  using detail::vec_json;
  json root = json::object();
  if (!sf.name.empty()) root["name"] = sf.name;
  root["gravity"] = sf.gravity;
  root["analysis"] = {{"expansion", to_string(sf.analysis.expansion)},
                      {"tolerance", sf.analysis.tolerance},
                      {"max_power", sf.analysis.max_power}};
  json features = json::array();
  for (const auto& f : sf.features) {
    json jf = {{"name", f.name}};
    if (f.position) jf["position"] = vec_json(*f.position);
    features.push_back(jf);
  }
  root["features"] = features;
  if (!sf.segments.empty()) {
    json segs = json::array();
    for (const auto& s : sf.segments) {
      json rp = json::object();
      for (const auto& [k, v] : s.relative_positions) rp[k] = vec_json(v);
      segs.push_back({{"duration", s.duration}, {"specific_force", vec_json(s.specific_force)},
                      {"relative_positions", rp}});
    }
    root["segments"] = segs;
  }
  if (sf.schedule.kind == ScheduleDef::Kind::fov) {
    root["schedule"] = "auto";
  } else if (sf.schedule.kind == ScheduleDef::Kind::matrix) {
    json m = json::array();
    for (const auto& row : sf.schedule.matrix) {
      json r = json::array();
      for (bool a : row) r.push_back(a ? 1 : 0);
      m.push_back(r);
    }
    root["schedule"] = m;
  }
  if (sf.trajectory) {
    json segs = json::array();
    for (const auto& s : sf.trajectory->segments) {
      segs.push_back({{"duration", s.duration}, {"accel", vec_json(s.accel)}});
    }
    root["trajectory"] = {{"p0", vec_json(sf.trajectory->p0)}, {"v0", vec_json(sf.trajectory->v0)},
                          {"segments", segs}};
  }
  if (sf.sensor) {
    const auto& s = *sf.sensor;
    root["sensor"] = {{"imu_rate_hz", s.imu_rate_hz},
                      {"accel_noise", s.accel_noise},
                      {"gyro_noise_deg_s", s.gyro_noise_deg_s},
                      {"frame_rate_hz", s.frame_rate_hz},
                      {"fov_deg", s.fov_deg},
                      {"range_error_m", s.range_error_m},
                      {"bearing_noise_deg", s.bearing_noise_deg},
                      {"elevation_noise_deg", s.elevation_noise_deg},
                      {"boresight", vec_json(s.boresight)}};
  }
  if (sf.initial_covariance) {
    const auto& c = *sf.initial_covariance;
    json d = json::array();
    for (double v : c.diagonal) d.push_back(v);
    root["initial_covariance"] = {
        {"diagonal", d},
        {"interpretation",
         c.interpretation == InitialCovarianceConfig::Interpretation::variance ? "variance" : "std"},
        {"feature_prior_m2", c.feature_prior}};
  }
  if (!sf.candidates.empty()) {
    json cands = json::array();
    for (const auto& c : sf.candidates) {
      json w = json::object();
      for (const auto& [k, v] : c.weights) w[k] = v;
      cands.push_back({{"label", c.label}, {"weights", w}});
    }
    root["candidates"] = cands;
  }
  return root;
}

inline std::string serialize_scenario(const ScenarioFile& sf) { return to_json(sf).dump(2) + "\n"; }

/// Detection schedule over trajectory segments by field-of-view gating: a
/// feature counts as detected in a segment when it is visible at any vision
/// frame inside that segment.
inline DetectionSchedule fov_schedule(const TrajectoryConfig& traj, const SensorConfig& sensor,
                                      const std::vector<Vec3>& features) {
  const std::size_t k = traj.segments.size();
  std::vector<std::vector<bool>> a(features.size(), std::vector<bool>(k, false));
  const double total = traj.total_duration();
  const auto frames = static_cast<std::size_t>(std::floor(total * sensor.frame_rate_hz + 1e-9));
  for (std::size_t f = 0; f <= frames; ++f) {
    const double t = static_cast<double>(f) / sensor.frame_rate_hz;
    const std::size_t seg = traj.segment_at(t);
    const Vec3 p = traj.state_at(t).position;
    for (std::size_t c = 0; c < features.size(); ++c) {
      if (sensor.in_fov(features[c] - p)) a[c][seg] = true;
    }
  }
  return DetectionSchedule(std::move(a));
}

namespace detail {

inline std::vector<Vec3> feature_positions(const ScenarioFile& sf) {
  std::vector<Vec3> out;
  for (const auto& f : sf.features) {
    if (!f.position) throw ScenarioError("features: '" + f.name + "' needs a position");
    out.push_back(*f.position);
  }
  return out;
}

template <typename Fn>
auto rethrow_as_scenario_error(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ScenarioError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(std::string("invalid scenario: ") + e.what());
  }
}

}  // namespace detail

/// Analysis scenario: explicit segments when given, otherwise derived from the
/// trajectory (r = feature - vehicle position at segment start).
inline Scenario build_analysis_scenario(const ScenarioFile& sf) {
  return detail::rethrow_as_scenario_error([&] {
    Scenario sc;
    sc.feature_names = sf.feature_names();
    const std::size_t L = sf.features.size();
    if (!sf.segments.empty()) {
      if (sf.schedule.kind == ScheduleDef::Kind::fov) {
        throw ScenarioError("schedule: \"auto\" requires segments derived from a trajectory");
      }
      std::vector<std::vector<bool>> implied(L, std::vector<bool>(sf.segments.size(), false));
      for (std::size_t i = 0; i < sf.segments.size(); ++i) {
        SegmentSpec seg{sf.segments[i].duration, sf.segments[i].specific_force, {}};
        for (const auto& [name, r] : sf.segments[i].relative_positions) {
          const std::size_t c = sf.feature_index(name);
          seg.feature_rel_pos[c] = r;
          implied[c][i] = true;
        }
        sc.segments.push_back(std::move(seg));
      }
      if (sf.schedule.kind == ScheduleDef::Kind::matrix) {
        for (const auto& row : sf.schedule.matrix) {
          if (row.size() != sf.segments.size()) {
            throw ScenarioError("schedule: expected one column per segment (" +
                                std::to_string(sf.segments.size()) + ")");
          }
        }
        sc.schedule = DetectionSchedule(sf.schedule.matrix);
      } else {
        sc.schedule = L == 0 ? DetectionSchedule::vehicle_only(sf.segments.size())
                             : DetectionSchedule(implied);
      }
      validate(sc);
      return sc;
    }
    if (!sf.trajectory) throw ScenarioError("segments: required when no trajectory is given");
    const TrajectoryConfig& traj = *sf.trajectory;
    const auto positions = detail::feature_positions(sf);
    if (sf.schedule.kind == ScheduleDef::Kind::matrix) {
      for (const auto& row : sf.schedule.matrix) {
        if (row.size() != traj.segments.size()) {
          throw ScenarioError("schedule: expected one column per trajectory segment (" +
                              std::to_string(traj.segments.size()) + ")");
        }
      }
      sc.schedule = DetectionSchedule(sf.schedule.matrix);
    } else if (L == 0) {
      sc.schedule = DetectionSchedule::vehicle_only(traj.segments.size());
    } else {
      sc.schedule = fov_schedule(traj, sf.sensor.value_or(SensorConfig{}), positions);
    }
    for (std::size_t i = 0; i < traj.segments.size(); ++i) {
      SegmentSpec seg{traj.segments[i].duration, traj.segments[i].accel, {}};
      const Vec3 p = traj.state_at(traj.segment_start(i)).position;
      for (std::size_t c = 0; c < L; ++c) {
        if (sc.schedule.detected(c, i)) seg.feature_rel_pos[c] = positions[c] - p;
      }
      sc.segments.push_back(std::move(seg));
    }
    validate(sc);
    return sc;
  });
}

inline AnalysisOptions build_analysis_options(const ScenarioFile& sf) {
  AnalysisOptions opts;
  opts.expansion = sf.analysis.expansion;
  opts.rel_tol = sf.analysis.tolerance;
  opts.max_power = sf.analysis.max_power;
  const auto labels = state_labels(sf.feature_names());
  for (const auto& c : sf.candidates) {
    Vector w = Vector::Zero(static_cast<Eigen::Index>(labels.size()));
    for (const auto& [label, value] : c.weights) {
      const auto it = std::find(labels.begin(), labels.end(), label);
      w(it - labels.begin()) = value;
    }
    if (w.norm() == 0.0) throw ScenarioError("candidates: '" + c.label + "' has all-zero weights");
    opts.extra_candidates.push_back({c.label, "", std::move(w)});
  }
  return opts;
}

inline SimulationSetup build_simulation_setup(const ScenarioFile& sf) {
  return detail::rethrow_as_scenario_error([&] {
    if (!sf.trajectory) throw ScenarioError("trajectory: required for simulation");
    SimulationSetup setup;
    setup.feature_names = sf.feature_names();
    setup.feature_positions = detail::feature_positions(sf);
    setup.trajectory = *sf.trajectory;
    setup.sensor = sf.sensor.value_or(SensorConfig{});
    setup.initial = sf.initial_covariance.value_or(InitialCovarianceConfig{});
    if (sf.schedule.kind == ScheduleDef::Kind::matrix) {
      for (const auto& row : sf.schedule.matrix) {
        if (row.size() != setup.trajectory.segments.size()) {
          throw ScenarioError("schedule: expected one column per trajectory segment (" +
                              std::to_string(setup.trajectory.segments.size()) + ")");
        }
      }
      setup.schedule = DetectionSchedule(sf.schedule.matrix);
    } else {
      setup.schedule.reset();
    }
    return setup;
  });
}

}  // namespace slamobs
