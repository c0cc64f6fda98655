#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "slipkit/contact.hpp"
#include "slipkit/limit_surface.hpp"

namespace slipkit {

/// Piecewise-linear normal force over a segment, as (local time, value)
/// knots. Values clamp at the end knots.
struct FnProfile {
  std::vector<std::pair<double, double>> knots;

  static FnProfile constant(double fn) { return FnProfile{{{0.0, fn}}}; }
  double at(double t_local) const;
  void validate(double duration) const;  // ConfigError: fn >= 0, knots sorted
};

/// One phase of a scripted scenario. A zero commanded twist makes the
/// segment a stick phase: tangential force ramps at load_rate along
/// (load_dir_x, load_dir_y) until break-away.
struct ScenarioSegment {
  double duration = 0.0;  ///< s
  PlanarTwist twist;      ///< commanded slip twist; zero => stick
  ContactParams truth;
  PressureDistribution dist = PressureDistribution::rim(0.01);
  FnProfile fn = FnProfile::constant(2.0);
  double load_rate = 1.0;  ///< N/s, stick-phase tangential ramp
  double load_dir_x = 1.0;
  double load_dir_y = 0.0;

  bool is_stick() const;
};

enum class FrictionModel {
  kNumericLimitSurface,  ///< brute-force integrated surface of the segment dist
  kEllipsoid,            ///< the estimator's own model; traces are consistent
};

/// Measured-fn transient injector: a ramp of `amplitude` over `rise` seconds
/// followed by exponential decay, added to the *measured* normal force while
/// the physics keeps using the clean profile. Fired at each stick onset when
/// `on_stick` and every `period` seconds when period > 0. This recreates the
/// fast contact dynamics that corrupt real force signals and that the
/// estimator's fn-rate heuristic is designed to ride out.
struct SpikeConfig {
  double amplitude = 0.0;  ///< N; 0 disables
  double rise = 0.015;     ///< s
  double decay = 0.03;     ///< s
  bool on_stick = false;
  double period = 0.0;  ///< s; 0 disables periodic firing

  bool enabled() const { return amplitude > 0.0; }
};

struct SimConfig {
  double dt_sim = 1e-3;         ///< s
  double force_rate = 1000.0;   ///< Hz
  double velocity_rate = 120.0; ///< Hz
  double noise_force_std = 0.0;   ///< N, on fx, fy, fn
  double noise_torque_std = 0.0;  ///< N*m
  double noise_vel_std = 0.0;     ///< m/s on vx, vy; rad/s on omega
  std::uint64_t seed = 0;
  FrictionModel friction_model = FrictionModel::kNumericLimitSurface;
  double pulse_speed = 3e-3;  ///< m/s, one-tick slip pulse (2 * eps_v)
  SpikeConfig spike;

  void validate() const;  // ConfigError: force_rate >= velocity_rate, dt_sim <= 1/force_rate
};

struct ForceSample {
  double t = 0.0, fx = 0.0, fy = 0.0, fn = 0.0, tau = 0.0;
};
struct VelocitySample {
  double t = 0.0, vx = 0.0, vy = 0.0, omega = 0.0;
};
struct TruthSample {
  double t = 0.0, mu_s = 0.0, mu_c = 0.0, r = 0.0;
};

enum class EventKind { kSlipOnset, kStickOnset };
const char* to_string(EventKind kind);

struct TraceEvent {
  double t = 0.0;
  EventKind kind = EventKind::kSlipOnset;
};

/// Multirate sensor streams plus ground truth and stick-slip events.
struct SimTrace {
  std::vector<ForceSample> force;        ///< at force_rate
  std::vector<VelocitySample> velocity;  ///< at velocity_rate
  std::vector<TruthSample> truth;        ///< at velocity_rate
  std::vector<TraceEvent> events;        ///< alternating slip/stick onsets
};

/// Runs the scripted scenario on a dt_sim grid and samples the sensor
/// streams by zero-order hold. Deterministic for a given (segments, config).
///
/// Slip segments emit the selected friction model's wrench at the commanded
/// twist. Stick segments ramp the tangential load until it exceeds
/// mu_s * f_n; break-away then fires a SlipOnset, emits a one-tick velocity
/// pulse of pulse_speed along the loading direction, drops the force to
/// mu_c * f_n, and a StickOnset fires as the loading resets on the next tick.
SimTrace run_scenario(const std::vector<ScenarioSegment>& segments,
                      const SimConfig& config);

/// Canonical validation scenario: linear slip, stick, rotation, stick, and
/// planar motion with step changes in mu_c, mu_s and r across segments
/// (defaults documented in the README). Stick-slip events occur in the
/// transitions; the planar segment keeps both gamma ratios above 0.3.
std::vector<ScenarioSegment> make_paper_like_scenario();

/// A scenario file: [config] overrides plus one [segment] block per phase.
struct Scenario {
  std::vector<ScenarioSegment> segments;
  SimConfig config;
};

Scenario load_scenario(const std::filesystem::path& path);

/// Applies one `key=value` config override (same keys as the [config]
/// section). Throws ConfigError naming the key.
void apply_config_override(SimConfig& config, const std::string& key,
                           const std::string& value);

struct TracePaths {
  std::filesystem::path force;
  std::filesystem::path velocity;
  std::filesystem::path truth;
  std::filesystem::path events;
};

TracePaths trace_paths(const std::filesystem::path& dir, const std::string& name);

/// Writes <name>_force.csv, <name>_vel.csv, <name>_truth.csv and
/// <name>_events.csv under dir, all at 9 significant digits.
TracePaths write_trace(const SimTrace& trace, const std::filesystem::path& dir,
                       const std::string& name);

}  // namespace slipkit
