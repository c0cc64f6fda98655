#include "slipkit/simulator.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "slipkit/csv.hpp"
#include "slipkit/errors.hpp"
#include "slipkit/config_file.hpp"

namespace slipkit {

namespace {

// Motion segments must clear the stiction band of the wrench model.
constexpr double kMotionSpeedFloor = 1.5e-3;

}  // namespace

double FnProfile::at(double t_local) const {
  if (knots.empty()) return 0.0;
  if (t_local <= knots.front().first) return knots.front().second;
  if (t_local >= knots.back().first) return knots.back().second;
  for (std::size_t i = 1; i < knots.size(); ++i) {
    if (t_local <= knots[i].first) {
      const auto& [t0, v0] = knots[i - 1];
      const auto& [t1, v1] = knots[i];
      const double s = (t_local - t0) / (t1 - t0);
      return v0 + s * (v1 - v0);
    }
  }
  return knots.back().second;
}

void FnProfile::validate(double duration) const {
  if (knots.empty()) {
    throw ConfigError("fn profile has no knots");
  }
  double prev = -std::numeric_limits<double>::infinity();
  for (const auto& [t, v] : knots) {
    if (t < 0.0 || t > duration) {
      throw ConfigError("fn knot time " + std::to_string(t) + " outside segment");
    }
    if (t <= prev) {
      throw ConfigError("fn knot times must be strictly increasing");
    }
    if (v < 0.0) {
      throw ConfigError("fn must be non-negative, got " + std::to_string(v));
    }
    prev = t;
  }
}

bool ScenarioSegment::is_stick() const {
  return twist.vx == 0.0 && twist.vy == 0.0 && twist.omega == 0.0;
}

void SimConfig::validate() const {
  if (!(dt_sim > 0.0) || !(force_rate > 0.0) || !(velocity_rate > 0.0)) {
    throw ConfigError("dt_sim, force_rate and velocity_rate must be positive");
  }
  if (force_rate < velocity_rate) {
    throw ConfigError("force_rate must be >= velocity_rate");
  }
  if (dt_sim > 1.0 / force_rate) {
    throw ConfigError("dt_sim must be <= 1/force_rate");
  }
  if (noise_force_std < 0.0 || noise_torque_std < 0.0 || noise_vel_std < 0.0) {
    throw ConfigError("noise levels must be non-negative");
  }
  if (!(pulse_speed > 0.0)) {
    throw ConfigError("pulse_speed must be positive");
  }
  if (spike.enabled() && (!(spike.rise > 0.0) || !(spike.decay > 0.0))) {
    throw ConfigError("spike rise and decay must be positive");
  }
}

const char* to_string(EventKind kind) {
  return kind == EventKind::kSlipOnset ? "SlipOnset" : "StickOnset";
}

namespace {

void validate_segments(const std::vector<ScenarioSegment>& segments) {
  if (segments.empty()) {
    throw ConfigError("scenario needs at least one segment");
  }
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto& seg = segments[i];
    const std::string where = "segment " + std::to_string(i + 1);
    if (!(seg.duration > 0.0)) {
      throw ConfigError(where + ": duration must be positive");
    }
    if (!std::isfinite(seg.twist.vx) || !std::isfinite(seg.twist.vy) ||
        !std::isfinite(seg.twist.omega)) {
      throw ConfigError(where + ": twist must be finite");
    }
    try {
      seg.truth.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(where + ": " + e.what());
    }
    seg.fn.validate(seg.duration);
    if (seg.is_stick()) {
      if (seg.load_rate < 0.0) {
        throw ConfigError(where + ": load_rate must be non-negative");
      }
      if (std::hypot(seg.load_dir_x, seg.load_dir_y) <= 0.0) {
        throw ConfigError(where + ": zero loading direction");
      }
    } else if (scaled_speed(seg.twist, seg.truth.r) <= kMotionSpeedFloor) {
      throw ConfigError(where + ": commanded twist is below the sliding threshold");
    }
  }
}

// Sum of active measured-fn transients at time t; prunes dead ones.
class SpikeTrain {
 public:
  explicit SpikeTrain(const SpikeConfig& cfg) : cfg_(cfg) {}

  void fire(double t) {
    if (cfg_.enabled()) starts_.push_back(t);
  }

  double value(double t) {
    double sum = 0.0;
    std::size_t keep = 0;
    for (double t0 : starts_) {
      const double s = t - t0;
      if (s < 0.0) continue;
      if (s > cfg_.rise + 12.0 * cfg_.decay) continue;  // decayed away
      starts_[keep++] = t0;
      sum += s <= cfg_.rise ? cfg_.amplitude * s / cfg_.rise
                            : cfg_.amplitude * std::exp(-(s - cfg_.rise) / cfg_.decay);
    }
    starts_.resize(keep);
    return sum;
  }

 private:
  SpikeConfig cfg_;
  std::vector<double> starts_;
};

}  // namespace

SimTrace run_scenario(const std::vector<ScenarioSegment>& segments,
                      const SimConfig& config) {
  config.validate();
  validate_segments(segments);

  std::vector<double> seg_start(segments.size());
  double total = 0.0;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    seg_start[i] = total;
    total += segments[i].duration;
  }

  // The wrench of a motion segment is linear in f_n at a fixed twist, so the
  // friction model is evaluated once per segment at f_n = 1.
  std::vector<FrictionWrench> unit_wrench(segments.size());
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto& seg = segments[i];
    if (seg.is_stick()) continue;
    unit_wrench[i] = config.friction_model == FrictionModel::kEllipsoid
                         ? ellipsoid_wrench(seg.twist, 1.0, seg.truth, 0.0)
                         : limit_surface_numeric(seg.dist, seg.twist, seg.truth.mu_c, 1.0);
  }
  std::vector<double> truth_radius(segments.size());
  for (std::size_t i = 0; i < segments.size(); ++i) {
    truth_radius[i] = config.friction_model == FrictionModel::kEllipsoid
                          ? segments[i].truth.r
                          : effective_radius(segments[i].dist);
  }

  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const auto noise = [&](double std_dev) { return std_dev * gauss(rng); };

  SimTrace trace;
  const double dt = config.dt_sim;
  const long n_steps = std::lround(total / dt);

  long next_force = 0;
  long next_vel = 0;

  bool slipping = !segments[0].is_stick();
  double f_load = 0.0;
  double dir_x = 1.0, dir_y = 0.0;
  bool pending_reset = false;
  bool pulse_pending = false;
  double pulse_x = 0.0, pulse_y = 0.0;
  std::size_t cur_seg = std::numeric_limits<std::size_t>::max();
  double last_fx = 0.0, last_fy = 0.0;

  SpikeTrain spikes(config.spike);
  double next_periodic = config.spike.period > 0.0
                             ? config.spike.period
                             : std::numeric_limits<double>::infinity();

  for (long k = 0; k < n_steps; ++k) {
    const double t = k * dt;

    std::size_t si = cur_seg == std::numeric_limits<std::size_t>::max() ? 0 : cur_seg;
    while (si + 1 < segments.size() && t >= seg_start[si + 1]) ++si;
    const auto& seg = segments[si];
    const double fn_base = seg.fn.at(t - seg_start[si]);

    if (si != cur_seg) {
      if (seg.is_stick()) {
        if (slipping) {
          trace.events.push_back({t, EventKind::kStickOnset});
          slipping = false;
          if (config.spike.on_stick) spikes.fire(t);
        }
        f_load = pending_reset ? seg.truth.mu_c * fn_base : std::hypot(last_fx, last_fy);
        const double norm = std::hypot(seg.load_dir_x, seg.load_dir_y);
        dir_x = seg.load_dir_x / norm;
        dir_y = seg.load_dir_y / norm;
      } else if (!slipping) {
        trace.events.push_back({t, EventKind::kSlipOnset});
        slipping = true;
      }
      pending_reset = false;
      cur_seg = si;
    }

    double fx, fy, tau, vx, vy, omega;
    if (!seg.is_stick()) {
      fx = unit_wrench[si].fx * fn_base;
      fy = unit_wrench[si].fy * fn_base;
      tau = unit_wrench[si].tau * fn_base;
      vx = seg.twist.vx;
      vy = seg.twist.vy;
      omega = seg.twist.omega;
    } else {
      if (pending_reset) {
        // Loading resets to the kinetic level one tick after break-away.
        f_load = seg.truth.mu_c * fn_base;
        trace.events.push_back({t, EventKind::kStickOnset});
        slipping = false;
        if (config.spike.on_stick) spikes.fire(t);
        pending_reset = false;
      } else {
        f_load += seg.load_rate * dt;
      }
      if (!pending_reset && f_load > seg.truth.mu_s * fn_base) {
        // Break-away: this tick carries the peak force, the next resets it.
        trace.events.push_back({t, EventKind::kSlipOnset});
        slipping = true;
        pulse_pending = true;
        pulse_x = config.pulse_speed * dir_x;
        pulse_y = config.pulse_speed * dir_y;
        pending_reset = true;
      }
      fx = f_load * dir_x;
      fy = f_load * dir_y;
      tau = 0.0;
      vx = vy = omega = 0.0;
    }
    last_fx = fx;
    last_fy = fy;

    while (t >= next_periodic) {
      spikes.fire(next_periodic);
      next_periodic += config.spike.period;
    }
    const double fn_meas = std::max(0.0, fn_base + spikes.value(t));

    // Emit every sensor sample whose zero-order-hold source is this tick.
    while (true) {
      const double s = next_force / config.force_rate;
      if (s >= t + dt || s >= total) break;
      trace.force.push_back({s, fx + noise(config.noise_force_std),
                             fy + noise(config.noise_force_std),
                             std::max(0.0, fn_meas + noise(config.noise_force_std)),
                             tau + noise(config.noise_torque_std)});
      ++next_force;
    }
    while (true) {
      const double s = next_vel / config.velocity_rate;
      if (s >= t + dt || s >= total) break;
      double svx = vx, svy = vy, somega = omega;
      if (pulse_pending) {
        // Break-away slip pulse, one velocity tick only. If the object is
        // already in commanded motion the real velocity signals the slip.
        if (svx == 0.0 && svy == 0.0 && somega == 0.0) {
          svx = pulse_x;
          svy = pulse_y;
        }
        pulse_pending = false;
      }
      trace.velocity.push_back({s, svx + noise(config.noise_vel_std),
                                svy + noise(config.noise_vel_std),
                                somega + noise(config.noise_vel_std)});
      trace.truth.push_back({s, seg.truth.mu_s, seg.truth.mu_c, truth_radius[si]});
      ++next_vel;
    }
  }
  return trace;
}

std::vector<ScenarioSegment> make_paper_like_scenario() {
  // Stick durations are sized so the load ramp sits just under break-away
  // when the next motion phase starts: the commanded motion then rips the
  // contact free at the static threshold, which is what a real transition
  // looks like, and the buffered candidates peak near mu_s.
  std::vector<ScenarioSegment> segs;

  ScenarioSegment linear;
  linear.duration = 2.3;
  linear.twist = {0.02, 0.0, 0.0};
  linear.truth = {0.8, 0.5, 0.010};
  linear.dist = PressureDistribution::uniform_disc(0.015);
  linear.fn = FnProfile::constant(2.0);
  segs.push_back(linear);

  ScenarioSegment stick1;
  stick1.duration = 1.19;
  stick1.truth = {0.8, 0.5, 0.010};
  stick1.dist = PressureDistribution::uniform_disc(0.015);
  stick1.fn = FnProfile::constant(2.0);
  stick1.load_rate = 1.5;
  segs.push_back(stick1);

  ScenarioSegment rotation;
  rotation.duration = 2.0;
  rotation.twist = {0.0, 0.0, 4.0};
  rotation.truth = {0.9, 0.4, 0.015};
  rotation.dist = PressureDistribution::uniform_disc(0.0225);
  rotation.fn = FnProfile::constant(2.0);
  segs.push_back(rotation);

  ScenarioSegment stick2;
  stick2.duration = 1.19;
  stick2.truth = {0.9, 0.4, 0.015};
  stick2.dist = PressureDistribution::uniform_disc(0.0225);
  stick2.fn = FnProfile::constant(2.0);
  stick2.load_rate = 1.5;
  segs.push_back(stick2);

  // Planar phase with simultaneous mu_c and r steps; both ratios stay
  // above the 0.3 gates (gamma_t ~ 0.77, gamma_tau ~ 0.64).
  ScenarioSegment planar;
  planar.duration = 3.32;
  planar.twist = {0.02, 0.0, 1.4};
  planar.truth = {0.9, 0.6, 0.012};
  planar.dist = PressureDistribution::uniform_disc(0.018);
  planar.fn = FnProfile::constant(2.0);
  segs.push_back(planar);

  return segs;
}

namespace {

FnProfile parse_fn_knots(const ConfigEntry& entry) {
  FnProfile profile;
  std::string s = entry.value;
  std::size_t pos = 0;
  while (pos < s.size()) {
    auto comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    const std::string pair = s.substr(pos, comma - pos);
    const auto colon = pair.find(':');
    if (colon == std::string::npos) {
      throw ConfigError("key 'fn_knots': expected 't:value' pairs, got '" + pair + "'");
    }
    profile.knots.emplace_back(
        csv::parse_double(pair.substr(0, colon), "fn_knots"),
        csv::parse_double(pair.substr(colon + 1), "fn_knots"));
    pos = comma + 1;
  }
  return profile;
}

void set_config_key(SimConfig& config, const ConfigEntry& e) {
  if (e.key == "dt_sim") config.dt_sim = config_double(e);
  else if (e.key == "force_rate") config.force_rate = config_double(e);
  else if (e.key == "velocity_rate") config.velocity_rate = config_double(e);
  else if (e.key == "noise_force_std") config.noise_force_std = config_double(e);
  else if (e.key == "noise_torque_std") config.noise_torque_std = config_double(e);
  else if (e.key == "noise_vel_std") config.noise_vel_std = config_double(e);
  else if (e.key == "seed") config.seed = static_cast<std::uint64_t>(config_int(e));
  else if (e.key == "pulse_speed") config.pulse_speed = config_double(e);
  else if (e.key == "spike_amplitude") config.spike.amplitude = config_double(e);
  else if (e.key == "spike_rise") config.spike.rise = config_double(e);
  else if (e.key == "spike_decay") config.spike.decay = config_double(e);
  else if (e.key == "spike_on_stick") config.spike.on_stick = config_bool(e);
  else if (e.key == "spike_period") config.spike.period = config_double(e);
  else if (e.key == "friction_model") {
    if (e.value == "numeric") config.friction_model = FrictionModel::kNumericLimitSurface;
    else if (e.value == "ellipsoid") config.friction_model = FrictionModel::kEllipsoid;
    else {
      throw ConfigError("key 'friction_model': expected numeric or ellipsoid, got '" +
                        e.value + "'");
    }
  } else {
    throw ConfigError("unknown config key '" + e.key + "'");
  }
}

ScenarioSegment parse_segment(const ConfigSection& section) {
  ScenarioSegment seg;
  for (const auto& e : section.entries) {
    if (e.key == "duration") seg.duration = config_double(e);
    else if (e.key == "vx") seg.twist.vx = config_double(e);
    else if (e.key == "vy") seg.twist.vy = config_double(e);
    else if (e.key == "omega") seg.twist.omega = config_double(e);
    else if (e.key == "mu_s") seg.truth.mu_s = config_double(e);
    else if (e.key == "mu_c") seg.truth.mu_c = config_double(e);
    else if (e.key == "r") seg.truth.r = config_double(e);
    else if (e.key == "dist") seg.dist = PressureDistribution::parse(e.value);
    else if (e.key == "fn") seg.fn = FnProfile::constant(config_double(e));
    else if (e.key == "fn_knots") seg.fn = parse_fn_knots(e);
    else if (e.key == "load_rate") seg.load_rate = config_double(e);
    else if (e.key == "load_dir_x") seg.load_dir_x = config_double(e);
    else if (e.key == "load_dir_y") seg.load_dir_y = config_double(e);
    else {
      throw ConfigError("line " + std::to_string(e.line) + ": unknown segment key '" +
                        e.key + "'");
    }
  }
  return seg;
}

}  // namespace

Scenario load_scenario(const std::filesystem::path& path) {
  Scenario scenario;
  const auto sections = parse_config_file(path);
  for (const auto& section : sections) {
    if (section.name.empty()) {
      if (!section.entries.empty()) {
        throw ConfigError(path.string() + ": keys before the first section; put them " +
                          "under [config] or [segment]");
      }
    } else if (section.name == "config") {
      for (const auto& e : section.entries) set_config_key(scenario.config, e);
    } else if (section.name == "segment") {
      scenario.segments.push_back(parse_segment(section));
    } else {
      throw ConfigError(path.string() + ":" + std::to_string(section.line) +
                        ": unknown section [" + section.name + "]");
    }
  }
  scenario.config.validate();
  validate_segments(scenario.segments);
  return scenario;
}

void apply_config_override(SimConfig& config, const std::string& key,
                           const std::string& value) {
  set_config_key(config, ConfigEntry{key, value, 0});
}

TracePaths trace_paths(const std::filesystem::path& dir, const std::string& name) {
  return TracePaths{dir / (name + "_force.csv"), dir / (name + "_vel.csv"),
                    dir / (name + "_truth.csv"), dir / (name + "_events.csv")};
}

TracePaths write_trace(const SimTrace& trace, const std::filesystem::path& dir,
                       const std::string& name) {
  const TracePaths paths = trace_paths(dir, name);

  std::string force = "t,fx,fy,fn,tau\n";
  for (const auto& s : trace.force) {
    const double row[] = {s.t, s.fx, s.fy, s.fn, s.tau};
    csv::append_row(force, row);
  }
  csv::write_file_atomic(paths.force, force);

  std::string vel = "t,vx,vy,omega\n";
  for (const auto& s : trace.velocity) {
    const double row[] = {s.t, s.vx, s.vy, s.omega};
    csv::append_row(vel, row);
  }
  csv::write_file_atomic(paths.velocity, vel);

  std::string truth = "t,mu_s,mu_c,r\n";
  for (const auto& s : trace.truth) {
    const double row[] = {s.t, s.mu_s, s.mu_c, s.r};
    csv::append_row(truth, row);
  }
  csv::write_file_atomic(paths.truth, truth);

  std::string events = "t,kind\n";
  for (const auto& e : trace.events) {
    events += csv::format_g9(e.t);
    events += ',';
    events += to_string(e.kind);
    events += '\n';
  }
  csv::write_file_atomic(paths.events, events);

  return paths;
}

}  // namespace slipkit
