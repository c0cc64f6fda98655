#include "slipkit/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "slipkit/config_file.hpp"
#include "slipkit/errors.hpp"

namespace slipkit {

namespace {

constexpr double kMuMin = 1e-4;
constexpr double kMuMax = 10.0;
constexpr double kRMin = 1e-4;
constexpr double kRMax = 1.0;

// "v == 0" in Algorithm 1; the slip sensor reports exact zeros during stick.
constexpr double kZeroSpeed = 1e-12;

bool all_finite(const Measurement& m) {
  return std::isfinite(m.t) && std::isfinite(m.fx) && std::isfinite(m.fy) &&
         std::isfinite(m.fn) && std::isfinite(m.tau) && std::isfinite(m.vx) &&
         std::isfinite(m.vy) && std::isfinite(m.omega);
}

}  // namespace

void EstimatorParams::validate() const {
  if (!(lambda > 0.0) || lambda > 1.0) {
    throw ConfigError("lambda must be in (0, 1], got " + std::to_string(lambda));
  }
  if (!(p0 > 0.0)) throw ConfigError("P0 must be positive");
  if (!(eps_t > 0.0) || !(eps_tau > 0.0) || !(eps_v > 0.0) || !(eps_fn > 0.0) ||
      !(eps_delta > 0.0)) {
    throw ConfigError("all epsilon thresholds must be positive");
  }
  if (n_b < 1 || n_a < 1 || n_a > n_b) {
    throw ConfigError("need 1 <= n_a <= n_b");
  }
  if (!(halt_dt > 0.0) || !(tick_dt > 0.0) || !(v_s > 0.0)) {
    throw ConfigError("Delta_t, delta_t and v_s must be positive");
  }
  if (!(mu_c_0 > 0.0) || !(mu_s_0 > 0.0) || !(r_0 > 0.0)) {
    throw ConfigError("initial estimates must be positive");
  }
}

EstimatorParams load_estimator_params(const std::filesystem::path& path) {
  EstimatorParams p;
  const auto sections = parse_config_file(path);
  for (const auto& section : sections) {
    if (!section.name.empty()) {
      throw ConfigError(path.string() + ": unexpected section [" + section.name +
                        "], parameter files are flat");
    }
    for (const auto& e : section.entries) {
      if (e.key == "mu_c_0") p.mu_c_0 = config_double(e);
      else if (e.key == "r_0") p.r_0 = config_double(e);
      else if (e.key == "mu_s_0") p.mu_s_0 = config_double(e);
      else if (e.key == "eps_tau") p.eps_tau = config_double(e);
      else if (e.key == "eps_t") p.eps_t = config_double(e);
      else if (e.key == "eps_v") p.eps_v = config_double(e);
      else if (e.key == "eps_fn") p.eps_fn = config_double(e);
      else if (e.key == "P0") p.p0 = config_double(e);
      else if (e.key == "lambda") p.lambda = config_double(e);
      else if (e.key == "n_b") p.n_b = static_cast<int>(config_int(e));
      else if (e.key == "n_a") p.n_a = static_cast<int>(config_int(e));
      else if (e.key == "eps_delta") p.eps_delta = config_double(e);
      else if (e.key == "Delta_t") p.halt_dt = config_double(e);
      else if (e.key == "delta_t") p.tick_dt = config_double(e);
      else if (e.key == "v_s") p.v_s = config_double(e);
      else if (e.key == "heuristic_enabled") p.heuristic_enabled = config_bool(e);
      else {
        throw ConfigError(path.string() + ":" + std::to_string(e.line) +
                          ": unknown parameter key '" + e.key + "'");
      }
    }
  }
  p.validate();
  return p;
}

CandidateBuffer::CandidateBuffer(int capacity) : capacity_(capacity) {
  if (capacity < 1) throw std::invalid_argument("buffer capacity must be >= 1");
  values_.reserve(capacity);
}

void CandidateBuffer::push(double value) {
  if (static_cast<int>(values_.size()) < capacity_) {
    values_.push_back(value);
  } else {
    values_[head_] = value;
    head_ = (head_ + 1) % capacity_;
  }
}

void CandidateBuffer::clear() {
  values_.clear();
  head_ = 0;
}

double CandidateBuffer::mean_of_largest(int n) const {
  if (values_.empty()) throw std::logic_error("mean_of_largest on empty buffer");
  std::vector<double> sorted(values_);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const int take = std::min<int>(n, static_cast<int>(sorted.size()));
  double sum = 0.0;
  for (int i = 0; i < take; ++i) sum += sorted[i];
  return sum / take;
}

EstimatorState EstimatorState::initial(const EstimatorParams& params) {
  EstimatorState s(params.n_b);
  s.mu_c_hat = params.mu_c_0;
  s.p_mu = params.p0;
  s.r_hat = params.r_0;
  s.p_r = params.p0;
  s.mu_s_hat = params.mu_s_0;
  s.v_z = 1;
  s.halt_until = -std::numeric_limits<double>::infinity();
  return s;
}

RlsUpdate rls_scalar_update(double theta, double p, double phi, double y, double lambda) {
  const double k = p * phi / (lambda + phi * phi * p);
  return RlsUpdate{theta + k * (y - phi * theta), (1.0 - k * phi) * p / lambda};
}

void mu_s_update(EstimatorState& state, const Measurement& meas,
                 const EstimatorParams& params, bool halted) {
  const double ft = std::hypot(meas.fx, meas.fy);
  const double vt = std::hypot(meas.vx, meas.vy);
  const double v = std::sqrt(vt * vt + state.r_hat * state.r_hat * meas.omega * meas.omega);

  double gamma_t;
  if (v < kZeroSpeed) {
    // Force-based ratio for the stick phase, using the scaled torque tau/r_hat
    // so all terms share force units.
    const double tau_scaled = meas.tau / state.r_hat;
    gamma_t = ft / (std::sqrt(meas.fx * meas.fx + meas.fy * meas.fy +
                              tau_scaled * tau_scaled) +
                    1e-10);
  } else {
    gamma_t = vt / v;
  }

  if (gamma_t > params.eps_t) {
    if (!halted) state.buffer.push(ft / (gamma_t * meas.fn));
  } else {
    return;  // Algorithm 1: publish and continue, no transition check
  }

  const bool slip_onset = state.v_z == 1 && vt > params.v_s;
  const bool stick_onset = state.v_z == 0 && vt < kZeroSpeed;
  if (slip_onset || stick_onset) {
    if (!halted && !state.buffer.empty()) {
      state.mu_s_hat = state.buffer.mean_of_largest(params.n_a);
    }
    state.v_z = 1 - state.v_z;
    state.buffer.clear();
  }
}

EstimateRecord estimator_step(EstimatorState& state, const Measurement& meas,
                              const EstimatorParams& params) {
  if (!all_finite(meas)) {
    throw DataError("measurement at t=" + std::to_string(meas.t) +
                    " contains NaN or Inf");
  }
  if (state.last_t && meas.t <= *state.last_t) {
    throw DataError("non-increasing measurement time " + std::to_string(meas.t) +
                    " after " + std::to_string(*state.last_t));
  }

  // A tick arriving at exactly halt_until is the first clean one; the
  // half-tick guard keeps float noise from stretching the window by a tick.
  const auto is_halted = [&](double t) {
    return params.heuristic_enabled && t < state.halt_until - 0.5 * params.tick_dt;
  };

  EstimateRecord rec;
  rec.t = meas.t;
  rec.in_contact = meas.fn >= params.eps_fn;

  // Report the observability ratios either way: motion-based above eps_v,
  // force-based (Algorithm 1 style) otherwise.
  const double vt = std::hypot(meas.vx, meas.vy);
  const double v =
      std::sqrt(vt * vt + state.r_hat * state.r_hat * meas.omega * meas.omega);
  const bool motion = v > params.eps_v;
  if (motion) {
    rec.gamma_t = vt / v;
    rec.gamma_tau = std::abs(state.r_hat * meas.omega) / v;
  } else {
    const double ft = std::hypot(meas.fx, meas.fy);
    const double tau_scaled = meas.tau / state.r_hat;
    const double norm =
        std::sqrt(ft * ft + tau_scaled * tau_scaled) + 1e-10;
    rec.gamma_t = ft / norm;
    rec.gamma_tau = std::abs(tau_scaled) / norm;
  }

  if (!rec.in_contact) {
    rec.halted = is_halted(meas.t);
    rec.mu_c = state.mu_c_hat;
    rec.mu_s = state.mu_s_hat;
    rec.r = state.r_hat;
    state.last_fn = meas.fn;
    state.last_t = meas.t;
    return rec;
  }

  if (params.heuristic_enabled && state.last_fn) {
    const double fn_rate = (meas.fn - *state.last_fn) / params.tick_dt;
    if (fn_rate > params.eps_delta) {
      state.halt_until = meas.t + params.halt_dt;
    }
  }
  const bool halted = is_halted(meas.t);
  rec.halted = halted;

  if (motion && !halted) {
    if (rec.gamma_t > params.eps_t) {
      const double y = std::hypot(meas.fx, meas.fy);
      const double phi = rec.gamma_t * meas.fn;
      const auto up = rls_scalar_update(state.mu_c_hat, state.p_mu, phi, y, params.lambda);
      state.mu_c_hat = up.theta;
      state.p_mu = up.p;
      rec.updated_mu_c = true;
    }
    if (rec.gamma_tau > params.eps_tau) {
      // Bootstrapped regressor: prior r_hat fixed the gammas, the freshest
      // mu_c_hat scales the torque regressor.
      const double y = std::abs(meas.tau);
      const double phi = rec.gamma_tau * state.mu_c_hat * meas.fn;
      const auto up = rls_scalar_update(state.r_hat, state.p_r, phi, y, params.lambda);
      state.r_hat = up.theta;
      state.p_r = up.p;
      rec.updated_r = true;
    }
  }

  mu_s_update(state, meas, params, halted);

  state.mu_c_hat = std::clamp(state.mu_c_hat, kMuMin, kMuMax);
  state.mu_s_hat = std::clamp(state.mu_s_hat, kMuMin, kMuMax);
  state.r_hat = std::clamp(state.r_hat, kRMin, kRMax);

  rec.mu_c = state.mu_c_hat;
  rec.mu_s = state.mu_s_hat;
  rec.r = state.r_hat;

  state.last_fn = meas.fn;
  state.last_t = meas.t;
  return rec;
}

FrictionEstimator::FrictionEstimator(EstimatorParams params)
    : params_(params), state_(EstimatorState::initial(params)) {
  params_.validate();
}

std::vector<EstimateRecord> FrictionEstimator::run(const std::vector<Measurement>& stream) {
  std::vector<EstimateRecord> records;
  records.reserve(stream.size());
  for (const auto& m : stream) records.push_back(step(m));
  return records;
}

FixedPointEval fixed_point_eval(double mu_c, const Measurement& meas) {
  const double vt = std::hypot(meas.vx, meas.vy);
  const double w = std::abs(meas.omega);
  const double ft = std::hypot(meas.fx, meas.fy);
  const double tau = std::abs(meas.tau);
  if (!(vt > 0.0) || !(w > 0.0) || !(meas.fn > 0.0) || !(tau > 0.0) || !(mu_c > 0.0)) {
    throw std::domain_error(
        "fixed_point_eval: needs v_t > 0, omega != 0, f_n > 0, tau != 0, mu_c > 0");
  }

  // tau = gamma_tau(r) * mu_c * f_n * r with gamma_tau = r*w / sqrt(vt^2 + r^2 w^2)
  // gives a*r^2 = tau*sqrt(vt^2 + r^2 w^2), a = mu_c*f_n*w. Squaring yields a
  // quadratic in r^2 with exactly one non-negative root.
  const double a = mu_c * meas.fn * w;
  const double b = tau;
  const double disc = b * b * w * w * (b * b * w * w) + 4.0 * a * a * b * b * vt * vt;
  const double u = (b * b * w * w + std::sqrt(disc)) / (2.0 * a * a);
  const double r = std::sqrt(u);

  FixedPointEval out;
  out.r = r;
  const double v = std::sqrt(vt * vt + r * r * w * w);
  out.gamma_t = vt / v;
  out.gamma_tau = r * w / v;
  out.mu_next = ft / (meas.fn * out.gamma_t);
  return out;
}

double fixed_point_map(double mu_c, const Measurement& meas) {
  return fixed_point_eval(mu_c, meas).mu_next;
}

}  // namespace slipkit
