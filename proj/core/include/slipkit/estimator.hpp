#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "slipkit/contact.hpp"

namespace slipkit {

/// Estimator tuning. Defaults are the values used across all experiments.
/// A parameter file uses exactly these key names (with `Delta_t` for the
/// halt window and `delta_t` for the tick period); absent keys keep the
/// defaults.
struct EstimatorParams {
  double mu_c_0 = 1.3;          ///< initial Coulomb friction estimate
  double r_0 = 0.02;            ///< initial contact radius estimate [m]
  double mu_s_0 = 1.5;          ///< initial static friction estimate
  double eps_tau = 0.3;         ///< gamma_tau gate for r updates
  double eps_t = 0.3;           ///< gamma_t gate for mu_c updates
  double eps_v = 1.5e-3;        ///< motion-regime speed threshold [m/s]
  double eps_fn = 0.2;          ///< contact-detection force threshold [N]
  double p0 = 1.0;              ///< initial RLS covariance (key "P0")
  double lambda = 0.98;         ///< RLS forgetting factor
  int n_b = 16;                 ///< mu_s candidate buffer capacity
  int n_a = 2;                  ///< candidates averaged at a transition
  double eps_delta = 150.0;     ///< fn-rate heuristic threshold [N/s]
  double halt_dt = 0.05;        ///< heuristic halt window [s] (key "Delta_t")
  double tick_dt = 1.0 / 120;   ///< estimator tick period [s] (key "delta_t")
  double v_s = 1.5e-3;          ///< slip-detection speed threshold [m/s]
  bool heuristic_enabled = true;

  void validate() const;  // throws ConfigError
};

/// Reads a flat key = value parameter file; keys are the EstimatorParams
/// field names, unknown keys are an error, absent keys take defaults.
EstimatorParams load_estimator_params(const std::filesystem::path& path);

/// One time-aligned tick of contact wrench plus slip velocity.
struct Measurement {
  double t = 0.0;      ///< s
  double fx = 0.0;     ///< N
  double fy = 0.0;     ///< N
  double fn = 0.0;     ///< N
  double tau = 0.0;    ///< N*m
  double vx = 0.0;     ///< m/s
  double vy = 0.0;     ///< m/s
  double omega = 0.0;  ///< rad/s
};

/// Ring buffer of recent mu_s candidates (Algorithm 1's Buffer(n_b)).
class CandidateBuffer {
 public:
  explicit CandidateBuffer(int capacity);

  void push(double value);
  void clear();
  bool empty() const { return values_.empty(); }
  int size() const { return static_cast<int>(values_.size()); }
  int capacity() const { return capacity_; }

  /// Mean of the n largest stored values (all of them if fewer than n).
  double mean_of_largest(int n) const;

 private:
  int capacity_;
  int head_ = 0;  // insertion point once full
  std::vector<double> values_;
};

/// Full mutable estimator state.
struct EstimatorState {
  double mu_c_hat = 0.0;
  double p_mu = 0.0;  ///< RLS covariance for mu_c
  double r_hat = 0.0;
  double p_r = 0.0;  ///< RLS covariance for r
  double mu_s_hat = 0.0;
  CandidateBuffer buffer;
  int v_z = 1;  ///< Algorithm 1 phase flag: 1 = expecting slip onset
  double halt_until = 0.0;
  std::optional<double> last_fn;
  std::optional<double> last_t;

  static EstimatorState initial(const EstimatorParams& params);

 private:
  explicit EstimatorState(int buffer_capacity) : buffer(buffer_capacity) {}
};

/// Per-tick estimator output, one row of the estimate CSV.
struct EstimateRecord {
  double t = 0.0;
  double mu_c = 0.0;
  double mu_s = 0.0;
  double r = 0.0;
  double gamma_t = 0.0;
  double gamma_tau = 0.0;
  bool updated_mu_c = false;
  bool updated_r = false;
  bool halted = false;
  bool in_contact = false;
};

struct RlsUpdate {
  double theta = 0.0;
  double p = 0.0;
};

/// Scalar exponentially weighted recursive least squares:
///   K = P*phi / (lambda + phi^2*P)
///   theta' = theta + K*(y - phi*theta)
///   P'     = (1 - K*phi) * P / lambda
/// With lambda = 1 this is recursive ordinary least squares. phi = 0 leaves
/// the estimate unchanged and inflates P by 1/lambda.
RlsUpdate rls_scalar_update(double theta, double p, double phi, double y, double lambda);

/// Algorithm 1 body: computes gamma_t (force-based when the scaled speed is
/// zero, velocity-based otherwise), buffers f_t/(gamma_t*f_n) candidates, and
/// on a slip/stick transition replaces mu_s_hat with the mean of the n_a
/// largest candidates. While `halted`, candidate appends are skipped and a
/// transition still toggles the phase flag and clears the buffer but keeps
/// the previous mu_s_hat. An empty buffer at a transition also keeps it.
void mu_s_update(EstimatorState& state, const Measurement& meas,
                 const EstimatorParams& params, bool halted);

/// Advances the estimator by one tick:
///  1. f_n below eps_fn: not in contact, nothing updates.
///  2. fn-rate heuristic: a backward difference above eps_delta halts all
///     updates until t + Delta_t.
///  3. Motion regime (scaled speed with r_hat above eps_v): RLS update of
///     mu_c when gamma_t > eps_t with y = f_t, phi = gamma_t*f_n; then of r
///     when gamma_tau > eps_tau with y = |tau|, phi = gamma_tau*mu_c_hat*f_n
///     using the just-updated mu_c_hat. Both gammas come from the pre-update
///     r_hat.
///  4. mu_s_update (Algorithm 1).
///  5. Estimates clamped to [1e-4, 10] (mu) and [1e-4, 1] m (r).
/// Throws DataError on NaN fields or non-increasing timestamps.
EstimateRecord estimator_step(EstimatorState& state, const Measurement& meas,
                              const EstimatorParams& params);

/// Convenience wrapper owning params + state.
class FrictionEstimator {
 public:
  explicit FrictionEstimator(EstimatorParams params = {});

  EstimateRecord step(const Measurement& meas) {
    return estimator_step(state_, meas, params_);
  }
  std::vector<EstimateRecord> run(const std::vector<Measurement>& stream);

  const EstimatorParams& params() const { return params_; }
  const EstimatorState& state() const { return state_; }

 private:
  EstimatorParams params_;
  EstimatorState state_;
};

/// One evaluation of the bootstrapped update map T at a trial mu_c:
/// solves tau = gamma_tau(r)*mu_c*f_n*r for the self-consistent r >= 0,
/// then gamma_t and the mapped value T(mu_c) = f_t / (f_n * gamma_t).
struct FixedPointEval {
  double r = 0.0;
  double gamma_t = 0.0;
  double gamma_tau = 0.0;
  double mu_next = 0.0;
};

/// Requires v_t > 0, omega != 0, f_n > 0, tau != 0 and mu_c > 0 (all
/// couplings active); otherwise throws std::domain_error. A measurement
/// generated by the ellipsoid model satisfies T(mu_c*) = mu_c*.
FixedPointEval fixed_point_eval(double mu_c, const Measurement& meas);
double fixed_point_map(double mu_c, const Measurement& meas);

}  // namespace slipkit
