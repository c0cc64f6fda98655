#pragma once

namespace slipkit {

/// In-plane slip velocity of the object at the center of pressure:
/// linear components plus angular velocity about the contact normal.
struct PlanarTwist {
  double vx = 0.0;     ///< m/s
  double vy = 0.0;     ///< m/s
  double omega = 0.0;  ///< rad/s
};

/// Ground-truth or estimated contact parameter triple.
struct ContactParams {
  double mu_s = 0.0;  ///< static friction coefficient
  double mu_c = 0.0;  ///< Coulomb friction coefficient
  double r = 0.0;     ///< effective rim-contact radius [m]

  /// Enforces mu_s >= mu_c > 0 and r > 0; throws std::invalid_argument.
  void validate() const;
};

/// Fractions of the scaled-twist norm contributed by linear and rotational
/// motion. gamma_t^2 + gamma_tau^2 == 1 whenever the scaled speed is > 0.
/// They indicate how observable mu_c (gamma_t) and r (gamma_tau) are.
struct MotionRatios {
  double gamma_t = 0.0;
  double gamma_tau = 0.0;
};

/// Planar friction wrench transmitted through the contact, torque taken
/// about the center of pressure.
struct FrictionWrench {
  double fx = 0.0;   ///< N
  double fy = 0.0;   ///< N
  double ft = 0.0;   ///< N, = sqrt(fx^2 + fy^2)
  double tau = 0.0;  ///< N*m, sign opposes omega
};

/// Magnitude of the linear slip velocity, sqrt(vx^2 + vy^2).
double tangential_speed(const PlanarTwist& twist);

/// Norm of the uniform-unit twist [vx, vy, r*omega]:
/// sqrt(vx^2 + vy^2 + r^2*omega^2). Throws std::invalid_argument if r <= 0.
double scaled_speed(const PlanarTwist& twist, double r);

/// gamma_t = v_t / v and gamma_tau = |r*omega| / v.
/// Throws std::domain_error when the scaled speed is zero (ratios undefined);
/// callers must fall back to the force-based gamma_t in that regime.
MotionRatios motion_ratios(const PlanarTwist& twist, double r);

/// Ellipsoid limit-surface model of a rim contact:
///   f_t = gamma_t * f_n * mu_c,   tau = gamma_tau * mu_c * f_n * r.
/// Force is directed opposite the linear slip velocity and the torque sign
/// opposes omega, so the wrench always dissipates power. Valid only while
/// the contact is sliding; throws std::domain_error when the scaled speed
/// is at or below eps_v.
FrictionWrench ellipsoid_wrench(const PlanarTwist& twist, double fn,
                                const ContactParams& params, double eps_v = 1.5e-3);

}  // namespace slipkit
