#include "slipkit/contact.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace slipkit {

void ContactParams::validate() const {
  if (!(mu_c > 0.0) || !(mu_s >= mu_c)) {
    throw std::invalid_argument("contact params require mu_s >= mu_c > 0, got mu_s=" +
                                std::to_string(mu_s) + " mu_c=" + std::to_string(mu_c));
  }
  if (!(r > 0.0)) {
    throw std::invalid_argument("contact radius must be positive, got " + std::to_string(r));
  }
}

double tangential_speed(const PlanarTwist& twist) {
  return std::hypot(twist.vx, twist.vy);
}

double scaled_speed(const PlanarTwist& twist, double r) {
  if (!(r > 0.0)) {
    throw std::invalid_argument("scaled_speed: radius must be positive, got " +
                                std::to_string(r));
  }
  return std::sqrt(twist.vx * twist.vx + twist.vy * twist.vy +
                   r * r * twist.omega * twist.omega);
}

MotionRatios motion_ratios(const PlanarTwist& twist, double r) {
  const double v = scaled_speed(twist, r);
  if (v <= 0.0) {
    throw std::domain_error("motion_ratios: zero twist, ratios undefined");
  }
  return MotionRatios{tangential_speed(twist) / v, std::abs(r * twist.omega) / v};
}

FrictionWrench ellipsoid_wrench(const PlanarTwist& twist, double fn,
                                const ContactParams& params, double eps_v) {
  params.validate();
  if (fn < 0.0) {
    throw std::invalid_argument("ellipsoid_wrench: negative normal force");
  }
  const double v = scaled_speed(twist, params.r);
  if (v <= eps_v) {
    throw std::domain_error("ellipsoid_wrench: scaled speed " + std::to_string(v) +
                            " <= eps_v, model invalid near stiction");
  }
  const MotionRatios g = motion_ratios(twist, params.r);

  FrictionWrench w;
  w.ft = g.gamma_t * fn * params.mu_c;
  const double vt = tangential_speed(twist);
  if (vt > 0.0) {
    w.fx = -w.ft * twist.vx / vt;
    w.fy = -w.ft * twist.vy / vt;
  }
  const double tau_mag = g.gamma_tau * params.mu_c * fn * params.r;
  w.tau = twist.omega > 0.0 ? -tau_mag : (twist.omega < 0.0 ? tau_mag : 0.0);
  return w;
}

}  // namespace slipkit
