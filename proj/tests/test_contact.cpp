#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "slipkit/contact.hpp"

using namespace slipkit;

TEST_CASE("scaled_speed") {
  CHECK(scaled_speed({0.0, 0.0, 0.0}, 0.01) == 0.0);
  // 3-4-5 triple: vt = 0.03, r*omega = 0.04
  CHECK(scaled_speed({0.03, 0.0, 4.0}, 0.01) == doctest::Approx(0.05).epsilon(1e-12));
  // pure rotation: v = r*omega
  CHECK(scaled_speed({0.0, 0.0, 2.0}, 0.02) == doctest::Approx(0.04).epsilon(1e-12));
  CHECK_THROWS_AS(scaled_speed({1.0, 0.0, 0.0}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(scaled_speed({1.0, 0.0, 0.0}, -0.01), std::invalid_argument);
}

TEST_CASE("motion_ratios boundary directions") {
  const auto linear = motion_ratios({0.05, 0.0, 0.0}, 0.01);
  CHECK(linear.gamma_t == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(linear.gamma_tau == 0.0);

  const auto rotation = motion_ratios({0.0, 0.0, -3.0}, 0.01);
  CHECK(rotation.gamma_t == 0.0);
  CHECK(rotation.gamma_tau == doctest::Approx(1.0).epsilon(1e-12));

  const auto mixed = motion_ratios({0.0, 0.03, 4.0}, 0.01);
  CHECK(mixed.gamma_t == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(mixed.gamma_tau == doctest::Approx(0.8).epsilon(1e-12));

  CHECK_THROWS_AS(motion_ratios({0.0, 0.0, 0.0}, 0.01), std::domain_error);
}

TEST_CASE("ratio identity over fuzzed twists") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> vel(-1.0, 1.0);
  std::uniform_real_distribution<double> ang(-50.0, 50.0);
  std::uniform_real_distribution<double> rad(1e-4, 0.5);
  for (int i = 0; i < 10000; ++i) {
    const PlanarTwist twist{vel(rng), vel(rng), ang(rng)};
    const double r = rad(rng);
    if (scaled_speed(twist, r) <= 0.0) continue;
    const auto g = motion_ratios(twist, r);
    CHECK(std::abs(g.gamma_t * g.gamma_t + g.gamma_tau * g.gamma_tau - 1.0) < 1e-12);
  }
}

TEST_CASE("ellipsoid wrench pure cases") {
  const ContactParams params{0.8, 0.5, 0.01};

  const auto linear = ellipsoid_wrench({0.04, 0.0, 0.0}, 2.0, params);
  CHECK(linear.ft == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(linear.tau == 0.0);
  CHECK(linear.fx == doctest::Approx(-1.0).epsilon(1e-12));  // opposes +x motion

  const auto rotation = ellipsoid_wrench({0.0, 0.0, 2.0}, 2.0, params);
  CHECK(rotation.ft == doctest::Approx(0.0));
  CHECK(rotation.tau == doctest::Approx(-0.01).epsilon(1e-12));  // opposes +omega
}

TEST_CASE("ellipsoid wrench mixed direction") {
  // gamma_t = 0.6, gamma_tau = 0.8 with r = 0.02: vt = 0.03, r*omega = 0.04.
  const ContactParams params{1.0, 0.4, 0.02};
  const PlanarTwist twist{0.03, 0.0, 2.0};
  const auto g = motion_ratios(twist, params.r);
  CHECK(g.gamma_t == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(g.gamma_tau == doctest::Approx(0.8).epsilon(1e-12));

  const auto w = ellipsoid_wrench(twist, 5.0, params);
  CHECK(w.ft == doctest::Approx(1.2).epsilon(1e-12));
  CHECK(std::abs(w.tau) == doctest::Approx(0.032).epsilon(1e-12));

  // Ellipsoid membership
  const double a = w.ft / (params.mu_c * 5.0);
  const double b = w.tau / (params.mu_c * 5.0 * params.r);
  CHECK(std::abs(a * a + b * b - 1.0) < 1e-10);
}

TEST_CASE("ellipsoid wrench rejects stiction regime") {
  const ContactParams params{0.8, 0.5, 0.01};
  CHECK_THROWS_AS(ellipsoid_wrench({1e-4, 0.0, 0.0}, 2.0, params), std::domain_error);
  CHECK_THROWS_AS(ellipsoid_wrench({0.04, 0.0, 0.0}, -1.0, params), std::invalid_argument);
}

TEST_CASE("ellipsoid membership and dissipativity over fuzzed twists") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> vel(-0.5, 0.5);
  std::uniform_real_distribution<double> ang(-20.0, 20.0);
  std::uniform_real_distribution<double> rad(1e-3, 0.1);
  std::uniform_real_distribution<double> mu(0.05, 2.0);
  std::uniform_real_distribution<double> force(0.1, 20.0);

  for (int i = 0; i < 2000; ++i) {
    const PlanarTwist twist{vel(rng), vel(rng), ang(rng)};
    ContactParams params;
    params.mu_c = mu(rng);
    params.mu_s = params.mu_c * 1.5;
    params.r = rad(rng);
    const double fn = force(rng);
    if (scaled_speed(twist, params.r) <= 1.5e-3) continue;

    const auto w = ellipsoid_wrench(twist, fn, params);
    const double a = w.ft / (params.mu_c * fn);
    const double b = w.tau / (params.mu_c * fn * params.r);
    CHECK(std::abs(a * a + b * b - 1.0) < 1e-10);

    // friction never generates power
    const double power = w.fx * twist.vx + w.fy * twist.vy + w.tau * twist.omega;
    CHECK(power <= 1e-15);

    // ft must match its components
    CHECK(w.ft == doctest::Approx(std::hypot(w.fx, w.fy)).epsilon(1e-12));
  }
}

TEST_CASE("contact params validation") {
  CHECK_THROWS_AS((ContactParams{0.4, 0.5, 0.01}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ContactParams{0.5, 0.0, 0.01}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ContactParams{0.5, 0.5, 0.0}.validate()), std::invalid_argument);
  CHECK_NOTHROW((ContactParams{0.5, 0.5, 0.01}.validate()));
}
