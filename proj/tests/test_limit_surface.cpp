#include <doctest.h>

#include <cmath>
#include <random>

#include "slipkit/errors.hpp"
#include "slipkit/limit_surface.hpp"

using namespace slipkit;

TEST_CASE("pure linear twist gives ft = mu*fn and zero torque for any distribution") {
  const PlanarTwist twist{0.03, 0.0, 0.0};
  for (const auto& dist : {PressureDistribution::uniform_disc(0.015),
                           PressureDistribution::rim(0.01)}) {
    const auto w = limit_surface_numeric(dist, twist, 0.5, 2.0);
    CHECK(w.ft == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(w.tau) < 1e-12);
    CHECK(w.fx == doctest::Approx(-1.0).epsilon(1e-12));
  }
}

TEST_CASE("pure rotation torque: disc 2R/3, rim exact r") {
  const PlanarTwist spin{0.0, 0.0, 5.0};

  // Analytic oracle for the uniform disc: tau = (2/3) mu fn R.
  const double R = 0.015;
  const double expected_disc = 2.0 / 3.0 * 0.5 * 2.0 * R;
  const auto disc = limit_surface_numeric(PressureDistribution::uniform_disc(R), spin,
                                          0.5, 2.0, 200);
  CHECK(std::abs(disc.tau) == doctest::Approx(expected_disc).epsilon(1e-3));
  CHECK(disc.ft < 1e-10);

  const auto rim = limit_surface_numeric(PressureDistribution::rim(0.01), spin, 0.5, 2.0);
  CHECK(std::abs(rim.tau) == doctest::Approx(0.5 * 2.0 * 0.01).epsilon(1e-12));
  CHECK(rim.ft < 1e-12);
}

TEST_CASE("degenerate twist is rejected") {
  CHECK_THROWS_AS(
      limit_surface_numeric(PressureDistribution::rim(0.01), {0.0, 0.0, 0.0}, 0.5, 2.0),
      std::domain_error);
}

TEST_CASE("effective radius closed forms") {
  CHECK(effective_radius(PressureDistribution::uniform_disc(0.015)) ==
        doctest::Approx(0.010).epsilon(1e-9));
  CHECK(effective_radius(PressureDistribution::rim(0.008)) == doctest::Approx(0.008));
  // A single concentrated cell at 5 mm from the torque reference.
  const auto point = PressureDistribution::grid({GridCell{0.005, 0.0, 3.0}});
  CHECK(effective_radius(point) == doctest::Approx(0.005).epsilon(1e-12));
}

TEST_CASE("grid discretization of the disc converges on the effective radius") {
  const double r_true = 0.010;
  auto cells = discretize(PressureDistribution::uniform_disc(0.015), 200);
  const auto grid = PressureDistribution::grid(std::move(cells));
  CHECK(std::abs(effective_radius(grid) - r_true) / r_true < 1e-3);
}

TEST_CASE("continuous variants refuse resolutions below 32") {
  CHECK_THROWS_AS(discretize(PressureDistribution::uniform_disc(0.01), 16),
                  std::invalid_argument);
  CHECK_THROWS_AS(discretize(PressureDistribution::rim(0.01), 16),
                  std::invalid_argument);
  CHECK(discretize(PressureDistribution::uniform_disc(0.01), 32).size() > 0);
}

TEST_CASE("grid constructor normalizes weights and rejects bad cells") {
  const auto grid = PressureDistribution::grid(
      {GridCell{0.01, 0.0, 2.0}, GridCell{-0.01, 0.0, 2.0}});
  const auto& cells = std::get<Grid>(grid.shape()).cells;
  CHECK(cells[0].weight == doctest::Approx(0.5));
  CHECK_THROWS_AS(PressureDistribution::grid({GridCell{0, 0, -1.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(PressureDistribution::grid({}), std::invalid_argument);
}

TEST_CASE("numeric wrench is homogeneous of degree zero in the twist") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> vel(-0.2, 0.2);
  std::uniform_real_distribution<double> ang(-30.0, 30.0);
  std::uniform_real_distribution<double> scale(0.1, 100.0);
  const auto dist = PressureDistribution::uniform_disc(0.015);

  for (int i = 0; i < 50; ++i) {
    const PlanarTwist twist{vel(rng), vel(rng), ang(rng)};
    if (std::hypot(twist.vx, twist.vy) + std::abs(twist.omega) < 1e-6) continue;
    const double c = scale(rng);
    const auto w1 = limit_surface_numeric(dist, twist, 0.5, 2.0);
    const auto w2 = limit_surface_numeric(
        dist, {c * twist.vx, c * twist.vy, c * twist.omega}, 0.5, 2.0);
    CHECK(std::abs(w1.fx - w2.fx) < 1e-10);
    CHECK(std::abs(w1.fy - w2.fy) < 1e-10);
    CHECK(std::abs(w1.tau - w2.tau) < 1e-10);
  }
}

TEST_CASE("numeric wrench dissipates power for every distribution") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> vel(-0.2, 0.2);
  std::uniform_real_distribution<double> ang(-30.0, 30.0);
  for (const auto& dist : {PressureDistribution::uniform_disc(0.012),
                           PressureDistribution::rim(0.01)}) {
    for (int i = 0; i < 200; ++i) {
      const PlanarTwist twist{vel(rng), vel(rng), ang(rng)};
      if (std::hypot(twist.vx, twist.vy) + std::abs(twist.omega) < 1e-6) continue;
      const auto w = limit_surface_numeric(dist, twist, 0.5, 2.0);
      CHECK(w.fx * twist.vx + w.fy * twist.vy + w.tau * twist.omega <= 1e-15);
    }
  }
}

TEST_CASE("sweep endpoints and monotone coupling") {
  for (const auto& dist : {PressureDistribution::uniform_disc(0.015),
                           PressureDistribution::rim(0.01)}) {
    const auto sweep = limit_surface_sweep(dist, 33);
    CHECK(sweep.front().gamma_t == doctest::Approx(1.0));
    CHECK(sweep.front().ft_over_mufn == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(sweep.front().tau_over_mufnr == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(sweep.back().gamma_tau == doctest::Approx(1.0));
    CHECK(sweep.back().tau_over_mufnr == doctest::Approx(1.0).epsilon(1e-3));

    // Along pure-linear -> pure-rotation, ft never increases, tau never drops.
    for (std::size_t i = 1; i < sweep.size(); ++i) {
      CHECK(sweep[i].ft_over_mufn <= sweep[i - 1].ft_over_mufn + 1e-12);
      CHECK(sweep[i].tau_over_mufnr >= sweep[i - 1].tau_over_mufnr - 1e-12);
    }
  }
}

TEST_CASE("ellipsoid residual against the numeric sweep oracle") {
  // Frozen from an independent quadrature of the Coulomb integral (200k rim
  // points / 400^2 disc cells). The rim's map has a kink where the
  // instantaneous center of rotation crosses the rim (gamma_t = gamma_tau),
  // peaking near 0.20; the distributed disc smooths it to about 0.15. Note
  // this is the opposite ordering of the intuition that the ellipsoid is
  // exact for a rim: the twist-to-wrench map of a true Coulomb rim is not
  // the ellipsoid map.
  const double rim_residual = ellipsoid_residual(PressureDistribution::rim(0.01), 64);
  CHECK(rim_residual == doctest::Approx(0.2025).epsilon(0.03));

  const double disc_residual =
      ellipsoid_residual(PressureDistribution::uniform_disc(0.015), 64);
  CHECK(disc_residual == doctest::Approx(0.152).epsilon(0.05));
  CHECK(disc_residual < rim_residual);

  // Residuals are scale invariant.
  CHECK(ellipsoid_residual(PressureDistribution::rim(0.03), 64) ==
        doctest::Approx(rim_residual).epsilon(1e-9));

  CHECK_THROWS_AS(ellipsoid_residual(PressureDistribution::rim(0.01), 4),
                  std::invalid_argument);
}

TEST_CASE("distribution spec parsing") {
  const auto disc = PressureDistribution::parse("uniform:0.015");
  CHECK(std::get<UniformDisc>(disc.shape()).radius == doctest::Approx(0.015));
  const auto rim = PressureDistribution::parse("rim:0.01");
  CHECK(std::get<Rim>(rim.shape()).radius == doctest::Approx(0.01));
  CHECK_THROWS_AS(PressureDistribution::parse("cone:0.01"), ConfigError);
  CHECK_THROWS_AS(PressureDistribution::parse("rim"), ConfigError);
}

TEST_CASE("sweep CSV header") {
  const auto sweep = limit_surface_sweep(PressureDistribution::rim(0.01), 9);
  const auto csv = sweep_to_csv(sweep);
  CHECK(csv.rfind("gamma_t,gamma_tau,ft_over_mufn,tau_over_mufnr\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 10);
}
