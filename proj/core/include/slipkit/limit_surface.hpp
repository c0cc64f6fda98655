#pragma once

#include <string>
#include <variant>
#include <vector>

#include "slipkit/contact.hpp"

namespace slipkit {

/// One quadrature point of a discretized pressure field. Weights are the
/// fraction of the normal force carried by the cell.
struct GridCell {
  double x = 0.0;       ///< m
  double y = 0.0;       ///< m
  double weight = 0.0;  ///< dimensionless, sums to 1 over the patch
};

struct UniformDisc {
  double radius = 0.0;
};
struct Rim {
  double radius = 0.0;
};
struct Grid {
  std::vector<GridCell> cells;
};

/// Normal pressure field over the contact patch, expressed in the frame
/// torque is measured in. Disc and rim variants have their center of
/// pressure at the origin by symmetry; grid weights are normalized to 1 on
/// construction and positions taken as given, so callers supply
/// CoP-centered cells for physical patches.
class PressureDistribution {
 public:
  static PressureDistribution uniform_disc(double radius);
  static PressureDistribution rim(double radius);
  static PressureDistribution grid(std::vector<GridCell> cells);

  /// Parses "disc:R" (alias "uniform:R"), "rim:R", or "grid:<csv path>"
  /// where the CSV has columns x,y,weight. Throws ConfigError on bad specs.
  static PressureDistribution parse(const std::string& spec);

  const std::variant<UniformDisc, Rim, Grid>& shape() const { return shape_; }

 private:
  explicit PressureDistribution(std::variant<UniformDisc, Rim, Grid> shape);
  std::variant<UniformDisc, Rim, Grid> shape_;
};

/// Quadrature points for a distribution. Continuous variants are discretized
/// with `resolution` (cells per side for the disc, points on the circle for
/// the rim); 0 picks the defaults (64 and 256). Resolutions below 32 for the
/// disc throw std::invalid_argument. Grids are returned as-is.
std::vector<GridCell> discretize(const PressureDistribution& dist, int resolution = 0);

/// r_eff = integral of p * ||x|| dA / f_n: the rim radius whose maximum
/// friction torque matches the patch's. Closed form for disc (2R/3) and rim
/// (r); weight sum for grids. Independent of mu_c and f_n.
double effective_radius(const PressureDistribution& dist);

/// Brute-force limit surface: integrates the per-cell Coulomb traction
/// mu_c * p(x) opposite the local slip velocity v(x) = (vx - omega*y,
/// vy + omega*x) over the patch. Torque is about the CoP. This is the
/// "true" friction model the ellipsoid approximates; also the test oracle.
/// Throws std::domain_error if every cell has zero velocity.
FrictionWrench limit_surface_numeric(const PressureDistribution& dist,
                                     const PlanarTwist& twist, double mu_c, double fn,
                                     int resolution = 0);

/// One direction of a limit-surface sweep, normalized so the ellipsoid model
/// traces the unit circle: ft_over_mufn = f_t/(mu_c*f_n) and tau_over_mufnr
/// = |tau|/(mu_c*f_n*r_eff).
struct SweepPoint {
  double gamma_t = 0.0;
  double gamma_tau = 0.0;
  double ft_over_mufn = 0.0;
  double tau_over_mufnr = 0.0;
};

/// Sweeps twist directions from pure linear (gamma_t = 1) to pure rotation
/// (gamma_tau = 1), evaluating the numeric limit surface of `dist` at each.
/// n_dirs >= 2.
std::vector<SweepPoint> limit_surface_sweep(const PressureDistribution& dist, int n_dirs,
                                            int resolution = 0);

/// Max relative wrench error of the ellipsoid model (using r_eff) against the
/// numeric limit surface over an n_dirs sweep. Since the normalized ellipsoid
/// wrench has unit norm, this is max_k ||numeric_k - ellipsoid_k||.
/// n_dirs >= 8.
double ellipsoid_residual(const PressureDistribution& dist, int n_dirs,
                          int resolution = 0);

/// CSV with header gamma_t,gamma_tau,ft_over_mufn,tau_over_mufnr.
std::string sweep_to_csv(const std::vector<SweepPoint>& points);

}  // namespace slipkit
