#include "slipkit/limit_surface.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "slipkit/csv.hpp"
#include "slipkit/errors.hpp"

namespace slipkit {

namespace {

constexpr int kDefaultDiscResolution = 64;
constexpr int kDefaultRimPoints = 256;
constexpr int kMinDiscResolution = 32;

}  // namespace

PressureDistribution::PressureDistribution(std::variant<UniformDisc, Rim, Grid> shape)
    : shape_(std::move(shape)) {}

PressureDistribution PressureDistribution::uniform_disc(double radius) {
  if (!(radius > 0.0)) {
    throw std::invalid_argument("uniform_disc: radius must be positive");
  }
  return PressureDistribution{UniformDisc{radius}};
}

PressureDistribution PressureDistribution::rim(double radius) {
  if (!(radius > 0.0)) {
    throw std::invalid_argument("rim: radius must be positive");
  }
  return PressureDistribution{Rim{radius}};
}

PressureDistribution PressureDistribution::grid(std::vector<GridCell> cells) {
  if (cells.empty()) {
    throw std::invalid_argument("grid: no cells");
  }
  double sum = 0.0;
  for (const auto& c : cells) {
    if (c.weight < 0.0) {
      throw std::invalid_argument("grid: negative cell weight");
    }
    sum += c.weight;
  }
  if (!(sum > 0.0)) {
    throw std::invalid_argument("grid: weights sum to zero");
  }
  // Weights normalize to 1; positions are taken as given, expressed in the
  // reference frame torque is measured in.
  for (auto& c : cells) c.weight /= sum;
  return PressureDistribution{Grid{std::move(cells)}};
}

PressureDistribution PressureDistribution::parse(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) {
    throw ConfigError("bad distribution spec '" + spec +
                      "', expected disc:R, rim:R, or grid:path");
  }
  const std::string kind = spec.substr(0, colon);
  const std::string arg = spec.substr(colon + 1);
  if (kind == "disc" || kind == "uniform") {
    return uniform_disc(csv::parse_double(arg, "distribution spec '" + spec + "'"));
  }
  if (kind == "rim") {
    return rim(csv::parse_double(arg, "distribution spec '" + spec + "'"));
  }
  if (kind == "grid") {
    auto table = csv::read_table(arg);
    const auto ix = csv::column_index(table, "x", arg);
    const auto iy = csv::column_index(table, "y", arg);
    const auto iw = csv::column_index(table, "weight", arg);
    std::vector<GridCell> cells;
    cells.reserve(table.rows.size());
    for (const auto& row : table.rows) {
      cells.push_back(GridCell{csv::parse_double(row[ix], arg),
                               csv::parse_double(row[iy], arg),
                               csv::parse_double(row[iw], arg)});
    }
    return grid(std::move(cells));
  }
  throw ConfigError("unknown distribution kind '" + kind + "' in '" + spec + "'");
}

std::vector<GridCell> discretize(const PressureDistribution& dist, int resolution) {
  return std::visit(
      [resolution](const auto& shape) -> std::vector<GridCell> {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, UniformDisc>) {
          const int n = resolution > 0 ? resolution : kDefaultDiscResolution;
          if (n < kMinDiscResolution) {
            throw std::invalid_argument("disc resolution must be >= 32");
          }
          // Cell-center quadrature on an n x n grid over the bounding square;
          // cells whose center falls inside the disc carry equal weight.
          const double R = shape.radius;
          const double h = 2.0 * R / n;
          std::vector<GridCell> cells;
          cells.reserve(static_cast<std::size_t>(n) * n);
          for (int i = 0; i < n; ++i) {
            const double x = -R + (i + 0.5) * h;
            for (int j = 0; j < n; ++j) {
              const double y = -R + (j + 0.5) * h;
              if (x * x + y * y <= R * R) {
                cells.push_back(GridCell{x, y, 1.0});
              }
            }
          }
          const double w = 1.0 / static_cast<double>(cells.size());
          for (auto& c : cells) c.weight = w;
          return cells;
        } else if constexpr (std::is_same_v<T, Rim>) {
          const int n = resolution > 0 ? resolution : kDefaultRimPoints;
          if (n < kMinDiscResolution) {
            throw std::invalid_argument("rim resolution must be >= 32");
          }
          // Equally weighted points on the circle: symmetric, so the pure
          // rotation torque mu_c*f_n*r is exact.
          std::vector<GridCell> cells;
          cells.reserve(n);
          const double w = 1.0 / n;
          for (int k = 0; k < n; ++k) {
            const double phi = 2.0 * std::numbers::pi * k / n;
            cells.push_back(GridCell{shape.radius * std::cos(phi),
                                     shape.radius * std::sin(phi), w});
          }
          return cells;
        } else {
          return shape.cells;
        }
      },
      dist.shape());
}

double effective_radius(const PressureDistribution& dist) {
  return std::visit(
      [](const auto& shape) -> double {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, UniformDisc>) {
          // (1/(pi R^2)) * int_0^R rho * 2 pi rho drho = 2R/3
          return 2.0 * shape.radius / 3.0;
        } else if constexpr (std::is_same_v<T, Rim>) {
          return shape.radius;
        } else {
          double r = 0.0;
          for (const auto& c : shape.cells) r += c.weight * std::hypot(c.x, c.y);
          return r;
        }
      },
      dist.shape());
}

FrictionWrench limit_surface_numeric(const PressureDistribution& dist,
                                     const PlanarTwist& twist, double mu_c, double fn,
                                     int resolution) {
  if (!(mu_c > 0.0)) {
    throw std::invalid_argument("limit_surface_numeric: mu_c must be positive");
  }
  if (fn < 0.0) {
    throw std::invalid_argument("limit_surface_numeric: negative normal force");
  }
  const auto cells = discretize(dist, resolution);

  FrictionWrench w;
  bool any_moving = false;
  for (const auto& c : cells) {
    const double cvx = twist.vx - twist.omega * c.y;
    const double cvy = twist.vy + twist.omega * c.x;
    const double speed = std::hypot(cvx, cvy);
    if (speed <= 0.0) continue;
    any_moving = true;
    const double scale = -mu_c * fn * c.weight / speed;
    const double dfx = scale * cvx;
    const double dfy = scale * cvy;
    w.fx += dfx;
    w.fy += dfy;
    w.tau += c.x * dfy - c.y * dfx;
  }
  if (!any_moving) {
    throw std::domain_error("limit_surface_numeric: degenerate twist, patch at rest");
  }
  w.ft = std::hypot(w.fx, w.fy);
  return w;
}

std::vector<SweepPoint> limit_surface_sweep(const PressureDistribution& dist, int n_dirs,
                                            int resolution) {
  if (n_dirs < 2) {
    throw std::invalid_argument("limit_surface_sweep: need at least 2 directions");
  }
  const double r_eff = effective_radius(dist);
  std::vector<SweepPoint> points;
  points.reserve(n_dirs);
  for (int k = 0; k < n_dirs; ++k) {
    const double theta = 0.5 * std::numbers::pi * k / (n_dirs - 1);
    double gt = std::cos(theta);
    double gtau = std::sin(theta);
    if (std::abs(gt) < 1e-15) gt = 0.0;
    if (std::abs(gtau) < 1e-15) gtau = 0.0;
    // Unit scaled speed with respect to r_eff: v_t = gamma_t, r*omega = gamma_tau.
    const PlanarTwist twist{gt, 0.0, gtau / r_eff};
    const FrictionWrench w = limit_surface_numeric(dist, twist, 1.0, 1.0, resolution);
    points.push_back(SweepPoint{gt, gtau, w.ft, std::abs(w.tau) / r_eff});
  }
  return points;
}

double ellipsoid_residual(const PressureDistribution& dist, int n_dirs, int resolution) {
  if (n_dirs < 8) {
    throw std::invalid_argument("ellipsoid_residual: need at least 8 directions");
  }
  double worst = 0.0;
  for (const auto& p : limit_surface_sweep(dist, n_dirs, resolution)) {
    // The normalized ellipsoid wrench at this direction is (gamma_t, gamma_tau),
    // a unit vector, so the relative norm error is just the difference norm.
    const double err =
        std::hypot(p.ft_over_mufn - p.gamma_t, p.tau_over_mufnr - p.gamma_tau);
    worst = std::max(worst, err);
  }
  return worst;
}

std::string sweep_to_csv(const std::vector<SweepPoint>& points) {
  std::string out = "gamma_t,gamma_tau,ft_over_mufn,tau_over_mufnr\n";
  for (const auto& p : points) {
    const double row[] = {p.gamma_t, p.gamma_tau, p.ft_over_mufn, p.tau_over_mufnr};
    csv::append_row(out, row);
  }
  return out;
}

}  // namespace slipkit
