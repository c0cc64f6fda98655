#pragma once

#include <filesystem>
#include <vector>

#include "slipkit/estimator.hpp"
#include "slipkit/simulator.hpp"

namespace slipkit {

/// Validated multirate sensor streams in the contact frame.
struct RawStreams {
  std::vector<ForceSample> force;
  std::vector<VelocitySample> velocity;
};

/// Parses a force/velocity CSV pair (the simulator's schemas: t,fx,fy,fn,tau
/// and t,vx,vy,omega). Throws DataError naming the missing column, the first
/// non-monotonic row, or the first NaN/Inf value. Empty streams are errors.
RawStreams parse_trace(const std::filesystem::path& force_file,
                       const std::filesystem::path& velocity_file);

/// Time-aligns the streams into estimator ticks: one Measurement per velocity
/// sample inside the temporal overlap, with force fields zero-order held from
/// the nearest past force sample. Output timestamps are the velocity
/// timestamps; no interpolation. delta_t is the nominal tick period (kept for
/// context in error messages). Throws DataError when the streams don't
/// overlap.
std::vector<Measurement> align(const RawStreams& raw, double delta_t);

/// Reads <prefix>_truth.csv (columns t,mu_s,mu_c,r).
std::vector<TruthSample> read_truth(const std::filesystem::path& truth_file);

}  // namespace slipkit
