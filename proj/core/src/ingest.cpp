#include "slipkit/ingest.hpp"

#include <cmath>
#include <string>

#include "slipkit/csv.hpp"
#include "slipkit/errors.hpp"

namespace slipkit {

namespace {

// Parses the named columns into rows of doubles, validating finiteness and
// strictly increasing time as it goes. Row indices in errors are 1-based data
// rows (the header is row 0).
std::vector<std::vector<double>> load_columns(const std::filesystem::path& path,
                                              const std::vector<std::string>& names) {
  const auto table = csv::read_table(path);
  const std::string context = "'" + path.string() + "'";
  std::vector<std::size_t> idx;
  idx.reserve(names.size());
  for (const auto& name : names) idx.push_back(csv::column_index(table, name, context));

  if (table.rows.empty()) {
    throw DataError("empty stream in " + context + " (header only)");
  }

  std::vector<std::vector<double>> out;
  out.reserve(table.rows.size());
  double prev_t = -std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    std::vector<double> row(names.size());
    for (std::size_t c = 0; c < names.size(); ++c) {
      const std::string where =
          context + " row " + std::to_string(r + 1) + " column '" + names[c] + "'";
      row[c] = csv::parse_double(table.rows[r][idx[c]], where);
      if (!std::isfinite(row[c])) {
        throw DataError("non-finite value in " + where);
      }
    }
    if (row[0] <= prev_t) {
      throw DataError("non-monotonic timestamp at row " + std::to_string(r + 1) +
                      " of " + context);
    }
    prev_t = row[0];
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

RawStreams parse_trace(const std::filesystem::path& force_file,
                       const std::filesystem::path& velocity_file) {
  RawStreams raw;

  for (const auto& row : load_columns(force_file, {"t", "fx", "fy", "fn", "tau"})) {
    raw.force.push_back({row[0], row[1], row[2], row[3], row[4]});
  }
  for (const auto& row : load_columns(velocity_file, {"t", "vx", "vy", "omega"})) {
    raw.velocity.push_back({row[0], row[1], row[2], row[3]});
  }
  return raw;
}

std::vector<Measurement> align(const RawStreams& raw, double delta_t) {
  if (raw.force.empty() || raw.velocity.empty()) {
    throw DataError("align: both streams must be non-empty");
  }
  const double overlap_begin = raw.force.front().t;
  const double overlap_end = raw.force.back().t;
  if (raw.velocity.back().t < overlap_begin || raw.velocity.front().t > overlap_end) {
    throw DataError("align: no temporal overlap between force and velocity streams"
                    " (tick period " + csv::format_g9(delta_t) + " s)");
  }

  std::vector<Measurement> out;
  out.reserve(raw.velocity.size());
  std::size_t fi = 0;
  for (const auto& v : raw.velocity) {
    if (v.t < overlap_begin) continue;  // no past force sample yet
    if (v.t > overlap_end) break;
    while (fi + 1 < raw.force.size() && raw.force[fi + 1].t <= v.t) ++fi;
    const auto& f = raw.force[fi];
    out.push_back(Measurement{v.t, f.fx, f.fy, f.fn, f.tau, v.vx, v.vy, v.omega});
  }
  if (out.empty()) {
    throw DataError("align: overlap contains no velocity samples");
  }
  return out;
}

std::vector<TruthSample> read_truth(const std::filesystem::path& truth_file) {
  std::vector<TruthSample> out;
  for (const auto& row : load_columns(truth_file, {"t", "mu_s", "mu_c", "r"})) {
    out.push_back({row[0], row[1], row[2], row[3]});
  }
  return out;
}

}  // namespace slipkit
