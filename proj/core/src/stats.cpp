#include "slipkit/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <regex>
#include <stdexcept>

#include "slipkit/csv.hpp"
#include "slipkit/errors.hpp"

namespace slipkit {

namespace {

struct MeanStd {
  double mean = 0.0;
  double std_dev = 0.0;  // population
};

MeanStd mean_std(const std::vector<double>& values) {
  MeanStd out;
  for (double v : values) out.mean += v;
  out.mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - out.mean) * (v - out.mean);
  out.std_dev = std::sqrt(ss / static_cast<double>(values.size()));
  return out;
}

}  // namespace

TrialSummary summarize_trial(const std::string& trial_id,
                             const std::vector<EstimateRecord>& records,
                             StatsWindow window) {
  std::vector<std::size_t> valid;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].in_contact && !records[i].halted) valid.push_back(i);
  }
  if (valid.empty()) {
    throw DataError("trial '" + trial_id + "': no valid ticks to summarize");
  }

  // Start index per quantity; npos means "never updated, use all valid ticks".
  const auto npos = std::numeric_limits<std::size_t>::max();
  std::size_t first_mu_c = npos, first_r = npos, first_mu_s = npos;
  if (window == StatsWindow::kPostFirstUpdate) {
    for (std::size_t i = 0; i < records.size(); ++i) {
      if (first_mu_c == npos && records[i].updated_mu_c) first_mu_c = i;
      if (first_r == npos && records[i].updated_r) first_r = i;
      if (first_mu_s == npos && i > 0 && records[i].mu_s != records[i - 1].mu_s) {
        first_mu_s = i;
      }
    }
  }

  const auto collect = [&](std::size_t first, auto&& get) {
    std::vector<double> values;
    values.reserve(valid.size());
    for (std::size_t i : valid) {
      if (first != npos && i < first) continue;
      values.push_back(get(records[i]));
    }
    if (values.empty()) {
      // The quantity updated only inside halted/out-of-contact stretches;
      // fall back to the whole valid window.
      for (std::size_t i : valid) values.push_back(get(records[i]));
    }
    return mean_std(values);
  };

  TrialSummary s;
  s.trial_id = trial_id;
  s.n_samples = static_cast<int>(valid.size());
  const auto mu_c = collect(first_mu_c, [](const EstimateRecord& r) { return r.mu_c; });
  const auto mu_s = collect(first_mu_s, [](const EstimateRecord& r) { return r.mu_s; });
  const auto r = collect(first_r, [](const EstimateRecord& r_) { return r_.r; });
  s.mean_mu_c = mu_c.mean;
  s.std_mu_c = mu_c.std_dev;
  s.mean_mu_s = mu_s.mean;
  s.std_mu_s = mu_s.std_dev;
  s.mean_r = r.mean;
  s.std_r = r.std_dev;
  return s;
}

Aggregate aggregate(const std::vector<TrialSummary>& trials) {
  if (trials.empty()) {
    throw std::invalid_argument("aggregate: no trials");
  }
  const auto agg_quantity = [&](auto&& mean_of, auto&& std_of) {
    std::vector<double> means, stds;
    means.reserve(trials.size());
    stds.reserve(trials.size());
    for (const auto& t : trials) {
      means.push_back(mean_of(t));
      stds.push_back(std_of(t));
    }
    QuantityAggregate q;
    const auto m = mean_std(means);
    q.mean = m.mean;
    if (trials.size() >= 2) q.std_between = m.std_dev;
    q.std_within = mean_std(stds).mean;
    return q;
  };

  Aggregate out;
  out.n_trials = static_cast<int>(trials.size());
  out.mu_c = agg_quantity([](const TrialSummary& t) { return t.mean_mu_c; },
                          [](const TrialSummary& t) { return t.std_mu_c; });
  out.mu_s = agg_quantity([](const TrialSummary& t) { return t.mean_mu_s; },
                          [](const TrialSummary& t) { return t.std_mu_s; });
  out.r = agg_quantity([](const TrialSummary& t) { return t.mean_r; },
                       [](const TrialSummary& t) { return t.std_r; });
  return out;
}

std::string estimates_to_csv(const std::vector<EstimateRecord>& records,
                             const std::vector<TruthSample>* truth) {
  std::string out = "t,mu_c,mu_s,r,gamma_t,gamma_tau,updated_mu_c,updated_r,halted,in_contact";
  if (truth) out += ",err_mu_c,err_mu_s,err_r";
  out += '\n';

  std::size_t ti = 0;
  for (const auto& r : records) {
    out += csv::format_g9(r.t);
    out += ',';
    out += csv::format_g9(r.mu_c);
    out += ',';
    out += csv::format_g9(r.mu_s);
    out += ',';
    out += csv::format_g9(r.r);
    out += ',';
    out += csv::format_g9(r.gamma_t);
    out += ',';
    out += csv::format_g9(r.gamma_tau);
    out += ',';
    out += r.updated_mu_c ? '1' : '0';
    out += ',';
    out += r.updated_r ? '1' : '0';
    out += ',';
    out += r.halted ? '1' : '0';
    out += ',';
    out += r.in_contact ? '1' : '0';
    if (truth) {
      while (ti + 1 < truth->size() && (*truth)[ti + 1].t <= r.t) ++ti;
      const auto& g = (*truth)[ti];
      out += ',';
      out += csv::format_g9(r.mu_c - g.mu_c);
      out += ',';
      out += csv::format_g9(r.mu_s - g.mu_s);
      out += ',';
      out += csv::format_g9(r.r - g.r);
    }
    out += '\n';
  }
  return out;
}

void write_estimates_csv(const std::filesystem::path& path,
                         const std::vector<EstimateRecord>& records,
                         const std::vector<TruthSample>* truth) {
  csv::write_file_atomic(path, estimates_to_csv(records, truth));
}

std::vector<EstimateRecord> read_estimates_csv(const std::filesystem::path& path) {
  const auto table = csv::read_table(path);
  const std::string context = "'" + path.string() + "'";
  const auto col = [&](const char* name) { return csv::column_index(table, name, context); };
  const auto it = col("t"), imu_c = col("mu_c"), imu_s = col("mu_s"), ir = col("r"),
             igt = col("gamma_t"), igtau = col("gamma_tau"), iuc = col("updated_mu_c"),
             iur = col("updated_r"), ih = col("halted"), ic = col("in_contact");

  std::vector<EstimateRecord> out;
  out.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::string where = context + " row " + std::to_string(r + 1);
    EstimateRecord rec;
    rec.t = csv::parse_double(row[it], where);
    rec.mu_c = csv::parse_double(row[imu_c], where);
    rec.mu_s = csv::parse_double(row[imu_s], where);
    rec.r = csv::parse_double(row[ir], where);
    rec.gamma_t = csv::parse_double(row[igt], where);
    rec.gamma_tau = csv::parse_double(row[igtau], where);
    rec.updated_mu_c = row[iuc] == "1";
    rec.updated_r = row[iur] == "1";
    rec.halted = row[ih] == "1";
    rec.in_contact = row[ic] == "1";
    out.push_back(rec);
  }
  return out;
}

std::string group_label(const std::string& trial_name) {
  static const std::regex suffix("_(t|trial)[0-9]+$");
  return std::regex_replace(trial_name, suffix, "");
}

std::vector<ReportRow> build_report(const std::vector<TrialSummary>& trials) {
  std::map<std::string, std::vector<TrialSummary>> groups;
  for (const auto& t : trials) groups[group_label(t.trial_id)].push_back(t);

  std::vector<ReportRow> rows;
  rows.reserve(groups.size());
  for (const auto& [label, members] : groups) {
    rows.push_back(ReportRow{label, aggregate(members)});
  }
  return rows;
}

namespace {

std::string fmt4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

std::string fmt4_opt(const std::optional<double>& v) {
  return v ? fmt4(*v) : std::string("n/a");
}

}  // namespace

std::string report_to_csv(const std::vector<ReportRow>& rows) {
  std::string out =
      "label,n_trials,mu_c_mean,mu_c_std_between,mu_c_std_within,"
      "mu_s_mean,mu_s_std_between,mu_s_std_within,"
      "r_mean,r_std_between,r_std_within\n";
  for (const auto& row : rows) {
    out += row.label;
    out += ',' + std::to_string(row.agg.n_trials);
    for (const auto* q : {&row.agg.mu_c, &row.agg.mu_s, &row.agg.r}) {
      out += ',' + fmt4(q->mean);
      out += ',' + fmt4_opt(q->std_between);
      out += ',' + fmt4(q->std_within);
    }
    out += '\n';
  }
  return out;
}

std::string report_to_text(const std::vector<ReportRow>& rows) {
  constexpr const char* headers[] = {"label",    "n",        "mu_c",     "mu_c_sb",
                                     "mu_c_sw",  "mu_s",     "mu_s_sb",  "mu_s_sw",
                                     "r",        "r_sb",     "r_sw"};
  std::vector<std::vector<std::string>> cells;
  for (const auto& row : rows) {
    std::vector<std::string> line{row.label, std::to_string(row.agg.n_trials)};
    for (const auto* q : {&row.agg.mu_c, &row.agg.mu_s, &row.agg.r}) {
      line.push_back(fmt4(q->mean));
      line.push_back(fmt4_opt(q->std_between));
      line.push_back(fmt4(q->std_within));
    }
    cells.push_back(std::move(line));
  }

  constexpr std::size_t n_cols = std::size(headers);
  std::vector<std::size_t> width(n_cols);
  for (std::size_t c = 0; c < n_cols; ++c) width[c] = std::string(headers[c]).size();
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < n_cols; ++c) width[c] = std::max(width[c], line[c].size());
  }

  std::string out;
  const auto emit = [&](const std::vector<std::string>& line) {
    for (std::size_t c = 0; c < n_cols; ++c) {
      out += line[c];
      out.append(width[c] - line[c].size() + 2, ' ');
    }
    out += '\n';
  };
  emit(std::vector<std::string>(std::begin(headers), std::end(headers)));
  for (const auto& line : cells) emit(line);
  return out;
}

}  // namespace slipkit
