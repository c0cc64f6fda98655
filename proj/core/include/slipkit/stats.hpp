#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "slipkit/estimator.hpp"
#include "slipkit/simulator.hpp"

namespace slipkit {

/// Which ticks of a trial enter the statistics. Both rules require
/// in_contact and not halted; kPostFirstUpdate additionally starts each
/// quantity at its first update (first updated_mu_c tick for mu_c, first
/// updated_r tick for r, first change of mu_s_hat for mu_s). A quantity that
/// never updates falls back to all valid ticks, where its estimate is just
/// the held initial value.
enum class StatsWindow { kPostFirstUpdate, kAllValid };

struct TrialSummary {
  std::string trial_id;
  double mean_mu_c = 0.0, std_mu_c = 0.0;
  double mean_mu_s = 0.0, std_mu_s = 0.0;
  double mean_r = 0.0, std_r = 0.0;
  int n_samples = 0;  ///< valid (in-contact, non-halted) ticks

  /// Standard deviations are population standard deviations.
};

/// Per-quantity mean and population std over the selected ticks. Throws
/// DataError if no tick is valid (e.g. every record halted).
TrialSummary summarize_trial(const std::string& trial_id,
                             const std::vector<EstimateRecord>& records,
                             StatsWindow window = StatsWindow::kPostFirstUpdate);

/// The three reported statistics for one quantity across trials: mean of
/// trial means, std of trial means between trials (absent with fewer than
/// two trials), and mean within-trial std.
struct QuantityAggregate {
  double mean = 0.0;
  std::optional<double> std_between;
  double std_within = 0.0;
};

struct Aggregate {
  QuantityAggregate mu_c, mu_s, r;
  int n_trials = 0;
};

/// Permutation-invariant aggregation of trial summaries. Throws
/// std::invalid_argument on an empty list.
Aggregate aggregate(const std::vector<TrialSummary>& trials);

/// Estimate CSV: header t,mu_c,mu_s,r,gamma_t,gamma_tau,updated_mu_c,
/// updated_r,halted,in_contact (flags as 0/1). When a truth stream is given,
/// err_mu_c,err_mu_s,err_r columns (estimate minus zero-order-held truth)
/// are appended.
std::string estimates_to_csv(const std::vector<EstimateRecord>& records,
                             const std::vector<TruthSample>* truth = nullptr);
void write_estimates_csv(const std::filesystem::path& path,
                         const std::vector<EstimateRecord>& records,
                         const std::vector<TruthSample>* truth = nullptr);

/// Reads the estimate CSV back (extra columns such as the error triplet are
/// ignored).
std::vector<EstimateRecord> read_estimates_csv(const std::filesystem::path& path);

/// One line of the comparison report: a labelled group of trials (e.g.
/// "plastic_h1") aggregated over its members.
struct ReportRow {
  std::string label;
  Aggregate agg;
};

/// Group label for a trial name: a trailing _t<digits> or _trial<digits>
/// suffix is stripped, so plastic_h1_t0..t9 fall into one "plastic_h1" row.
std::string group_label(const std::string& trial_name);

/// Rows sorted by label, one per group.
std::vector<ReportRow> build_report(const std::vector<TrialSummary>& trials);

/// CSV with columns label,n_trials,<q>_mean,<q>_std_between,<q>_std_within
/// for q in mu_c, mu_s, r. Absent std_between renders as "n/a".
std::string report_to_csv(const std::vector<ReportRow>& rows);

/// Fixed-width text table with the same content.
std::string report_to_text(const std::vector<ReportRow>& rows);

}  // namespace slipkit
