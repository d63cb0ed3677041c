#pragma once

// Convergence study: approximation vs Taylor truncation on random problems.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "dyadic/exec.hpp"
#include "dyadic/random.hpp"

namespace dyadic::bench {

enum class MetricMode { none, euclidean };

MetricMode parse_metric_mode(std::string_view name);

struct ExperimentConfig {
  std::vector<std::size_t> dims{2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::vector<std::size_t> ranks{2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15};
  // Empty means 0..max(ranks).
  std::vector<std::size_t> orders;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  Distribution distribution = Distribution::normal;
  MetricMode metric = MetricMode::none;

  // Throws InvalidArgument on an unusable configuration.
  void validate() const;
  std::vector<std::size_t> effective_orders() const;
};

struct TrialRecord {
  std::size_t dim = 0;
  std::size_t rank = 0;
  std::size_t order = 0;
  std::size_t trial = 0;
  double approx_error = 0.0;
  double taylor_error = 0.0;
  double det_a = 0.0;
  bool regenerated = false;
  // Number of discarded draws before this trial was accepted.
  std::size_t redraws = 0;
};

// Records ordered by (dim, rank, trial, order).  Identical for either Exec.
std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg, Exec exec = Exec::parallel);

struct SummaryRow {
  std::size_t dim = 0;
  std::size_t rank = 0;
  std::size_t order = 0;
  std::size_t trials = 0;
  double approx_median = 0.0;
  double approx_mean = 0.0;
  double taylor_median = 0.0;
  double taylor_mean = 0.0;
  // Fraction of trials with approx_error <= taylor_error (ties count as wins).
  double win_rate = 0.0;
  // Fraction of trials with taylor_error > 1.
  double taylor_diverging = 0.0;
};

// Rows ordered by (dim, rank, order).  Throws InvalidArgument on empty input.
std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records);

double median(std::vector<double> xs);

// dim,rank,trial,m,approx_error,taylor_error,det_a,regenerated
void write_records_csv(std::ostream& os, const std::vector<TrialRecord>& records);
void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows);

// %.17g
std::string format_double(double x);

}  // namespace dyadic::bench
