#include "dyadic/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <tuple>

#include "dyadic/approx.hpp"
#include "dyadic/errors.hpp"
#include "dyadic/metric.hpp"
#include "dyadic/oracle.hpp"

namespace dyadic::bench {

namespace {

constexpr std::size_t kMaxDraws = 1000;

struct Job {
  std::size_t dim;
  std::size_t rank;
  std::size_t trial;
};

// Thrown internally to request a fresh draw.
struct Redraw {};

std::vector<TrialRecord> evaluate_draw(const ExperimentConfig& cfg, const Job& job,
                                       const std::vector<std::size_t>& orders, Rng& rng) {
  const std::size_t n = job.dim;
  const SquareMatrix b = rng.matrix(n);
  const DyadicPerturbation q = rng.perturbation(n, job.rank);
  const SquareMatrix b_prime = add(b, perturbation_operator(q));
  if (!oracle::passes_condition_screen(b) || !oracle::passes_condition_screen(b_prime)) throw Redraw{};

  const SquareMatrix exact = oracle::inverse(b_prime);
  const std::size_t max_order = *std::max_element(orders.begin(), orders.end());

  std::vector<TrialRecord> out;
  out.reserve(orders.size());
  try {
    // With the Euclidean metric B is read as a map V -> V*, each v_i as a
    // covector, and the problem is pulled back through sharp.
    std::optional<Metric> metric;
    std::optional<TruncationFamily> family;
    if (cfg.metric == MetricMode::euclidean) {
      metric.emplace(Metric::euclidean(n));
      std::vector<DualDyad> w;
      for (const auto& d : q.dyads())
        w.emplace_back(Covector(std::vector<double>(d.vector.coords().begin(), d.vector.coords().end())),
                       d.covector);
      auto lifted = lift_dual_problem(*metric, b, w);
      family.emplace(lifted.a_tilde, lifted.dyads, max_order);
    } else {
      family.emplace(b, q, max_order);
    }
    const auto& alphas = family->alphas();
    const double det_a = truncated_det(alphas, alphas.order_cap());

    for (std::size_t m : orders) {
      Operator approx = family->approx(m);
      Operator taylor = family->taylor(m);
      if (metric) {
        approx = multiply(approx, metric->inverse());
        taylor = multiply(taylor, metric->inverse());
      }
      TrialRecord r;
      r.dim = n;
      r.rank = job.rank;
      r.order = m;
      r.trial = job.trial;
      r.approx_error = relative_frobenius_error(approx, exact);
      r.taylor_error = relative_frobenius_error(taylor, exact);
      r.det_a = det_a;
      if (!std::isfinite(r.approx_error) || !std::isfinite(r.taylor_error) || !std::isfinite(det_a)) {
        throw Redraw{};
      }
      out.push_back(r);
    }
  } catch (const Error&) {
    // Singular base, vanishing det_m, and similar per-draw failures.
    throw Redraw{};
  }
  return out;
}

std::vector<TrialRecord> run_trial(const ExperimentConfig& cfg, const Job& job,
                                   const std::vector<std::size_t>& orders) {
  Rng rng(substream_seed(cfg.seed, job.dim, job.rank, job.trial), cfg.distribution);
  for (std::size_t draw = 0; draw < kMaxDraws; ++draw) {
    try {
      auto records = evaluate_draw(cfg, job, orders, rng);
      for (auto& r : records) {
        r.regenerated = draw > 0;
        r.redraws = draw;
      }
      return records;
    } catch (const Redraw&) {
    }
  }
  throw Error("no acceptable draw for dim " + std::to_string(job.dim) + ", rank " +
              std::to_string(job.rank) + " after " + std::to_string(kMaxDraws) + " attempts");
}

}  // namespace

MetricMode parse_metric_mode(std::string_view name) {
  if (name == "none") return MetricMode::none;
  if (name == "euclidean") return MetricMode::euclidean;
  throw InvalidArgument("unknown metric '" + std::string(name) + "'");
}

void ExperimentConfig::validate() const {
  if (dims.empty() || ranks.empty()) throw InvalidArgument("dims and ranks must be non-empty");
  if (trials < 1) throw InvalidArgument("trials must be at least 1");
  for (auto d : dims)
    if (d < 2) throw InvalidArgument("every dimension must be at least 2");
  for (auto r : ranks)
    if (r < 1) throw InvalidArgument("every rank must be at least 1");
}

std::vector<std::size_t> ExperimentConfig::effective_orders() const {
  if (!orders.empty()) return orders;
  const std::size_t top = *std::max_element(ranks.begin(), ranks.end());
  std::vector<std::size_t> out(top + 1);
  std::iota(out.begin(), out.end(), std::size_t{0});
  return out;
}

std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg, Exec exec) {
  cfg.validate();
  const auto orders = cfg.effective_orders();
  std::vector<Job> jobs;
  for (auto d : cfg.dims)
    for (auto r : cfg.ranks)
      for (std::size_t t = 0; t < cfg.trials; ++t) jobs.push_back({d, r, t});

  const auto per_job = map_indices(jobs.size(), exec, [&](std::size_t i) { return run_trial(cfg, jobs[i], orders); });

  std::vector<TrialRecord> records;
  records.reserve(jobs.size() * orders.size());
  for (const auto& batch : per_job) records.insert(records.end(), batch.begin(), batch.end());
  return records;
}

double median(std::vector<double> xs) {
  if (xs.empty()) throw InvalidArgument("median of an empty set");
  std::sort(xs.begin(), xs.end());
  const std::size_t mid = xs.size() / 2;
  return xs.size() % 2 == 1 ? xs[mid] : 0.5 * (xs[mid - 1] + xs[mid]);
}

std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records) {
  if (records.empty()) throw InvalidArgument("cannot summarize an empty record set");
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::vector<const TrialRecord*>> cells;
  for (const auto& r : records) cells[{r.dim, r.rank, r.order}].push_back(&r);

  std::vector<SummaryRow> rows;
  rows.reserve(cells.size());
  for (const auto& [key, group] : cells) {
    SummaryRow row;
    std::tie(row.dim, row.rank, row.order) = key;
    row.trials = group.size();
    std::vector<double> approx, taylor;
    std::size_t wins = 0, diverging = 0;
    for (const auto* r : group) {
      approx.push_back(r->approx_error);
      taylor.push_back(r->taylor_error);
      wins += r->approx_error <= r->taylor_error;
      diverging += r->taylor_error > 1.0;
    }
    const double count = static_cast<double>(group.size());
    row.approx_mean = std::accumulate(approx.begin(), approx.end(), 0.0) / count;
    row.taylor_mean = std::accumulate(taylor.begin(), taylor.end(), 0.0) / count;
    row.approx_median = median(std::move(approx));
    row.taylor_median = median(std::move(taylor));
    row.win_rate = static_cast<double>(wins) / count;
    row.taylor_diverging = static_cast<double>(diverging) / count;
    rows.push_back(row);
  }
  return rows;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_records_csv(std::ostream& os, const std::vector<TrialRecord>& records) {
  os << "dim,rank,trial,m,approx_error,taylor_error,det_a,regenerated\n";
  for (const auto& r : records) {
    os << r.dim << ',' << r.rank << ',' << r.trial << ',' << r.order << ',' << format_double(r.approx_error)
       << ',' << format_double(r.taylor_error) << ',' << format_double(r.det_a) << ','
       << (r.regenerated ? 1 : 0) << '\n';
  }
}

void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows) {
  os << "dim,rank,m,trials,approx_median,approx_mean,taylor_median,taylor_mean,win_rate,"
        "taylor_diverging\n";
  for (const auto& r : rows) {
    os << r.dim << ',' << r.rank << ',' << r.order << ',' << r.trials << ',' << format_double(r.approx_median)
       << ',' << format_double(r.approx_mean) << ',' << format_double(r.taylor_median) << ','
       << format_double(r.taylor_mean) << ',' << format_double(r.win_rate) << ','
       << format_double(r.taylor_diverging) << '\n';
  }
}

}  // namespace dyadic::bench
