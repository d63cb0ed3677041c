// lowrank: determinants and inverses of operators perturbed by dyadic products.
//
//   lowrank det PROBLEM.json
//   lowrank inverse PROBLEM.json
//   lowrank approx PROBLEM.json --order M
//   lowrank bench [--dims 2..10] [--ranks 2..15] [--orders 0..6] [--trials 100]
//                 [--seed S] [--dist normal|uniform] [--metric none|euclidean]
//                 [--output PATH] [--summary PATH] [--format csv]
//
// Exit codes: 2 malformed input, 3 dimension mismatch, 4 singular input,
// 5 I/O failure, 6 invalid argument, 1 anything else.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dyadic/approx.hpp"
#include "dyadic/bench.hpp"
#include "dyadic/errors.hpp"
#include "dyadic/exact.hpp"
#include "dyadic/json_io.hpp"
#include "dyadic/metric.hpp"
#include "dyadic/oracle.hpp"

namespace {

using namespace dyadic;
using io::json;

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kMalformed = 2,
  kDimension = 3,
  kSingular = 4,
  kIo = 5,
  kInvalid = 6,
};

struct IoError : Error {
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// "3", "2,4,6", "2..10", or a mix such as "2..4,8".
std::vector<std::size_t> parse_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto dots = item.find("..");
    try {
      if (dots == std::string::npos) {
        out.push_back(std::stoul(item));
      } else {
        const auto lo = std::stoul(item.substr(0, dots));
        const auto hi = std::stoul(item.substr(dots + 2));
        if (hi < lo) throw InvalidArgument("empty range '" + item + "'");
        for (auto v = lo; v <= hi; ++v) out.push_back(v);
      }
    } catch (const std::logic_error&) {
      throw InvalidArgument("cannot parse list item '" + item + "'");
    }
  }
  if (out.empty()) throw InvalidArgument("empty list '" + text + "'");
  return out;
}

// B and the dyads on V.  A dual problem (A : V -> V*, metric g) is pulled
// back to sharp o A and sharp(q_i) (x) p_i; results are pushed forward again
// by composing with sharp.
struct Prepared {
  SquareMatrix base;
  DyadicPerturbation dyads;
  SquareMatrix materialized;  // B + Q, or A + W
  std::optional<Metric> metric;

  SquareMatrix finish(const SquareMatrix& inv) const {
    return metric ? multiply(inv, metric->inverse()) : inv;
  }
};

Prepared prepare(const std::string& path) {
  const auto p = io::parse_problem(read_file(path));
  if (p.is_dual()) {
    auto lifted = lift_dual_problem(*p.metric, p.b, p.dual);
    return {std::move(lifted.a_tilde), std::move(lifted.dyads), materialize_dual(p.b, p.dual), p.metric};
  }
  return {p.b, *p.dyads, add(p.b, perturbation_operator(*p.dyads)), std::nullopt};
}

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

int cmd_det(const std::string& path) {
  const auto prep = prepare(path);
  const auto lift = lift_through_base(prep.base, prep.dyads);
  const double det_a = det_perturbed_identity(lift.a);
  const double det_b = DenseLu(prep.base).determinant();
  print({{"det_a", det_a}, {"det_b", det_b}, {"det_b_prime", det_a * det_b}});
  return kOk;
}

int cmd_inverse(const std::string& path) {
  const auto prep = prepare(path);
  const auto lift = lift_through_base(prep.base, prep.dyads);
  const auto exact = inverse_perturbed_identity(lift.a);
  const auto inv = prep.finish(multiply(exact.inverse, lift.b_inverse));
  print({{"det_a", exact.det_a}, {"inverse", io::to_json(inv)}});
  return kOk;
}

int cmd_approx(const std::string& path, std::size_t order) {
  const auto prep = prepare(path);
  const TruncationFamily family(prep.base, prep.dyads, order);
  const auto exact = oracle::inverse(prep.materialized);
  const auto approx = prep.finish(family.approx(order));
  const auto taylor = prep.finish(family.taylor(order));
  print({{"order", order},
         {"det_m", truncated_det(family.alphas(), order)},
         {"approx_inverse", io::to_json(approx)},
         {"approx_error", relative_frobenius_error(approx, exact)},
         {"taylor_inverse", io::to_json(taylor)},
         {"taylor_error", relative_frobenius_error(taylor, exact)}});
  return kOk;
}

struct BenchOptions {
  std::string dims = "2..10";
  std::string ranks = "2..15";
  std::string orders;
  std::size_t trials = 100;
  std::optional<std::uint64_t> seed;
  std::string dist = "normal";
  std::string metric = "none";
  std::string output;
  std::string summary;
  std::string format = "csv";
};

int cmd_bench(const BenchOptions& opt) {
  bench::ExperimentConfig cfg;
  cfg.dims = parse_list(opt.dims);
  cfg.ranks = parse_list(opt.ranks);
  if (!opt.orders.empty()) cfg.orders = parse_list(opt.orders);
  cfg.trials = opt.trials;
  if (opt.seed) {
    cfg.seed = *opt.seed;
  } else if (const char* env = std::getenv("LOWRANK_SEED")) {
    try {
      cfg.seed = std::stoull(env);
    } catch (const std::logic_error&) {
      throw InvalidArgument(std::string("LOWRANK_SEED is not an integer: ") + env);
    }
  }
  cfg.distribution = parse_distribution(opt.dist);
  cfg.metric = bench::parse_metric_mode(opt.metric);
  if (opt.format != "csv") throw InvalidArgument("unsupported format '" + opt.format + "'");

  const auto records = bench::run_experiment(cfg);
  const auto rows = bench::summarize(records);

  if (opt.output.empty()) {
    bench::write_records_csv(std::cout, records);
  } else {
    std::ofstream out(opt.output);
    if (!out) throw IoError("cannot write " + opt.output);
    bench::write_records_csv(out, records);
  }
  if (!opt.summary.empty()) {
    std::ofstream out(opt.summary);
    if (!out) throw IoError("cannot write " + opt.summary);
    bench::write_summary_csv(out, rows);
  }

  std::size_t redrawn = 0;
  for (const auto& r : records) redrawn += (r.regenerated && r.order == records.front().order) ? r.redraws : 0;
  std::size_t below_k = 0, won = 0;
  for (const auto& row : rows) {
    if (row.order >= row.rank) continue;
    ++below_k;
    won += row.win_rate >= 0.5;
  }
  std::cerr << "records: " << records.size() << ", redrawn samples: " << redrawn
            << ", cells with m < k where approximation wins >= 50%: " << won << "/" << below_k << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Determinants and inverses of operators perturbed by dyadic products"};
  app.require_subcommand(1);

  std::string path;
  std::size_t order = 0;
  BenchOptions bopt;

  auto* det = app.add_subcommand("det", "print det A, det B and det B'");
  det->add_option("problem", path, "problem JSON file")->required();
  auto* inverse = app.add_subcommand("inverse", "print det A and the exact inverse of B'");
  inverse->add_option("problem", path, "problem JSON file")->required();
  auto* approx = app.add_subcommand("approx", "print the m-th order and Taylor inverses with errors");
  approx->add_option("problem", path, "problem JSON file")->required();
  approx->add_option("--order,-m", order, "approximation order")->required();

  auto* bench = app.add_subcommand("bench", "run the random-ensemble convergence study");
  bench->add_option("--dims", bopt.dims, "dimensions, e.g. 2..10 or 2,4,8");
  bench->add_option("--ranks", bopt.ranks, "perturbation ranks");
  bench->add_option("--orders", bopt.orders, "approximation orders (default 0..max rank)");
  bench->add_option("--trials", bopt.trials, "trials per (dim, rank) cell");
  bench->add_option("--seed", bopt.seed, "seed (falls back to LOWRANK_SEED, then 0)");
  bench->add_option("--dist", bopt.dist, "normal | uniform");
  bench->add_option("--metric", bopt.metric, "none | euclidean");
  bench->add_option("--output", bopt.output, "records CSV path (default stdout)");
  bench->add_option("--summary", bopt.summary, "summary CSV path");
  bench->add_option("--format", bopt.format, "csv");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*det) return cmd_det(path);
    if (*inverse) return cmd_inverse(path);
    if (*approx) return cmd_approx(path, order);
    if (*bench) return cmd_bench(bopt);
  } catch (const io::MalformedInput& e) {
    std::cerr << "error: malformed input: " << e.what() << '\n';
    return kMalformed;
  } catch (const DimensionMismatch& e) {
    std::cerr << "error: dimension mismatch: " << e.what() << '\n';
    return kDimension;
  } catch (const SingularBase& e) {
    std::cerr << "error: singular base operator: " << e.what() << '\n';
    return kSingular;
  } catch (const SingularPerturbation& e) {
    std::cerr << "error: singular perturbed operator: " << e.what() << '\n';
    return kSingular;
  } catch (const TruncatedDetSingular& e) {
    std::cerr << "error: truncated determinant vanishes: " << e.what() << '\n';
    return kSingular;
  } catch (const DegenerateMetric& e) {
    std::cerr << "error: degenerate metric: " << e.what() << '\n';
    return kSingular;
  } catch (const SingularMatrix& e) {
    std::cerr << "error: singular matrix: " << e.what() << '\n';
    return kSingular;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: invalid argument: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}
