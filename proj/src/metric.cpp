#include "dyadic/metric.hpp"

#include <cmath>
#include <string>

#include "dyadic/errors.hpp"

namespace dyadic {

namespace {

DenseLu factor_metric(const SquareMatrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (std::abs(m(i, j) - m(j, i)) > 1e-12) throw InvalidArgument("metric is not symmetric");
  try {
    return DenseLu(m);
  } catch (const SingularMatrix& e) {
    throw DegenerateMetric(std::string("metric is degenerate: ") + e.what());
  }
}

}  // namespace

Metric::Metric(SquareMatrix entries)
    : entries_(std::move(entries)), lu_(factor_metric(entries_)), inverse_(lu_.inverse()) {}

double Metric::operator()(const Vector& u, const Vector& v) const {
  return pair(musical_flat(*this, u), v);
}

DualDyad::DualDyad(Covector q_, Covector p_) : q(std::move(q_)), p(std::move(p_)) {
  if (q.dim() != p.dim()) throw DimensionMismatch("dual dyad: q and p differ in dimension");
}

Covector musical_flat(const Metric& g, const Vector& v) {
  if (v.dim() != g.dim()) throw DimensionMismatch("flat: dimension differs from metric");
  const Vector gv = apply(g.entries(), v);
  return Covector(std::vector<double>(gv.coords().begin(), gv.coords().end()));
}

Vector musical_sharp(const Metric& g, const Covector& p) {
  if (p.dim() != g.dim()) throw DimensionMismatch("sharp: dimension differs from metric");
  const SquareMatrix& inv = g.inverse();
  std::vector<double> out(g.dim(), 0.0);
  for (std::size_t r = 0; r < g.dim(); ++r)
    for (std::size_t c = 0; c < g.dim(); ++c) out[r] += inv(r, c) * p[c];
  return Vector(std::move(out));
}

LiftedDualProblem lift_dual_problem(const Metric& g, const SquareMatrix& a,
                                    const std::vector<DualDyad>& w) {
  if (a.size() != g.dim()) throw DimensionMismatch("dual map and metric differ in dimension");
  std::vector<Dyad> lifted;
  lifted.reserve(w.size());
  for (const auto& d : w) {
    if (d.q.dim() != g.dim()) throw DimensionMismatch("dual dyad and metric differ in dimension");
    lifted.emplace_back(musical_sharp(g, d.q), d.p);
  }
  return {multiply(g.inverse(), a), DyadicPerturbation(std::move(lifted))};
}

Operator perturbed_dual_inverse(const Metric& g, const SquareMatrix& a,
                                const std::vector<DualDyad>& w, std::size_t m) {
  const auto lifted = lift_dual_problem(g, a, w);
  const Operator tilde_inverse = approx_inverse(lifted.a_tilde, lifted.dyads, m);
  return multiply(tilde_inverse, g.inverse());
}

SquareMatrix materialize_dual(const SquareMatrix& a, const std::vector<DualDyad>& w) {
  SquareMatrix out = a;
  for (const auto& d : w) {
    if (d.q.dim() != a.size()) throw DimensionMismatch("dual dyad and map differ in dimension");
    for (std::size_t r = 0; r < a.size(); ++r)
      for (std::size_t c = 0; c < a.size(); ++c) out(r, c) += d.q[r] * d.p[c];
  }
  return out;
}

}  // namespace dyadic
