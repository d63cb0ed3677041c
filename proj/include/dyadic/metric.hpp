#pragma once

// Maps V -> V* through a nondegenerate symmetric bilinear form g.
//
// flat(v) = g(v, .) and sharp = flat^-1.  A perturbed map A' = A + W : V -> V*
// with W = sum_i q_i (x) p_i (x |-> sum_i p_i(x) q_i, all q_i, p_i in V*) is
// pulled back to V -> V as
//   sharp o A' = sharp o A + sum_i sharp(q_i) (x) p_i,
// inverted there, and pushed forward again: (A')^-1 = (sharp o A')^-1 o sharp.

#include <cstddef>
#include <vector>

#include "dyadic/approx.hpp"
#include "dyadic/tensor.hpp"

namespace dyadic {

class Metric {
 public:
  // Throws InvalidArgument if asymmetric beyond 1e-12, DegenerateMetric if
  // the matrix cannot be factorized.  Indefinite forms are accepted.
  explicit Metric(SquareMatrix entries);

  static Metric euclidean(std::size_t n) { return Metric(SquareMatrix::identity(n)); }

  std::size_t dim() const noexcept { return entries_.size(); }
  const SquareMatrix& entries() const noexcept { return entries_; }
  double operator()(const Vector& u, const Vector& v) const;
  // Matrix of sharp : V* -> V.
  const SquareMatrix& inverse() const noexcept { return inverse_; }

 private:
  SquareMatrix entries_;
  DenseLu lu_;
  SquareMatrix inverse_;
};

// One term q (x) p of a perturbation W : V -> V*.
struct DualDyad {
  Covector q;
  Covector p;

  DualDyad(Covector q_, Covector p_);
};

Covector musical_flat(const Metric& g, const Vector& v);
Vector musical_sharp(const Metric& g, const Covector& p);

// sharp o A and the lifted dyads sharp(q_i) (x) p_i.
struct LiftedDualProblem {
  Operator a_tilde;
  DyadicPerturbation dyads;
};

LiftedDualProblem lift_dual_problem(const Metric& g, const SquareMatrix& a,
                                    const std::vector<DualDyad>& w);

// (A + W)^-1 approximated at order m, as a matrix of a map V* -> V.
Operator perturbed_dual_inverse(const Metric& g, const SquareMatrix& a,
                                const std::vector<DualDyad>& w, std::size_t m);

// Materialized A + W.
SquareMatrix materialize_dual(const SquareMatrix& a, const std::vector<DualDyad>& w);

}  // namespace dyadic
