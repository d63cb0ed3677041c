#pragma once

// m-th order approximations of (B + Q)^-1 for Q = sum_i v_i (x) p_i.
//
// With u_i = B^-1 v_i, G[a][b] = p_a(u_b) and alpha_i the sum of the i x i
// principal minors of G:
//
//   det_m A      = 1 + alpha_1 + ... + alpha_m
//   (B')^-1_m    = B^-1 + 1/det_m A * sum_{i=1..m} (-1)^i (1 + alpha_1 + ... + alpha_{m-i}) (B^-1 Q)^i B^-1
//   T_m          = B^-1 + sum_{i=1..m} (-1)^i (B^-1 Q)^i B^-1
//
// (B')^-1_m is exact once m >= min(n, k); T_m is a truncated Neumann series
// and is exact only for nilpotent B^-1 Q.

#include <cstddef>
#include <span>
#include <vector>

#include "dyadic/exact.hpp"
#include "dyadic/exec.hpp"
#include "dyadic/tensor.hpp"

namespace dyadic {

struct AlphaCoefficients {
  // alpha_1 .. alpha_K, K = min(n, k).
  std::vector<double> alphas;
  // partial_sums[m] = 1 + alpha_1 + ... + alpha_min(m, K), m = 0..K.
  std::vector<double> partial_sums;

  std::size_t order_cap() const noexcept { return alphas.size(); }
};

AlphaCoefficients make_alpha_coefficients(std::vector<double> alphas);

// Principal-minor enumeration over index subsets.
AlphaCoefficients alpha_coefficients(const GramMatrix& g, std::size_t n, Exec exec = Exec::serial);

// Same values from the characteristic polynomial of g (Faddeev-LeVerrier,
// O(k^4)); alpha_i is the coefficient of t^(k-i) in det(t I + g).
AlphaCoefficients alpha_coefficients_charpoly(const GramMatrix& g, std::size_t n);

double truncated_det(const AlphaCoefficients& ac, std::size_t m);

// How (B^-1 Q)^i B^-1 is formed.  `dyadic` works in the k-dimensional
// coefficient space: (B^-1 Q)^i B^-1 = sum_{a,b} (G^(i-1))[a][b] u_a (x) (p_b B^-1).
// `dense` multiplies n x n matrices.
enum class PowerPath { dyadic, dense };

// All orders 0..max_order for one problem, sharing B^-1, the Gram matrix,
// alpha coefficients, and the operator powers.
class TruncationFamily {
 public:
  // Throws SingularBase when B cannot be factorized.
  TruncationFamily(const Operator& b, const DyadicPerturbation& q, std::size_t max_order,
                   PowerPath path = PowerPath::dyadic, Exec exec = Exec::serial);
  TruncationFamily(BaseLift lift, std::size_t max_order, PowerPath path = PowerPath::dyadic,
                   Exec exec = Exec::serial);

  std::size_t dim() const noexcept { return b_inverse_.size(); }
  std::size_t rank() const noexcept { return a_.rank(); }
  std::size_t max_order() const noexcept { return powers_.size(); }
  const Operator& b_inverse() const noexcept { return b_inverse_; }
  const PerturbedIdentity& perturbed_identity() const noexcept { return a_; }
  const GramMatrix& gram() const noexcept { return gram_; }
  const AlphaCoefficients& alphas() const noexcept { return alphas_; }
  // (B^-1 Q)^i B^-1 for i = 1..max_order.
  const Operator& power(std::size_t i) const { return powers_.at(i - 1); }

  // Evaluated at min(m, K): the higher orders are the same operator.
  // Throws TruncatedDetSingular when det_m is within the guard.
  Operator approx(std::size_t m) const;
  // approx(m) evaluated with caller-supplied alpha_1.. (missing entries are 0).
  Operator approx_with_alphas(std::size_t m, std::span<const double> alphas) const;
  Operator taylor(std::size_t m) const;
  // (1/det_m)(id + sum_{|S| <= m} osquare terms) B^-1.
  Operator osquare_truncated(std::size_t m, Exec exec = Exec::serial) const;

 private:
  Operator b_inverse_;
  PerturbedIdentity a_;
  GramMatrix gram_;
  AlphaCoefficients alphas_;
  std::vector<Operator> powers_;
};

Operator approx_inverse(const Operator& b, const DyadicPerturbation& q, std::size_t m,
                        PowerPath path = PowerPath::dyadic);
Operator taylor_inverse(const Operator& b, const DyadicPerturbation& q, std::size_t m,
                        PowerPath path = PowerPath::dyadic);
Operator osquare_truncated_inverse(const Operator& b, const DyadicPerturbation& q, std::size_t m,
                                   Exec exec = Exec::serial);

struct ApproxReport {
  std::size_t order = 0;
  double det_m = 1.0;
  Operator approx_inverse;
  Operator taylor_inverse;
  double approx_error = 0.0;  // relative Frobenius distance to `exact`
  double taylor_error = 0.0;
};

ApproxReport approx_report(const TruncationFamily& family, std::size_t m, const Operator& exact);

}  // namespace dyadic
