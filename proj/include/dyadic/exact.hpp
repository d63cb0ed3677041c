#pragma once

// Exact determinant and inverse of A = id + sum_i u_i (x) p_i, and of
// B' = B + sum_i v_i (x) p_i through u_i = B^-1 v_i.
//
// Everything is expressed through wedge evaluations
//   (q ^ p_1 ^ ... ^ p_l)(x, z_1, ..., z_l) = det[pairings],
// summed over index subsets j_1 < ... < j_i in the order fixed by SubsetList.

#include <cstddef>
#include <span>
#include <vector>

#include "dyadic/exec.hpp"
#include "dyadic/tensor.hpp"

namespace dyadic {

// A = id_V + sum_i u_i (x) p_i.
class PerturbedIdentity {
 public:
  explicit PerturbedIdentity(DyadicPerturbation dyads);

  std::size_t dim() const noexcept { return dyads_.dim(); }
  std::size_t rank() const noexcept { return dyads_.rank(); }
  const DyadicPerturbation& dyads() const noexcept { return dyads_; }
  const std::vector<Vector>& vectors() const noexcept { return us_; }
  const std::vector<Covector>& covectors() const noexcept { return ps_; }

  GramMatrix gram() const;
  Operator materialize() const;

 private:
  DyadicPerturbation dyads_;
  std::vector<Vector> us_;
  std::vector<Covector> ps_;
};

struct ExactInverseResult {
  double det_a = 0.0;
  Operator inverse;
  Operator adjugate_like;  // A^-1 det A
};

// (z_1, p_1) [] ... [] (z_l, p_l) applied to v:
//   v * (p_1^...^p_l)(z_1..z_l) - sum_i z_i * (p_1^...^p_l)(z_1..v..z_l)
// with v in slot i.  Requires 1 <= l <= n-1.
Vector osquare_apply(std::span<const Vector> zs, std::span<const Covector> ps, const Vector& v);

// Matrix of the operator above, built column by column from basis vectors.
Operator osquare_operator(std::span<const Vector> zs, std::span<const Covector> ps);

// Sums of principal minors of g, grouped by size: result[i-1] is the sum over
// all i-element index subsets, for i = 1..min(max_size, k).
std::vector<double> principal_minor_sums(const GramMatrix& g, std::size_t max_size,
                                         Exec exec = Exec::serial);

// 1 + sum over subsets of size <= min(n, k) of the principal Gram minors.
double det_perturbed_identity(const PerturbedIdentity& a, Exec exec = Exec::serial);

// id + sum of osquare terms over subsets of size <= min(max_size, n-1, k).
Operator truncated_adjugate(const PerturbedIdentity& a, std::size_t max_size,
                            Exec exec = Exec::serial);

// Throws SingularPerturbation when |det A| <= 1e-12 * (1 + sum |alpha_i|).
ExactInverseResult inverse_perturbed_identity(const PerturbedIdentity& a, Exec exec = Exec::serial);

// q(A^-1 x) det A, evaluated as q(x) plus the wedge sum (no division).
double pairing_form_inverse(const PerturbedIdentity& a, const Vector& x, const Covector& q);

// Relative singularity guard shared by the exact and truncated paths.
bool within_singularity_guard(double det, std::span<const double> alphas);

// A = id + sum (B^-1 v_i) (x) p_i together with B^-1.
struct BaseLift {
  Operator b_inverse;
  PerturbedIdentity a;
};

// Throws SingularBase if B cannot be factorized.
BaseLift lift_through_base(const Operator& b, const DyadicPerturbation& q);

// (B + Q)^-1 = A^-1 B^-1.  Throws SingularBase / SingularPerturbation.
Operator perturbed_inverse_exact(const Operator& b, const DyadicPerturbation& q,
                                 Exec exec = Exec::serial);

}  // namespace dyadic
