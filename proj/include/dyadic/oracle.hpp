#pragma once

// Independent verification paths.  Nothing here calls wedge_eval,
// small_determinant or DenseLu; the only shared primitive is pair().

#include <cstddef>
#include <span>
#include <vector>

#include "dyadic/tensor.hpp"

namespace dyadic::oracle {

// Tolerance policy.  Relative tolerances scale by max(1, magnitude).
inline constexpr double TOL_EXACT = 1e-12;
inline constexpr double TOL_ORACLE = 1e-10;
inline constexpr double TOL_INVERSE = 1e-9;

// Random trials whose |det| falls below this fraction of the Hadamard bound
// are redrawn.
inline constexpr double CONDITION_SCREEN = 1e-6;

// P * A = L * U with unit-diagonal L stored below the diagonal of `packed`
// and U on and above it.  pivots[i] is the input row placed at row i.
struct LuFactorization {
  std::size_t n = 0;
  std::vector<double> packed;
  std::vector<std::size_t> pivots;
  int sign = 1;

  SquareMatrix lower() const;
  SquareMatrix upper() const;
  SquareMatrix permutation() const;
};

// Left-looking partial-pivoting LU.  Throws SingularMatrix when a pivot is
// at most 1e-14 times the max-abs entry of its original row.
LuFactorization lu_factor(const SquareMatrix& a);
double lu_det(const LuFactorization& f);
std::vector<double> lu_solve(const LuFactorization& f, std::span<const double> b);
SquareMatrix lu_inverse(const LuFactorization& f);

// Convenience wrappers.
double determinant(const SquareMatrix& a);
SquareMatrix inverse(const SquareMatrix& a);

// Signed sum over all l! permutations; l <= 8.
double wedge_bruteforce(std::span<const Covector> covectors, std::span<const Vector> vectors);

// Cofactor (Laplace) expansion along the first row; exponential, tests only.
double cofactor_determinant(const SquareMatrix& a);

// Product of row 2-norms, an upper bound on |det a|.
double hadamard_bound(const SquareMatrix& a);

// |det a| > CONDITION_SCREEN * hadamard_bound(a), with a successful factorization.
bool passes_condition_screen(const SquareMatrix& a);

}  // namespace dyadic::oracle
