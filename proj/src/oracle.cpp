#include "dyadic/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dyadic/errors.hpp"

namespace dyadic::oracle {

SquareMatrix LuFactorization::lower() const {
  SquareMatrix l(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) l(i, j) = packed[i * n + j];
    l(i, i) = 1.0;
  }
  return l;
}

SquareMatrix LuFactorization::upper() const {
  SquareMatrix u(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) u(i, j) = packed[i * n + j];
  return u;
}

SquareMatrix LuFactorization::permutation() const {
  SquareMatrix p(n);
  for (std::size_t i = 0; i < n; ++i) p(i, pivots[i]) = 1.0;
  return p;
}

LuFactorization lu_factor(const SquareMatrix& a) {
  const std::size_t n = a.size();
  LuFactorization f;
  f.n = n;
  f.packed.assign(a.data().begin(), a.data().end());
  f.pivots.resize(n);
  std::iota(f.pivots.begin(), f.pivots.end(), std::size_t{0});

  std::vector<double> row_scale(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) row_scale[i] = std::max(row_scale[i], std::abs(a(i, j)));

  auto at = [&](std::size_t i, std::size_t j) -> double& { return f.packed[i * n + j]; };

  // Left-looking: column j is updated with all previous columns, then pivoted.
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t lim = std::min(i, j);
      double s = at(i, j);
      for (std::size_t p = 0; p < lim; ++p) s -= at(i, p) * at(p, j);
      at(i, j) = s;
    }
    std::size_t piv = j;
    for (std::size_t i = j + 1; i < n; ++i) {
      if (std::abs(at(i, j)) > std::abs(at(piv, j))) piv = i;
    }
    const double mag = std::abs(at(piv, j));
    if (mag == 0.0 || mag <= 1e-14 * row_scale[f.pivots[piv]]) {
      throw SingularMatrix("oracle LU: zero pivot in column " + std::to_string(j));
    }
    if (piv != j) {
      for (std::size_t c = 0; c < n; ++c) std::swap(at(piv, c), at(j, c));
      std::swap(f.pivots[piv], f.pivots[j]);
      f.sign = -f.sign;
    }
    for (std::size_t i = j + 1; i < n; ++i) at(i, j) /= at(j, j);
  }
  return f;
}

double lu_det(const LuFactorization& f) {
  double d = f.sign;
  for (std::size_t i = 0; i < f.n; ++i) d *= f.packed[i * f.n + i];
  return d;
}

std::vector<double> lu_solve(const LuFactorization& f, std::span<const double> b) {
  const std::size_t n = f.n;
  if (b.size() != n) throw DimensionMismatch("oracle solve: right-hand side has wrong length");
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = b[f.pivots[i]];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t p = 0; p < i; ++p) y[i] -= f.packed[i * n + p] * y[p];
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t p = i + 1; p < n; ++p) y[i] -= f.packed[i * n + p] * y[p];
    y[i] /= f.packed[i * n + i];
  }
  return y;
}

SquareMatrix lu_inverse(const LuFactorization& f) {
  SquareMatrix inv(f.n);
  std::vector<double> e(f.n, 0.0);
  for (std::size_t c = 0; c < f.n; ++c) {
    e[c] = 1.0;
    const auto col = lu_solve(f, e);
    e[c] = 0.0;
    for (std::size_t r = 0; r < f.n; ++r) inv(r, c) = col[r];
  }
  return inv;
}

double determinant(const SquareMatrix& a) {
  try {
    return lu_det(lu_factor(a));
  } catch (const SingularMatrix&) {
    return 0.0;
  }
}

SquareMatrix inverse(const SquareMatrix& a) { return lu_inverse(lu_factor(a)); }

double wedge_bruteforce(std::span<const Covector> covectors, std::span<const Vector> vectors) {
  const std::size_t l = covectors.size();
  if (l != vectors.size()) throw DimensionMismatch("wedge_bruteforce: list lengths differ");
  if (l == 0) throw InvalidArgument("wedge_bruteforce: empty family");
  if (l > 8) throw InvalidArgument("wedge_bruteforce: l > 8 exceeds the cost guard");

  std::vector<double> pairing(l * l);
  for (std::size_t a = 0; a < l; ++a)
    for (std::size_t b = 0; b < l; ++b) pairing[a * l + b] = pair(covectors[a], vectors[b]);

  std::vector<std::size_t> sigma(l);
  std::iota(sigma.begin(), sigma.end(), std::size_t{0});
  double total = 0.0;
  do {
    // Sign from the inversion count.
    int inversions = 0;
    for (std::size_t i = 0; i < l; ++i)
      for (std::size_t j = i + 1; j < l; ++j) inversions += sigma[i] > sigma[j];
    double term = (inversions % 2 == 0) ? 1.0 : -1.0;
    for (std::size_t a = 0; a < l; ++a) term *= pairing[a * l + sigma[a]];
    total += term;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return total;
}

double cofactor_determinant(const SquareMatrix& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1.0;
  if (n == 1) return a(0, 0);
  double det = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    SquareMatrix minor(n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      std::size_t cc = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == c) continue;
        minor(i - 1, cc++) = a(i, j);
      }
    }
    const double sign = (c % 2 == 0) ? 1.0 : -1.0;
    det += sign * a(0, c) * cofactor_determinant(minor);
  }
  return det;
}

double hadamard_bound(const SquareMatrix& a) {
  double b = 1.0;
  for (std::size_t i = 0; i < a.size(); ++i) b *= norm2(a.row(i));
  return b;
}

bool passes_condition_screen(const SquareMatrix& a) {
  const double bound = hadamard_bound(a);
  if (bound == 0.0) return false;
  return std::abs(determinant(a)) > CONDITION_SCREEN * bound;
}

}  // namespace dyadic::oracle
