#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "dyadic/random.hpp"
#include "dyadic/tensor.hpp"

namespace dyadic::testing {

inline Vector e(std::size_t n, std::size_t j) { return Vector::basis(n, j); }
inline Covector eps(std::size_t n, std::size_t j) { return Covector::basis(n, j); }

inline Covector as_covector(const Vector& v) {
  return Covector(std::vector<double>(v.coords().begin(), v.coords().end()));
}

// |a - b| <= tol * max(1, |b|)
inline bool close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline std::vector<double> combine(double alpha, std::span<const double> x, double beta,
                                   std::span<const double> y) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = alpha * x[i] + beta * y[i];
  return out;
}

// Product of 2-norms: the natural magnitude of a wedge evaluation.
template <class A, class B>
double wedge_scale(const std::vector<A>& as, const std::vector<B>& bs) {
  double s = 1.0;
  for (const auto& a : as) s *= norm2(a.coords());
  for (const auto& b : bs) s *= norm2(b.coords());
  return std::max(1.0, s);
}

}  // namespace dyadic::testing
