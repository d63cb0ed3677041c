#include "dyadic/approx.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dyadic/errors.hpp"

namespace dyadic {

namespace {

// 1 + alpha_1 + ... + alpha_j for j = 0..m; alphas past the end count as 0.
std::vector<double> partial_sums_upto(std::span<const double> alphas, std::size_t m) {
  std::vector<double> s(m + 1);
  s[0] = 1.0;
  for (std::size_t j = 1; j <= m; ++j) s[j] = s[j - 1] + (j <= alphas.size() ? alphas[j - 1] : 0.0);
  return s;
}

void axpy(double coef, const SquareMatrix& x, SquareMatrix& y) {
  auto yd = y.data();
  auto xd = x.data();
  for (std::size_t i = 0; i < yd.size(); ++i) yd[i] += coef * xd[i];
}

std::vector<Operator> dyadic_powers(const Operator& binv, const PerturbedIdentity& a,
                                    const GramMatrix& g, std::size_t max_order) {
  const std::size_t n = binv.size();
  const std::size_t k = a.rank();
  const auto& us = a.vectors();
  const auto& ps = a.covectors();

  // coeff rows start as r_b = p_b o B^-1, then get multiplied by G.
  std::vector<double> coeff(k * n, 0.0);
  for (std::size_t b = 0; b < k; ++b)
    for (std::size_t r = 0; r < n; ++r) {
      const double pr = ps[b][r];
      if (pr == 0.0) continue;
      for (std::size_t c = 0; c < n; ++c) coeff[b * n + c] += pr * binv(r, c);
    }

  std::vector<Operator> powers;
  powers.reserve(max_order);
  std::vector<double> next(k * n);
  for (std::size_t i = 1; i <= max_order; ++i) {
    if (i > 1) {
      std::fill(next.begin(), next.end(), 0.0);
      for (std::size_t a_idx = 0; a_idx < k; ++a_idx)
        for (std::size_t b = 0; b < k; ++b) {
          const double gab = g(a_idx, b);
          if (gab == 0.0) continue;
          for (std::size_t c = 0; c < n; ++c) next[a_idx * n + c] += gab * coeff[b * n + c];
        }
      coeff.swap(next);
    }
    Operator p(n);
    for (std::size_t a_idx = 0; a_idx < k; ++a_idx) {
      const Vector& u = us[a_idx];
      for (std::size_t r = 0; r < n; ++r) {
        const double ur = u[r];
        if (ur == 0.0) continue;
        for (std::size_t c = 0; c < n; ++c) p(r, c) += ur * coeff[a_idx * n + c];
      }
    }
    powers.push_back(std::move(p));
  }
  return powers;
}

std::vector<Operator> dense_powers(const Operator& binv, const PerturbedIdentity& a,
                                   std::size_t max_order) {
  // B^-1 Q = sum_i u_i (x) p_i, materialized.
  const Operator m = perturbation_operator(a.dyads());
  std::vector<Operator> powers;
  powers.reserve(max_order);
  for (std::size_t i = 1; i <= max_order; ++i) {
    powers.push_back(multiply(m, i == 1 ? binv : powers.back()));
  }
  return powers;
}

}  // namespace

AlphaCoefficients make_alpha_coefficients(std::vector<double> alphas) {
  AlphaCoefficients ac;
  ac.partial_sums = partial_sums_upto(alphas, alphas.size());
  ac.alphas = std::move(alphas);
  return ac;
}

AlphaCoefficients alpha_coefficients(const GramMatrix& g, std::size_t n, Exec exec) {
  return make_alpha_coefficients(principal_minor_sums(g, std::min(n, g.size()), exec));
}

AlphaCoefficients alpha_coefficients_charpoly(const GramMatrix& g, std::size_t n) {
  const std::size_t k = g.size();
  const SquareMatrix& gm = g.entries();
  // Faddeev-LeVerrier for det(tI - G) = sum_j c_j t^(k-j).
  std::vector<double> c(k + 1, 0.0);
  c[0] = 1.0;
  SquareMatrix mk(k);  // M_0 = 0
  for (std::size_t j = 1; j <= k; ++j) {
    SquareMatrix next = multiply(gm, mk);
    for (std::size_t i = 0; i < k; ++i) next(i, i) += c[j - 1];
    mk = std::move(next);
    const SquareMatrix gmk = multiply(gm, mk);
    double tr = 0.0;
    for (std::size_t i = 0; i < k; ++i) tr += gmk(i, i);
    c[j] = -tr / static_cast<double>(j);
  }
  const std::size_t cap = std::min(n, k);
  std::vector<double> alphas(cap);
  for (std::size_t j = 1; j <= cap; ++j) alphas[j - 1] = (j % 2 == 0) ? c[j] : -c[j];
  return make_alpha_coefficients(std::move(alphas));
}

double truncated_det(const AlphaCoefficients& ac, std::size_t m) {
  return ac.partial_sums[std::min(m, ac.order_cap())];
}

TruncationFamily::TruncationFamily(const Operator& b, const DyadicPerturbation& q,
                                   std::size_t max_order, PowerPath path, Exec exec)
    : TruncationFamily(lift_through_base(b, q), max_order, path, exec) {}

TruncationFamily::TruncationFamily(BaseLift lift, std::size_t max_order, PowerPath path, Exec exec)
    : b_inverse_(std::move(lift.b_inverse)),
      a_(std::move(lift.a)),
      gram_(a_.gram()),
      alphas_(alpha_coefficients(gram_, a_.dim(), exec)) {
  powers_ = path == PowerPath::dyadic ? dyadic_powers(b_inverse_, a_, gram_, max_order)
                                      : dense_powers(b_inverse_, a_, max_order);
}

// Orders past K add terms that cancel only in exact arithmetic.
Operator TruncationFamily::approx(std::size_t m) const {
  return approx_with_alphas(std::min(m, alphas_.order_cap()), alphas_.alphas);
}

Operator TruncationFamily::approx_with_alphas(std::size_t m, std::span<const double> alphas) const {
  if (m > max_order()) throw InvalidArgument("order exceeds the precomputed maximum");
  const auto s = partial_sums_upto(alphas, m);
  const double det_m = s[m];
  if (within_singularity_guard(det_m, alphas.first(std::min(m, alphas.size())))) {
    throw TruncatedDetSingular("det_" + std::to_string(m) + " A = " + std::to_string(det_m) +
                               " is within the singularity guard");
  }
  SquareMatrix sum(dim());
  for (std::size_t i = 1; i <= m; ++i) {
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    axpy(sign * s[m - i], powers_[i - 1], sum);
  }
  SquareMatrix out = b_inverse_;
  axpy(1.0 / det_m, sum, out);
  return out;
}

Operator TruncationFamily::taylor(std::size_t m) const {
  if (m > max_order()) throw InvalidArgument("order exceeds the precomputed maximum");
  SquareMatrix sum(dim());
  for (std::size_t i = 1; i <= m; ++i) {
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    axpy(sign, powers_[i - 1], sum);
  }
  SquareMatrix out = b_inverse_;
  axpy(1.0, sum, out);
  return out;
}

Operator TruncationFamily::osquare_truncated(std::size_t m, Exec exec) const {
  const double det_m = truncated_det(alphas_, m);
  const auto used = std::span<const double>(alphas_.alphas).first(std::min(m, alphas_.order_cap()));
  if (within_singularity_guard(det_m, used)) {
    throw TruncatedDetSingular("det_" + std::to_string(m) + " A = " + std::to_string(det_m) +
                               " is within the singularity guard");
  }
  const Operator adj = truncated_adjugate(a_, m, exec);
  return scale(multiply(adj, b_inverse_), 1.0 / det_m);
}

Operator approx_inverse(const Operator& b, const DyadicPerturbation& q, std::size_t m, PowerPath path) {
  return TruncationFamily(b, q, m, path).approx(m);
}

Operator taylor_inverse(const Operator& b, const DyadicPerturbation& q, std::size_t m, PowerPath path) {
  return TruncationFamily(b, q, m, path).taylor(m);
}

Operator osquare_truncated_inverse(const Operator& b, const DyadicPerturbation& q, std::size_t m,
                                   Exec exec) {
  return TruncationFamily(b, q, 0, PowerPath::dyadic, exec).osquare_truncated(m, exec);
}

ApproxReport approx_report(const TruncationFamily& family, std::size_t m, const Operator& exact) {
  ApproxReport r;
  r.order = m;
  r.det_m = truncated_det(family.alphas(), m);
  r.approx_inverse = family.approx(m);
  r.taylor_inverse = family.taylor(m);
  r.approx_error = relative_frobenius_error(r.approx_inverse, exact);
  r.taylor_error = relative_frobenius_error(r.taylor_inverse, exact);
  return r;
}

}  // namespace dyadic
