#include "dyadic/exact.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "dyadic/errors.hpp"
#include "dyadic/subsets.hpp"

namespace dyadic {

namespace {

// Shared core of osquare_apply / osquare_operator.  `pairing` is the l x l
// matrix p_a(z_b); `pv` holds p_a(v).  Adds the result into `out`.
void osquare_accumulate(std::span<const double> pairing, std::size_t l,
                        std::span<const Vector* const> zs, std::span<const double> pv,
                        std::span<const double> v, std::span<double> out,
                        std::vector<double>& scratch) {
  scratch.assign(pairing.begin(), pairing.end());
  const double base = small_determinant(scratch, l);
  for (std::size_t r = 0; r < out.size(); ++r) out[r] += base * v[r];
  for (std::size_t i = 0; i < l; ++i) {
    scratch.assign(pairing.begin(), pairing.end());
    for (std::size_t a = 0; a < l; ++a) scratch[a * l + i] = pv[a];
    const double c = small_determinant(scratch, l);
    if (c == 0.0) continue;
    const Vector& z = *zs[i];
    for (std::size_t r = 0; r < out.size(); ++r) out[r] -= c * z[r];
  }
}

// Column-by-column osquare operator from precomputed pairings, accumulated
// into `acc` (row-major n x n).
void osquare_operator_into(std::span<const double> pairing, std::size_t l,
                           std::span<const Vector* const> zs, std::span<const Covector* const> ps,
                           std::size_t n, SquareMatrix& acc) {
  std::vector<double> scratch;
  std::vector<double> pv(l);
  std::vector<double> e(n, 0.0);
  std::vector<double> column(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t a = 0; a < l; ++a) pv[a] = (*ps[a])[j];
    e[j] = 1.0;
    std::fill(column.begin(), column.end(), 0.0);
    osquare_accumulate(pairing, l, zs, pv, e, column, scratch);
    e[j] = 0.0;
    for (std::size_t r = 0; r < n; ++r) acc(r, j) += column[r];
  }
}

std::size_t check_osquare_family(std::span<const Vector> zs, std::span<const Covector> ps) {
  if (zs.size() != ps.size()) throw DimensionMismatch("osquare: zs and ps differ in length");
  if (zs.empty()) throw InvalidArgument("osquare: empty family");
  const std::size_t n = zs.front().dim();
  for (const auto& z : zs)
    if (z.dim() != n) throw DimensionMismatch("osquare: vector dimension differs");
  for (const auto& p : ps)
    if (p.dim() != n) throw DimensionMismatch("osquare: covector dimension differs");
  if (zs.size() >= n) {
    throw InvalidArgument("osquare: family size " + std::to_string(zs.size()) +
                          " must be at most n-1 = " + std::to_string(n - 1));
  }
  return n;
}

template <class T>
std::vector<const T*> pointers(std::span<const T> xs) {
  std::vector<const T*> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(&x);
  return out;
}

std::vector<double> pairing_matrix(std::span<const Covector> ps, std::span<const Vector> zs) {
  const std::size_t l = ps.size();
  std::vector<double> m(l * l);
  for (std::size_t a = 0; a < l; ++a)
    for (std::size_t b = 0; b < l; ++b) m[a * l + b] = pair(ps[a], zs[b]);
  return m;
}

}  // namespace

PerturbedIdentity::PerturbedIdentity(DyadicPerturbation dyads)
    : dyads_(std::move(dyads)), us_(dyads_.vectors()), ps_(dyads_.covectors()) {}

GramMatrix PerturbedIdentity::gram() const { return dyadic::gram(ps_, us_); }

Operator PerturbedIdentity::materialize() const {
  return add(SquareMatrix::identity(dim()), perturbation_operator(dyads_));
}

Vector osquare_apply(std::span<const Vector> zs, std::span<const Covector> ps, const Vector& v) {
  const std::size_t n = check_osquare_family(zs, ps);
  if (v.dim() != n) throw DimensionMismatch("osquare_apply: argument dimension differs");
  const std::size_t l = zs.size();
  const auto pairing = pairing_matrix(ps, zs);
  std::vector<double> pv(l);
  for (std::size_t a = 0; a < l; ++a) pv[a] = pair(ps[a], v);
  const auto zp = pointers(zs);
  std::vector<double> out(n, 0.0);
  std::vector<double> scratch;
  osquare_accumulate(pairing, l, zp, pv, v.coords(), out, scratch);
  return Vector(std::move(out));
}

Operator osquare_operator(std::span<const Vector> zs, std::span<const Covector> ps) {
  const std::size_t n = check_osquare_family(zs, ps);
  const auto pairing = pairing_matrix(ps, zs);
  Operator out(n);
  osquare_operator_into(pairing, zs.size(), pointers(zs), pointers(ps), n, out);
  return out;
}

std::vector<double> principal_minor_sums(const GramMatrix& g, std::size_t max_size, Exec exec) {
  const std::size_t k = g.size();
  const SubsetList subsets(k, max_size);
  const auto minors = map_indices(subsets.count(), exec, [&](std::size_t s) {
    const auto idx = subsets[s];
    const std::size_t l = idx.size();
    std::vector<double> m(l * l);
    for (std::size_t a = 0; a < l; ++a)
      for (std::size_t b = 0; b < l; ++b) m[a * l + b] = g(idx[a], idx[b]);
    return small_determinant(m, l);
  });

  std::vector<double> sums(std::min(max_size, k), 0.0);
  for (std::size_t s = 0; s < subsets.count(); ++s) sums[subsets[s].size() - 1] += minors[s];
  return sums;
}

double det_perturbed_identity(const PerturbedIdentity& a, Exec exec) {
  const auto alphas = principal_minor_sums(a.gram(), std::min(a.dim(), a.rank()), exec);
  double det = 1.0;
  for (double alpha : alphas) det += alpha;
  return det;
}

Operator truncated_adjugate(const PerturbedIdentity& a, std::size_t max_size, Exec exec) {
  const std::size_t n = a.dim();
  const std::size_t cap = std::min({max_size, n - 1, a.rank()});
  const GramMatrix g = a.gram();
  const auto& us = a.vectors();
  const auto& ps = a.covectors();
  const SubsetList subsets(a.rank(), cap);

  const auto terms = map_indices(subsets.count(), exec, [&](std::size_t s) {
    const auto idx = subsets[s];
    const std::size_t l = idx.size();
    std::vector<double> pairing(l * l);
    std::vector<const Vector*> zs(l);
    std::vector<const Covector*> qs(l);
    for (std::size_t i = 0; i < l; ++i) {
      zs[i] = &us[idx[i]];
      qs[i] = &ps[idx[i]];
      for (std::size_t b = 0; b < l; ++b) pairing[i * l + b] = g(idx[i], idx[b]);
    }
    Operator term(n);
    osquare_operator_into(pairing, l, zs, qs, n, term);
    return term;
  });

  Operator adj = SquareMatrix::identity(n);
  for (const auto& t : terms) {
    auto dst = adj.data();
    auto src = t.data();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
  }
  return adj;
}

bool within_singularity_guard(double det, std::span<const double> alphas) {
  double scale = 1.0;
  for (double alpha : alphas) scale += std::abs(alpha);
  return std::abs(det) <= 1e-12 * scale;
}

ExactInverseResult inverse_perturbed_identity(const PerturbedIdentity& a, Exec exec) {
  const auto alphas = principal_minor_sums(a.gram(), std::min(a.dim(), a.rank()), exec);
  double det = 1.0;
  for (double alpha : alphas) det += alpha;
  if (within_singularity_guard(det, alphas)) {
    throw SingularPerturbation("det A = " + std::to_string(det) + " is within the singularity guard");
  }
  ExactInverseResult r;
  r.det_a = det;
  r.adjugate_like = truncated_adjugate(a, a.rank(), exec);
  r.inverse = scale(r.adjugate_like, 1.0 / det);
  return r;
}

double pairing_form_inverse(const PerturbedIdentity& a, const Vector& x, const Covector& q) {
  const std::size_t n = a.dim();
  if (x.dim() != n || q.dim() != n) throw DimensionMismatch("pairing_form_inverse: dimension differs");
  const SubsetList subsets(a.rank(), std::min(n - 1, a.rank()));
  double total = pair(q, x);
  std::vector<Covector> cs;
  std::vector<Vector> vs;
  for (std::size_t s = 0; s < subsets.count(); ++s) {
    cs.assign(1, q);
    vs.assign(1, x);
    for (std::size_t j : subsets[s]) {
      cs.push_back(a.covectors()[j]);
      vs.push_back(a.vectors()[j]);
    }
    total += wedge_eval(cs, vs);
  }
  return total;
}

BaseLift lift_through_base(const Operator& b, const DyadicPerturbation& q) {
  if (b.size() != q.dim()) throw DimensionMismatch("base operator and perturbation differ in dimension");
  std::optional<DenseLu> lu;
  try {
    lu.emplace(b);
  } catch (const SingularMatrix& e) {
    throw SingularBase(std::string("B is singular: ") + e.what());
  }
  std::vector<Dyad> lifted;
  lifted.reserve(q.rank());
  for (const auto& d : q.dyads()) lifted.emplace_back(Vector(lu->solve(d.vector.coords())), d.covector);
  return BaseLift{lu->inverse(), PerturbedIdentity(DyadicPerturbation(std::move(lifted)))};
}

Operator perturbed_inverse_exact(const Operator& b, const DyadicPerturbation& q, Exec exec) {
  const BaseLift lift = lift_through_base(b, q);
  const auto exact = inverse_perturbed_identity(lift.a, exec);
  return multiply(exact.inverse, lift.b_inverse);
}

}  // namespace dyadic
