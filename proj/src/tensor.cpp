#include "dyadic/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "dyadic/errors.hpp"

namespace dyadic {

namespace {

void require_finite(std::span<const double> xs, const char* what) {
  for (double x : xs) {
    if (!std::isfinite(x)) throw InvalidArgument(std::string(what) + ": non-finite entry");
  }
}

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionMismatch(std::string(what) + ": dimension " + std::to_string(a) + " vs " +
                            std::to_string(b));
  }
}

}  // namespace

namespace detail {

template <class Tag>
Coords<Tag>::Coords(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2) throw InvalidArgument("space dimension must be at least 2");
  require_finite(coords_, "coordinates");
}

template <class Tag>
Coords<Tag> Coords<Tag>::basis(std::size_t n, std::size_t j) {
  std::vector<double> c(n, 0.0);
  if (j >= n) throw InvalidArgument("basis index out of range");
  c[j] = 1.0;
  return Coords(std::move(c));
}

template class Coords<VectorTag>;
template class Coords<CovectorTag>;

}  // namespace detail

// ---- SquareMatrix ---------------------------------------------------------

SquareMatrix::SquareMatrix(std::size_t n, std::vector<double> row_major)
    : n_(n), data_(std::move(row_major)) {
  if (data_.size() != n * n) throw DimensionMismatch("matrix data is not n*n");
  require_finite(data_, "matrix");
}

SquareMatrix SquareMatrix::identity(std::size_t n) {
  SquareMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

SquareMatrix SquareMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  std::vector<double> data;
  data.reserve(n * n);
  for (const auto& r : rows) {
    if (r.size() != n) throw DimensionMismatch("matrix is not square");
    data.insert(data.end(), r.begin(), r.end());
  }
  return SquareMatrix(n, std::move(data));
}

SquareMatrix SquareMatrix::diagonal(std::span<const double> diag) {
  SquareMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  require_finite(m.data(), "matrix");
  return m;
}

std::vector<std::vector<double>> SquareMatrix::rows() const {
  std::vector<std::vector<double>> out(n_);
  for (std::size_t r = 0; r < n_; ++r) out[r].assign(row(r).begin(), row(r).end());
  return out;
}

// ---- dyads ----------------------------------------------------------------

Dyad::Dyad(Vector v, Covector p) : vector(std::move(v)), covector(std::move(p)) {
  require_same_dim(vector.dim(), covector.dim(), "dyad");
}

DyadicPerturbation::DyadicPerturbation(std::vector<Dyad> dyads) : dyads_(std::move(dyads)) {
  if (dyads_.empty()) throw InvalidArgument("a perturbation needs at least one dyad");
  dim_ = dyads_.front().vector.dim();
  for (const auto& d : dyads_) require_same_dim(d.vector.dim(), dim_, "perturbation");
}

std::vector<Vector> DyadicPerturbation::vectors() const {
  std::vector<Vector> out;
  out.reserve(dyads_.size());
  for (const auto& d : dyads_) out.push_back(d.vector);
  return out;
}

std::vector<Covector> DyadicPerturbation::covectors() const {
  std::vector<Covector> out;
  out.reserve(dyads_.size());
  for (const auto& d : dyads_) out.push_back(d.covector);
  return out;
}

double pair(const Covector& p, const Vector& v) {
  require_same_dim(p.dim(), v.dim(), "pair");
  double s = 0.0;
  for (std::size_t j = 0; j < p.dim(); ++j) s += p[j] * v[j];
  return s;
}

Operator dyad_to_operator(const Dyad& d) {
  const std::size_t n = d.vector.dim();
  Operator m(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) m(a, b) = d.vector[a] * d.covector[b];
  return m;
}

Operator perturbation_operator(const DyadicPerturbation& q) {
  Operator m(q.dim());
  for (const auto& d : q.dyads()) {
    for (std::size_t a = 0; a < q.dim(); ++a)
      for (std::size_t b = 0; b < q.dim(); ++b) m(a, b) += d.vector[a] * d.covector[b];
  }
  return m;
}

GramMatrix gram(std::span<const Covector> covectors, std::span<const Vector> vectors) {
  if (covectors.size() != vectors.size()) {
    throw DimensionMismatch("gram: " + std::to_string(covectors.size()) + " covectors vs " +
                            std::to_string(vectors.size()) + " vectors");
  }
  const std::size_t k = covectors.size();
  SquareMatrix g(k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) g(a, b) = pair(covectors[a], vectors[b]);
  return GramMatrix(std::move(g));
}

GramMatrix gram(const DyadicPerturbation& dyads, std::span<const Vector> base_images) {
  for (const auto& u : base_images) require_same_dim(u.dim(), dyads.dim(), "gram");
  const auto ps = dyads.covectors();
  return gram(ps, base_images);
}

double wedge_eval(std::span<const Covector> covectors, std::span<const Vector> vectors) {
  const std::size_t l = covectors.size();
  if (l != vectors.size()) throw DimensionMismatch("wedge_eval: list lengths differ");
  if (l == 0) throw InvalidArgument("wedge_eval: empty family");
  const std::size_t n = covectors.front().dim();
  for (const auto& p : covectors) require_same_dim(p.dim(), n, "wedge_eval");
  for (const auto& v : vectors) require_same_dim(v.dim(), n, "wedge_eval");
  // Any l-fold wedge of covectors on an n-dimensional space vanishes for l > n.
  if (l > n) return 0.0;

  std::vector<double> m(l * l);
  for (std::size_t a = 0; a < l; ++a)
    for (std::size_t b = 0; b < l; ++b) m[a * l + b] = pair(covectors[a], vectors[b]);
  return small_determinant(m, l);
}

// ---- dense helpers --------------------------------------------------------

Vector apply(const SquareMatrix& m, const Vector& v) {
  require_same_dim(m.size(), v.dim(), "apply");
  std::vector<double> out(m.size(), 0.0);
  for (std::size_t r = 0; r < m.size(); ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < m.size(); ++c) s += m(r, c) * v[c];
    out[r] = s;
  }
  return Vector(std::move(out));
}

SquareMatrix multiply(const SquareMatrix& a, const SquareMatrix& b) {
  require_same_dim(a.size(), b.size(), "multiply");
  const std::size_t n = a.size();
  SquareMatrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t l = 0; l < n; ++l) {
      const double a_il = a(i, l);
      for (std::size_t j = 0; j < n; ++j) c(i, j) += a_il * b(l, j);
    }
  }
  return c;
}

SquareMatrix add(const SquareMatrix& a, const SquareMatrix& b) {
  require_same_dim(a.size(), b.size(), "add");
  SquareMatrix c = a;
  auto cd = c.data();
  auto bd = b.data();
  for (std::size_t i = 0; i < cd.size(); ++i) cd[i] += bd[i];
  return c;
}

SquareMatrix subtract(const SquareMatrix& a, const SquareMatrix& b) {
  require_same_dim(a.size(), b.size(), "subtract");
  SquareMatrix c = a;
  auto cd = c.data();
  auto bd = b.data();
  for (std::size_t i = 0; i < cd.size(); ++i) cd[i] -= bd[i];
  return c;
}

SquareMatrix scale(const SquareMatrix& a, double s) {
  SquareMatrix c = a;
  for (double& x : c.data()) x *= s;
  return c;
}

SquareMatrix transpose(const SquareMatrix& a) {
  SquareMatrix t(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) t(j, i) = a(i, j);
  return t;
}

double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double frobenius_norm(const SquareMatrix& a) { return norm2(a.data()); }

double max_abs(const SquareMatrix& a) {
  double m = 0.0;
  for (double x : a.data()) m = std::max(m, std::abs(x));
  return m;
}

double relative_frobenius_error(const SquareMatrix& a, const SquareMatrix& b) {
  const double diff = frobenius_norm(subtract(a, b));
  const double ref = frobenius_norm(b);
  return ref > 0.0 ? diff / ref : diff;
}

double small_determinant(std::span<double> m, std::size_t l) {
  switch (l) {
    case 1:
      return m[0];
    case 2:
      return m[0] * m[3] - m[1] * m[2];
    case 3:
      return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
             m[2] * (m[3] * m[7] - m[4] * m[6]);
    default:
      break;
  }
  double det = 1.0;
  for (std::size_t c = 0; c < l; ++c) {
    std::size_t piv = c;
    double best = std::abs(m[c * l + c]);
    for (std::size_t r = c + 1; r < l; ++r) {
      const double v = std::abs(m[r * l + c]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0.0) return 0.0;
    if (piv != c) {
      std::swap_ranges(m.begin() + c * l, m.begin() + (c + 1) * l, m.begin() + piv * l);
      det = -det;
    }
    const double pivot = m[c * l + c];
    det *= pivot;
    for (std::size_t r = c + 1; r < l; ++r) {
      const double f = m[r * l + c] / pivot;
      if (f == 0.0) continue;
      for (std::size_t j = c + 1; j < l; ++j) m[r * l + j] -= f * m[c * l + j];
    }
  }
  return det;
}

// ---- DenseLu --------------------------------------------------------------

DenseLu::DenseLu(const SquareMatrix& a)
    : n_(a.size()), lu_(a.data().begin(), a.data().end()), perm_(a.size()) {
  for (std::size_t i = 0; i < n_; ++i) perm_[i] = i;
  std::vector<double> row_scale(n_, 0.0);
  for (std::size_t r = 0; r < n_; ++r)
    for (std::size_t c = 0; c < n_; ++c) row_scale[r] = std::max(row_scale[r], std::abs(lu_[r * n_ + c]));

  for (std::size_t c = 0; c < n_; ++c) {
    std::size_t piv = c;
    double best = std::abs(lu_[c * n_ + c]);
    for (std::size_t r = c + 1; r < n_; ++r) {
      const double v = std::abs(lu_[r * n_ + c]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best <= 1e-14 * row_scale[perm_[piv]] || best == 0.0) {
      throw SingularMatrix("LU: pivot " + std::to_string(c) + " vanishes");
    }
    if (piv != c) {
      std::swap_ranges(lu_.begin() + c * n_, lu_.begin() + (c + 1) * n_, lu_.begin() + piv * n_);
      std::swap(perm_[c], perm_[piv]);
      sign_ = -sign_;
    }
    const double pivot = lu_[c * n_ + c];
    for (std::size_t r = c + 1; r < n_; ++r) {
      const double f = lu_[r * n_ + c] / pivot;
      lu_[r * n_ + c] = f;
      for (std::size_t j = c + 1; j < n_; ++j) lu_[r * n_ + j] -= f * lu_[c * n_ + j];
    }
  }
}

double DenseLu::determinant() const {
  double d = sign_;
  for (std::size_t i = 0; i < n_; ++i) d *= lu_[i * n_ + i];
  return d;
}

std::vector<double> DenseLu::solve(std::span<const double> b) const {
  require_same_dim(b.size(), n_, "solve");
  std::vector<double> x(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    double s = b[perm_[i]];
    for (std::size_t j = 0; j < i; ++j) s -= lu_[i * n_ + j] * x[j];
    x[i] = s;
  }
  for (std::size_t i = n_; i-- > 0;) {
    double s = x[i];
    for (std::size_t j = i + 1; j < n_; ++j) s -= lu_[i * n_ + j] * x[j];
    x[i] = s / lu_[i * n_ + i];
  }
  return x;
}

SquareMatrix DenseLu::inverse() const {
  SquareMatrix inv(n_);
  std::vector<double> e(n_, 0.0);
  for (std::size_t c = 0; c < n_; ++c) {
    e[c] = 1.0;
    const auto col = solve(e);
    for (std::size_t r = 0; r < n_; ++r) inv(r, c) = col[r];
    e[c] = 0.0;
  }
  return inv;
}

}  // namespace dyadic
