#pragma once

// Coordinate representations of V, V*, and linear maps V -> V.
//
// All objects are basis-dependent coordinate arrays standing in for
// basis-free objects: a Vector holds coordinates in a fixed basis e_j of V,
// a Covector holds coordinates in the dual basis, and an Operator holds the
// matrix of a map V -> V in that basis.  Every formula in the library is
// basis-covariant, so results represent the same abstract operators
// whichever basis the caller chose.
//
// Finiteness is validated at construction; operations assume it.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace dyadic {

namespace detail {

// Shared storage for Vector/Covector.  Tag keeps the two types distinct.
template <class Tag>
class Coords {
 public:
  Coords() = default;
  explicit Coords(std::vector<double> coords);
  Coords(std::initializer_list<double> coords) : Coords(std::vector<double>(coords)) {}

  static Coords zero(std::size_t n) { return Coords(std::vector<double>(n, 0.0)); }
  static Coords basis(std::size_t n, std::size_t j);

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t j) const { return coords_[j]; }
  std::span<const double> coords() const noexcept { return coords_; }

  friend bool operator==(const Coords&, const Coords&) = default;

 private:
  std::vector<double> coords_;
};

struct VectorTag {};
struct CovectorTag {};

}  // namespace detail

// Element of V (n >= 2).
using Vector = detail::Coords<detail::VectorTag>;
// Element of V*, coordinates in the dual basis.
using Covector = detail::Coords<detail::CovectorTag>;

// Dense square matrix, row-major.  Used for operators V -> V and for the
// k x k pairing (Gram) matrices.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  // Zero matrix of size n.
  explicit SquareMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}
  SquareMatrix(std::size_t n, std::vector<double> row_major);

  static SquareMatrix identity(std::size_t n);
  static SquareMatrix from_rows(const std::vector<std::vector<double>>& rows);
  static SquareMatrix diagonal(std::span<const double> diag);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * n_, n_}; }

  std::vector<std::vector<double>> rows() const;

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

using Operator = SquareMatrix;

struct Dyad {
  Vector vector;
  Covector covector;

  Dyad(Vector v, Covector p);
};

// Q = sum_i v_i (x) p_i.  k may exceed n.
class DyadicPerturbation {
 public:
  explicit DyadicPerturbation(std::vector<Dyad> dyads);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t rank() const noexcept { return dyads_.size(); }
  const std::vector<Dyad>& dyads() const noexcept { return dyads_; }
  const Dyad& operator[](std::size_t i) const { return dyads_[i]; }

  std::vector<Vector> vectors() const;
  std::vector<Covector> covectors() const;

 private:
  std::vector<Dyad> dyads_;
  std::size_t dim_ = 0;
};

// G[a][b] = p_a(u_b): row indexes covectors, column indexes vectors.
class GramMatrix {
 public:
  explicit GramMatrix(SquareMatrix entries) : entries_(std::move(entries)) {}

  std::size_t size() const noexcept { return entries_.size(); }
  double operator()(std::size_t a, std::size_t b) const { return entries_(a, b); }
  const SquareMatrix& entries() const noexcept { return entries_; }

 private:
  SquareMatrix entries_;
};

// Canonical pairing p(v).
double pair(const Covector& p, const Vector& v);

// Rank-one matrix v (x) p with entries v[a] * p[b].
Operator dyad_to_operator(const Dyad& d);

// Materialized sum of dyads.
Operator perturbation_operator(const DyadicPerturbation& q);

GramMatrix gram(const DyadicPerturbation& dyads, std::span<const Vector> base_images);
GramMatrix gram(std::span<const Covector> covectors, std::span<const Vector> vectors);

// (p_1 ^ ... ^ p_l)(v_1, ..., v_l) = det[p_a(v_b)]; exactly 0 when l > n.
double wedge_eval(std::span<const Covector> covectors, std::span<const Vector> vectors);

// ---- dense helpers -------------------------------------------------------

Vector apply(const SquareMatrix& m, const Vector& v);
SquareMatrix multiply(const SquareMatrix& a, const SquareMatrix& b);
SquareMatrix add(const SquareMatrix& a, const SquareMatrix& b);
SquareMatrix subtract(const SquareMatrix& a, const SquareMatrix& b);
SquareMatrix scale(const SquareMatrix& a, double s);
SquareMatrix transpose(const SquareMatrix& a);

double frobenius_norm(const SquareMatrix& a);
double max_abs(const SquareMatrix& a);
double norm2(std::span<const double> x);
// ||a - b||_F / ||b||_F (absolute distance when b is zero).
double relative_frobenius_error(const SquareMatrix& a, const SquareMatrix& b);

// Determinant of an l x l row-major matrix; closed forms for l <= 3, partial
// pivoting LU otherwise.  Overwrites `scratch`.
double small_determinant(std::span<double> scratch, std::size_t l);

// Partial-pivoting LU kept with the tensor primitives.  Used to apply B^-1
// and g^-1; the verification oracle has its own independent factorization.
class DenseLu {
 public:
  // Throws SingularMatrix when a pivot falls below 1e-14 times its row scale.
  explicit DenseLu(const SquareMatrix& a);

  std::size_t size() const noexcept { return n_; }
  double determinant() const;
  std::vector<double> solve(std::span<const double> b) const;
  SquareMatrix inverse() const;

 private:
  std::size_t n_;
  std::vector<double> lu_;
  std::vector<std::size_t> perm_;
  int sign_ = 1;
};

}  // namespace dyadic
