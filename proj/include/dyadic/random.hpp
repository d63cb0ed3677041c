#pragma once

// Random problem ensembles.  Every trial owns a substream keyed by
// (seed, dim, rank, trial) so results do not depend on evaluation order.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "dyadic/tensor.hpp"

namespace dyadic {

enum class Distribution { normal, uniform };

// "normal" or "uniform"; throws InvalidArgument otherwise.
Distribution parse_distribution(std::string_view name);
std::string_view to_string(Distribution d);

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t dim, std::uint64_t rank,
                             std::uint64_t trial);

// i.i.d. entries: standard normal, or uniform on [-1, 1).
class Rng {
 public:
  explicit Rng(std::uint64_t seed, Distribution dist = Distribution::normal)
      : engine_(seed), dist_(dist) {}

  double draw();
  std::vector<double> draws(std::size_t count);

  Vector vector(std::size_t n) { return Vector(draws(n)); }
  Covector covector(std::size_t n) { return Covector(draws(n)); }
  SquareMatrix matrix(std::size_t n) { return SquareMatrix(n, draws(n * n)); }
  // (X + X^T) / 2.
  SquareMatrix symmetric(std::size_t n);
  DyadicPerturbation perturbation(std::size_t n, std::size_t k);

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
  Distribution dist_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{-1.0, 1.0};
};

}  // namespace dyadic
