#include "dyadic/random.hpp"

#include <string>

#include "dyadic/errors.hpp"

namespace dyadic {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Distribution parse_distribution(std::string_view name) {
  if (name == "normal") return Distribution::normal;
  if (name == "uniform") return Distribution::uniform;
  throw InvalidArgument("unknown distribution '" + std::string(name) + "'");
}

std::string_view to_string(Distribution d) {
  return d == Distribution::normal ? "normal" : "uniform";
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t dim, std::uint64_t rank,
                             std::uint64_t trial) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ dim);
  h = splitmix64(h ^ rank);
  return splitmix64(h ^ trial);
}

double Rng::draw() { return dist_ == Distribution::normal ? normal_(engine_) : uniform_(engine_); }

std::vector<double> Rng::draws(std::size_t count) {
  std::vector<double> out(count);
  for (double& x : out) x = draw();
  return out;
}

SquareMatrix Rng::symmetric(std::size_t n) {
  SquareMatrix m = matrix(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double avg = 0.5 * (m(i, j) + m(j, i));
      m(i, j) = avg;
      m(j, i) = avg;
    }
  return m;
}

DyadicPerturbation Rng::perturbation(std::size_t n, std::size_t k) {
  std::vector<Dyad> dyads;
  dyads.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    Vector v = vector(n);
    Covector p = covector(n);
    dyads.emplace_back(std::move(v), std::move(p));
  }
  return DyadicPerturbation(std::move(dyads));
}

}  // namespace dyadic
