#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "dyadic/errors.hpp"
#include "dyadic/exact.hpp"
#include "dyadic/oracle.hpp"
#include "support/helpers.hpp"

using namespace dyadic;
using namespace dyadic::testing;

namespace {

struct Family {
  std::vector<Vector> zs;
  std::vector<Covector> ps;
};

Family random_family(Rng& rng, std::size_t n, std::size_t l) {
  Family f;
  for (std::size_t i = 0; i < l; ++i) {
    f.zs.push_back(rng.vector(n));
    f.ps.push_back(rng.covector(n));
  }
  return f;
}

// Parity of a permutation by cycle decomposition.
int permutation_sign(const std::vector<std::size_t>& perm) {
  std::vector<bool> seen(perm.size(), false);
  int sign = 1;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = perm[j]) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

PerturbedIdentity random_identity_problem(Rng& rng, std::size_t n, std::size_t k) {
  return PerturbedIdentity(rng.perturbation(n, k));
}

}  // namespace

TEST_CASE("osquare_apply with one pair") {
  const std::vector zs{e(2, 0)};
  const std::vector ps{eps(2, 0)};
  CHECK(osquare_apply(zs, ps, e(2, 0)) == Vector::zero(2));
  CHECK(osquare_apply(zs, ps, e(2, 1)) == e(2, 1));

  // One pair: p(z) v - p(v) z, expanded from the 2x2 determinant (q ^ p)(v, z).
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + trial % 6;
    const auto z = rng.vector(n), v = rng.vector(n);
    const auto p = rng.covector(n);
    const auto got = osquare_apply(std::vector{z}, std::vector{p}, v);
    const auto expected = combine(pair(p, z), v.coords(), -pair(p, v), z.coords());
    CHECK(max_abs_diff(got.coords(), expected) <= 1e-12 * wedge_scale(std::vector{p}, std::vector{z, v}));
  }
}

TEST_CASE("osquare_apply satisfies its defining pairing identity for two pairs") {
  Rng rng(32);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = random_family(rng, 4, 2);
    const auto v = rng.vector(4);
    const auto q = rng.covector(4);
    const double lhs = pair(q, osquare_apply(f.zs, f.ps, v));
    const std::vector cs{q, f.ps[0], f.ps[1]};
    const std::vector vs{v, f.zs[0], f.zs[1]};
    CHECK(std::abs(lhs - wedge_eval(cs, vs)) <= 1e-11 * wedge_scale(cs, vs));
  }
}

TEST_CASE("osquare family size limits") {
  Rng rng(33);
  const auto f = random_family(rng, 3, 3);
  CHECK_THROWS_AS(osquare_operator(f.zs, f.ps), InvalidArgument);
  CHECK_THROWS_AS(osquare_operator(std::vector<Vector>{}, std::vector<Covector>{}), InvalidArgument);
  CHECK_THROWS_AS(osquare_apply(std::span(f.zs).first(2), std::span(f.ps).first(1), f.zs[0]), DimensionMismatch);
  CHECK_THROWS_AS(osquare_apply(std::span(f.zs).first(1), std::span(f.ps).first(1), e(4, 0)), DimensionMismatch);
}

TEST_CASE("osquare_operator fixed values") {
  CHECK(osquare_operator(std::vector{e(2, 0)}, std::vector{eps(2, 0)}) == SquareMatrix::from_rows({{0, 0}, {0, 1}}));

  Rng rng(34);
  const auto z1 = rng.vector(5);
  const std::vector zs{z1, Vector(combine(2.0, z1.coords(), 0.0, z1.coords()))};
  const std::vector ps{rng.covector(5), rng.covector(5)};
  CHECK(max_abs(osquare_operator(zs, ps)) <= 1e-12 * wedge_scale(ps, zs));
}

TEST_CASE("osquare_operator columns are osquare_apply on basis vectors") {
  Rng rng(35);
  const auto f = random_family(rng, 6, 3);
  const auto op = osquare_operator(f.zs, f.ps);
  for (std::size_t j = 0; j < 6; ++j) {
    const auto col = osquare_apply(f.zs, f.ps, e(6, j));
    for (std::size_t r = 0; r < 6; ++r) CHECK(op(r, j) == col[r]);
  }
}

TEST_CASE("osquare properties over random families") {
  Rng rng(36);
  std::mt19937_64 shuffle(37);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 2 + trial % 7;
    const std::size_t l = 1 + trial % (n - 1);
    const auto f = random_family(rng, n, l);
    const double mag = wedge_scale(f.ps, f.zs);

    // defining identity
    const auto v = rng.vector(n);
    const auto q = rng.covector(n);
    std::vector<Covector> cs{q};
    std::vector<Vector> vs{v};
    cs.insert(cs.end(), f.ps.begin(), f.ps.end());
    vs.insert(vs.end(), f.zs.begin(), f.zs.end());
    CHECK(std::abs(pair(q, osquare_apply(f.zs, f.ps, v)) - wedge_eval(cs, vs)) <= 1e-11 * wedge_scale(cs, vs));

    // permutation sign
    const auto op = osquare_operator(f.zs, f.ps);
    std::vector<std::size_t> pz(l), pp(l);
    std::iota(pz.begin(), pz.end(), std::size_t{0});
    std::iota(pp.begin(), pp.end(), std::size_t{0});
    std::shuffle(pz.begin(), pz.end(), shuffle);
    std::shuffle(pp.begin(), pp.end(), shuffle);
    std::vector<Vector> zs2;
    std::vector<Covector> ps2;
    for (std::size_t i = 0; i < l; ++i) {
      zs2.push_back(f.zs[pz[i]]);
      ps2.push_back(f.ps[pp[i]]);
    }
    const double sign = permutation_sign(pz) * permutation_sign(pp);
    CHECK(max_abs(subtract(osquare_operator(zs2, ps2), scale(op, sign))) <= 1e-11 * mag);

    // vanishing on dependent families
    if (l >= 2) {
      auto zs_dep = f.zs;
      zs_dep[l - 1] = Vector(combine(0.75, f.zs[0].coords(), -2.0, f.zs[l - 2].coords()));
      CHECK(max_abs(osquare_operator(zs_dep, f.ps)) <= 1e-12 * wedge_scale(f.ps, zs_dep));
      auto ps_dep = f.ps;
      ps_dep[0] = Covector(combine(3.0, f.ps[l - 1].coords(), 0.0, f.ps[0].coords()));
      CHECK(max_abs(osquare_operator(f.zs, ps_dep)) <= 1e-12 * wedge_scale(ps_dep, f.zs));
    }
  }
}


TEST_CASE("det_perturbed_identity fixed values") {
  CHECK(det_perturbed_identity(PerturbedIdentity(DyadicPerturbation({Dyad(e(2, 0), eps(2, 0))}))) == 2.0);
  CHECK(det_perturbed_identity(PerturbedIdentity(
            DyadicPerturbation({Dyad(e(2, 0), eps(2, 0)), Dyad(e(2, 1), eps(2, 1))}))) == 4.0);
  CHECK(det_perturbed_identity(PerturbedIdentity(
            DyadicPerturbation({Dyad(e(2, 0), eps(2, 0)), Dyad(e(2, 1), eps(2, 0))}))) == 2.0);
}

TEST_CASE("det_perturbed_identity matches two independent oracles") {
  Rng rng(38);
  for (std::size_t n = 2; n <= 10; ++n) {
    for (std::size_t k = 1; k <= std::min<std::size_t>(8, n + 2); ++k) {
      for (int trial = 0; trial < 10; ++trial) {
        const auto a = random_identity_problem(rng, n, k);
        const double det = det_perturbed_identity(a);
        const double lu = oracle::determinant(a.materialize());
        CHECK(std::abs(det - lu) <= 1e-10 * std::max(1.0, std::abs(lu)));
        // det(I_n + U P^T) = det(I_k + P^T U)
        const double small = oracle::determinant(add(SquareMatrix::identity(k), a.gram().entries()));
        CHECK(std::abs(det - small) <= 1e-10 * std::max(1.0, std::abs(small)));
      }
    }
  }
}

TEST_CASE("inverse_perturbed_identity") {
  SUBCASE("one dyad matches Sherman-Morrison") {
    const PerturbedIdentity a(DyadicPerturbation({Dyad(e(2, 0), eps(2, 0))}));
    const auto r = inverse_perturbed_identity(a);
    CHECK(r.det_a == 2.0);
    const double d[] = {0.5, 1.0};
    CHECK(max_abs(subtract(r.inverse, SquareMatrix::diagonal(d))) <= 1e-15);

    Rng rng(39);
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t n = 2 + trial % 8;
      const Dyad d1(rng.vector(n), rng.covector(n));
      const double pu = pair(d1.covector, d1.vector);
      if (std::abs(1.0 + pu) < 1e-3) continue;
      const auto sm = subtract(SquareMatrix::identity(n), scale(dyad_to_operator(d1), 1.0 / (1.0 + pu)));
      const auto got = inverse_perturbed_identity(PerturbedIdentity(DyadicPerturbation({d1}))).inverse;
      CHECK(relative_frobenius_error(got, sm) <= 1e-12);
    }
  }
  SUBCASE("zero perturbation") {
    const PerturbedIdentity a(DyadicPerturbation({Dyad(e(3, 0), Covector::zero(3)), Dyad(e(3, 2), Covector::zero(3))}));
    const auto r = inverse_perturbed_identity(a);
    CHECK(r.det_a == 1.0);
    CHECK(r.inverse == SquareMatrix::identity(3));
  }
  SUBCASE("random against the LU oracle") {
    Rng rng(40);
    int checked = 0;
    while (checked < 20) {
      const auto a = random_identity_problem(rng, 8, 5);
      const auto m = a.materialize();
      if (!oracle::passes_condition_screen(m)) continue;
      ++checked;
      const auto r = inverse_perturbed_identity(a);
      const auto expected = oracle::inverse(m);
      CHECK(relative_frobenius_error(r.inverse, expected) <= 1e-9);
      CHECK(max_abs(subtract(scale(r.inverse, r.det_a), r.adjugate_like)) <= 1e-12 * std::max(1.0, max_abs(r.adjugate_like)));
      CHECK(max_abs(subtract(multiply(m, r.inverse), SquareMatrix::identity(8))) <= 1e-9 * std::max(1.0, frobenius_norm(m) * frobenius_norm(r.inverse)));
    }
  }
  SUBCASE("singular A") {
    const PerturbedIdentity a(DyadicPerturbation({Dyad(e(3, 1), Covector{0, -1, 0})}));
    CHECK(det_perturbed_identity(a) == 0.0);
    CHECK_THROWS_AS(inverse_perturbed_identity(a), SingularPerturbation);
  }
  SUBCASE("more dyads than dimensions") {
    Rng rng(41);
    int checked = 0;
    while (checked < 5) {
      const auto a = random_identity_problem(rng, 3, 6);
      if (!oracle::passes_condition_screen(a.materialize())) continue;
      ++checked;
      CHECK(relative_frobenius_error(inverse_perturbed_identity(a).inverse, oracle::inverse(a.materialize())) <= 1e-9);
    }
  }
}

TEST_CASE("pairing_form_inverse") {
  Rng rng(42);
  {
    const PerturbedIdentity a(DyadicPerturbation({Dyad(rng.vector(4), Covector::zero(4)), Dyad(rng.vector(4), Covector::zero(4))}));
    const auto x = rng.vector(4);
    const auto q = rng.covector(4);
    CHECK(pairing_form_inverse(a, x, q) == pair(q, x));
  }
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const Dyad d(rng.vector(n), rng.covector(n));
    const PerturbedIdentity a(DyadicPerturbation({d}));
    const auto x = rng.vector(n);
    const auto q = rng.covector(n);
    const double closed = pair(q, x) * (1.0 + pair(d.covector, d.vector)) - pair(q, d.vector) * pair(d.covector, x);
    const double form = pairing_form_inverse(a, x, q);
    const double mag = norm2(q.coords()) * norm2(x.coords()) * (1.0 + norm2(d.vector.coords()) * norm2(d.covector.coords()));
    CHECK(std::abs(form - closed) <= 1e-12 * mag);
    const auto r = inverse_perturbed_identity(a);
    CHECK(std::abs(form - pair(q, apply(r.inverse, x)) * r.det_a) <= 1e-10 * mag);
  }
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = random_identity_problem(rng, 5, 3);
    const auto x = rng.vector(5);
    const auto q = rng.covector(5);
    const auto adj = truncated_adjugate(a, 3);
    const double expected = pair(q, apply(adj, x));
    CHECK(std::abs(pairing_form_inverse(a, x, q) - expected) <= 1e-10 * std::max(1.0, std::abs(expected)) * 10.0);
  }
}

TEST_CASE("perturbed_inverse_exact") {
  Rng rng(43);
  SUBCASE("zero covectors give B^-1") {
    const auto b = rng.matrix(4);
    const DyadicPerturbation q({Dyad(rng.vector(4), Covector::zero(4))});
    CHECK(relative_frobenius_error(perturbed_inverse_exact(b, q), oracle::inverse(b)) <= 1e-14);
  }
  SUBCASE("diagonal hand computation") {
    const auto b = scale(SquareMatrix::identity(2), 2.0);
    const DyadicPerturbation q({Dyad(e(2, 0), eps(2, 0))});
    const double d[] = {1.0 / 3.0, 0.5};
    CHECK(max_abs(subtract(perturbed_inverse_exact(b, q), SquareMatrix::diagonal(d))) <= 1e-15);
  }
  SUBCASE("random against the LU oracle") {
    int checked = 0;
    while (checked < 20) {
      const auto b = rng.matrix(10);
      const auto q = rng.perturbation(10, 7);
      const auto bp = add(b, perturbation_operator(q));
      if (!oracle::passes_condition_screen(b) || !oracle::passes_condition_screen(bp)) continue;
      ++checked;
      const auto got = perturbed_inverse_exact(b, q);
      CHECK(relative_frobenius_error(got, oracle::inverse(bp)) <= 1e-9);
    }
  }
  SUBCASE("errors") {
    const DyadicPerturbation q({Dyad(e(2, 0), eps(2, 0))});
    CHECK_THROWS_AS(perturbed_inverse_exact(SquareMatrix::from_rows({{1, 2}, {2, 4}}), q), SingularBase);
    const DyadicPerturbation kill({Dyad(e(2, 0), Covector{-1, 0})});
    CHECK_THROWS_AS(perturbed_inverse_exact(SquareMatrix::identity(2), kill), SingularPerturbation);
    CHECK_THROWS_AS(perturbed_inverse_exact(SquareMatrix::identity(3), q), DimensionMismatch);
  }
}

TEST_CASE("materialized A minus identity recovers the dyads") {
  Rng rng(44);
  const auto q = rng.perturbation(5, 3);
  const PerturbedIdentity a(q);
  CHECK(max_abs(subtract(subtract(a.materialize(), SquareMatrix::identity(5)), perturbation_operator(q))) <= 1e-15 * std::max(1.0, max_abs(perturbation_operator(q))) * 4);
}

TEST_CASE("parallel kernels reproduce the serial reference bit for bit") {
  Rng rng(45);
  for (std::size_t k : {3, 7, 11}) {
    const auto a = random_identity_problem(rng, 9, k);
    const auto g = a.gram();
    CHECK(principal_minor_sums(g, 9, Exec::serial) == principal_minor_sums(g, 9, Exec::parallel));
    CHECK(det_perturbed_identity(a, Exec::serial) == det_perturbed_identity(a, Exec::parallel));
    CHECK(truncated_adjugate(a, k, Exec::serial) == truncated_adjugate(a, k, Exec::parallel));
  }
}
