#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "ncg/catalog.hpp"
#include "ncg/distance.hpp"
#include "ncg/error.hpp"
#include "ncg/random.hpp"
#include "ncg/wasserstein.hpp"
#include "oracles.hpp"

using namespace ncg;

namespace {

const FiniteAlgebra kC2 = FiniteAlgebra::commutative(2);
const State kPlus = State::coordinate(kC2, 0);
const State kMinus = State::coordinate(kC2, 1);

void check_certificate(const SpectralTriple& t, const State& a, const State& b, const DistanceResult& d) {
  CHECK(d.lower <= d.upper);
  if (d.status == DistanceStatus::kInfinite) return;
  CHECK(op_norm(dirac_commutator(t, d.optimizer)) <= 1.0 + 1e-9);
  CHECK(d.optimizer.is_self_adjoint());
  const double gap = (eval(a, d.optimizer) - eval(b, d.optimizer)).real();
  CHECK(std::abs(gap - d.lower) <= 1e-10 * std::max(1.0, d.lower));
}

const std::array<RandomTripleSpec, 5> kShapes{{
    {{1, 1}, {1, 1}, 0},
    {{1, 1, 1}, {1, 1, 1}, 0},
    {{1, 1, 1, 1}, {1, 1, 1, 1}, 0},
    {{2}, {2}, 0},
    {{1, 1}, {2, 2}, 0},
}};

/// min over (a1, a2, a4) of ||B_a|| with a1 - a3 = 1, by a coarse grid
/// followed by compass search; ||B_a|| is convex so this finds the global
/// minimum. The distance is the reciprocal.
double grid_oracle_distance(double lambda, double mu) {
  auto norm_b = [&](double a1, double a2, double a4) {
    const double a3 = a1 - 1.0;
    const ComplexMatrix b{{2 * a1 / mu, 0, (a1 - a3) / lambda, 0},
                          {0, 2 * a2 / mu, 0, (a2 - a4) / lambda},
                          {0, 0, 2 * a3 / mu, 0},
                          {0, 0, 0, 2 * a4 / mu}};
    return oracle::power_norm(b);
  };
  std::array<double, 3> best{0.0, 0.0, 0.0};
  double best_val = norm_b(0, 0, 0);
  for (int i = -20; i <= 20; ++i)
    for (int j = -20; j <= 20; ++j)
      for (int k = -20; k <= 20; ++k) {
        const double v = norm_b(i / 20.0, j / 20.0, k / 20.0);
        if (v < best_val) {
          best_val = v;
          best = {i / 20.0, j / 20.0, k / 20.0};
        }
      }
  for (double step = 0.05; step > 1e-9; step *= 0.5) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (int dim = 0; dim < 3; ++dim) {
        for (double sgn : {-1.0, 1.0}) {
          auto trial = best;
          trial[dim] += sgn * step;
          const double v = norm_b(trial[0], trial[1], trial[2]);
          if (v < best_val - 1e-15) {
            best_val = v;
            best = trial;
            improved = true;
          }
        }
      }
    }
  }
  return 1.0 / best_val;
}

}  // namespace

TEST_CASE("two-point distance equals lambda") {
  for (double lambda : {0.5, 1.0, 3.0}) {
    const SpectralTriple t = two_point(lambda);
    const DistanceResult d = spectral_distance(t, kPlus, kMinus);
    CHECK(d.status == DistanceStatus::kFinite);
    CHECK(d.lower == doctest::Approx(lambda).epsilon(1e-6));
    CHECK(d.upper == doctest::Approx(lambda).epsilon(1e-6));
    check_certificate(t, kPlus, kMinus, d);
  }
}

TEST_CASE("amplified two-point distance equals mu") {
  for (double mu : {0.5, 1.0, 2.0}) {
    const SpectralTriple t = amplified_two_point(mu);
    const DistanceResult d = spectral_distance(t, kPlus, kMinus);
    CHECK(d.status == DistanceStatus::kFinite);
    CHECK(std::abs(d.lower - mu) <= 1e-6);
    CHECK(std::abs(d.upper - mu) <= 1e-6);
    check_certificate(t, kPlus, kMinus, d);
  }
}

TEST_CASE("pullback modules give infinite distance") {
  for (std::size_t k = 0; k < 2; ++k) {
    const SpectralTriple t = as_triple(pullback_module(Character::coordinate(kC2, k)));
    const DistanceResult d = spectral_distance(t, kPlus, kMinus);
    CHECK(d.status == DistanceStatus::kInfinite);
    CHECK(std::isinf(d.lower));
    CHECK(std::isinf(d.upper));
    // The returned direction commutes with D and separates the states.
    CHECK(max_abs(dirac_commutator(t, d.optimizer)) <= 1e-10);
    CHECK((eval(kPlus, d.optimizer) - eval(kMinus, d.optimizer)).real() > 0.0);
    CHECK_FALSE(ascent_lower_bound(t, kPlus, kMinus).has_value());
  }
}

TEST_CASE("zero Dirac operator gives infinite distance") {
  const SpectralTriple t = SpectralTriple::make(Representation::standard(kC2), ComplexMatrix(2, 2), std::nullopt);
  CHECK(spectral_distance(t, kPlus, kMinus).status == DistanceStatus::kInfinite);
}

TEST_CASE("product distance between extreme corners is mu for every lambda") {
  for (double lambda : {0.1, 1.0, 10.0}) {
    for (double mu : {1.0, 2.0}) {
      const SpectralTriple t = product(two_point(lambda), amplified_two_point(mu));
      const State a = product_state(kPlus, kPlus);
      const State b = product_state(kMinus, kMinus);
      const DistanceResult d = spectral_distance(t, a, b);
      CHECK(std::abs(d.lower - mu) <= 1e-5);
      CHECK(std::abs(d.upper - mu) <= 1e-5);
      check_certificate(t, a, b, d);
    }
  }
}

TEST_CASE("product distance across the first factor matches a grid-search oracle") {
  const SpectralTriple t = product(two_point(2.0), amplified_two_point(1.0));
  const State a = product_state(kPlus, kPlus);
  const State b = product_state(kMinus, kPlus);
  const DistanceResult d = spectral_distance(t, a, b);
  check_certificate(t, a, b, d);
  CHECK(d.lower <= 4.0 / 3.0 + 1e-5);
  CHECK(d.upper < 2.0);
  const double oracle_value = grid_oracle_distance(2.0, 1.0);
  CHECK(std::abs(d.lower - oracle_value) <= 1e-6);
  CHECK(std::abs(d.upper - oracle_value) <= 1e-6);
}

TEST_CASE("supergradient ascent agrees with the barrier method") {
  const SpectralTriple t = product(two_point(5.0), amplified_two_point(1.0));
  const State a = product_state(kPlus, kPlus);
  const State b = product_state(kMinus, kPlus);
  const DistanceResult d = spectral_distance(t, a, b);
  const auto asc = ascent_lower_bound(t, a, b);
  REQUIRE(asc.has_value());
  CHECK(*asc <= d.upper + 1e-9);
  CHECK(std::abs(*asc - d.lower) <= 1e-5);

  Rng rng(70);
  for (int trial = 0; trial < 20; ++trial) {
    const SpectralTriple r = random_triple(rng, kShapes[rng.index(kShapes.size())]);
    const State p = random_state(rng, r.algebra());
    const State q = random_state(rng, r.algebra());
    const DistanceResult e = spectral_distance(r, p, q);
    const auto lb = ascent_lower_bound(r, p, q);
    REQUIRE(lb.has_value());
    CHECK(*lb <= e.upper + 1e-9);
    CHECK(*lb >= e.lower * (1.0 - 1e-3));
  }
}

TEST_CASE("distance certificates on random triples") {
  Rng rng(71);
  for (int trial = 0; trial < 40; ++trial) {
    RandomTripleSpec spec = kShapes[rng.index(kShapes.size())];
    spec.padding = rng.index(2);
    const SpectralTriple t = random_triple(rng, spec);
    const State p = random_state(rng, t.algebra());
    const State q = random_state(rng, t.algebra());
    const DistanceResult d = spectral_distance(t, p, q);
    CHECK(d.status != DistanceStatus::kInfinite);
    CHECK(d.upper - d.lower <= 1e-6 * std::max(1.0, d.lower));
    check_certificate(t, p, q, d);
  }
}

TEST_CASE("symmetry and zero self-distance") {
  Rng rng(72);
  const SpectralTriple t = random_triple(rng, kShapes[1]);
  const State p = random_state(rng, t.algebra());
  const State q = random_state(rng, t.algebra());
  const DistanceResult pp = spectral_distance(t, p, p);
  CHECK(pp.lower == 0.0);
  CHECK(pp.upper == 0.0);
  CHECK(pp.optimizer.max_abs_diff(AlgebraElement::zero(t.algebra())) == 0.0);
  const DistanceResult pq = spectral_distance(t, p, q);
  const DistanceResult qp = spectral_distance(t, q, p);
  CHECK(std::abs(pq.lower - qp.lower) <= 2e-6 * pq.lower);
}

TEST_CASE("scaling D by s divides distances by s") {
  Rng rng(73);
  const std::vector<SpectralTriple> triples{two_point(1.5), amplified_two_point(0.7),
                                            product(two_point(2.0), amplified_two_point(1.0)), lattice_line(4, 1.0)};
  for (const SpectralTriple& t : triples) {
    const State p = random_state(rng, t.algebra());
    const State q = random_state(rng, t.algebra());
    const DistanceResult base = spectral_distance(t, p, q);
    for (double s : {0.5, 3.0}) {
      const DistanceResult scaled = spectral_distance(t.scaled(s), p, q);
      const double tol = 1e-6 * std::max(1.0, base.lower);
      CHECK(std::abs(scaled.lower * s - base.lower) <= 2 * tol * std::max(1.0, s));
      CHECK(std::abs(scaled.upper * s - base.upper) <= 2 * tol * std::max(1.0, s));
    }
  }
}

TEST_CASE("product with the one-point triple leaves distances unchanged") {
  Rng rng(74);
  const SpectralTriple t = random_triple(rng, kShapes[4]);
  const SpectralTriple tp = product(t, point_triple());
  const State p = random_state(rng, t.algebra());
  const State q = random_state(rng, t.algebra());
  const State one = State::coordinate(FiniteAlgebra::commutative(1), 0);
  const DistanceResult d = spectral_distance(t, p, q);
  const DistanceResult dp = spectral_distance(tp, product_state(p, one), product_state(q, one));
  CHECK(std::abs(d.lower - dp.lower) <= 2e-6 * std::max(1.0, d.lower));
}

TEST_CASE("Pythagoras inequalities on random products") {
  Rng rng(75);
  const double tol = 1e-4;
  const DistanceOptions opts{.tol = tol};
  for (int trial = 0; trial < 30; ++trial) {
    RandomTripleSpec s1 = kShapes[rng.index(kShapes.size())];
    RandomTripleSpec s2 = kShapes[rng.index(kShapes.size())];
    const bool unital = trial % 3 != 0;
    if (!unital) s2.padding = 1;
    const SpectralTriple t1 = random_triple(rng, s1);
    const SpectralTriple t2 = random_triple(rng, s2);
    const State p1 = random_state(rng, t1.algebra()), q1 = random_state(rng, t1.algebra());
    const State p2 = random_state(rng, t2.algebra()), q2 = random_state(rng, t2.algebra());
    const DistanceResult d1 = spectral_distance(t1, p1, q1, opts);
    const DistanceResult d2 = spectral_distance(t2, p2, q2, opts);
    const DistanceResult d = spectral_distance(product(t1, t2), product_state(p1, p2), product_state(q1, q2), opts);
    CHECK(d.lower <= d1.upper + d2.upper + 3 * tol);
    CHECK(d.lower <= std::sqrt(2.0) * std::hypot(d1.upper, d2.upper) + 3 * tol);
    if (unital) CHECK(d.upper >= std::hypot(d1.lower, d2.lower) - 3 * tol);
  }
}

TEST_CASE("unital products with a common second state reduce to the first factor") {
  Rng rng(76);
  const double tol = 1e-4;
  const DistanceOptions opts{.tol = tol};
  for (int trial = 0; trial < 15; ++trial) {
    const SpectralTriple t1 = random_triple(rng, kShapes[rng.index(kShapes.size())]);
    const SpectralTriple t2 = random_triple(rng, kShapes[rng.index(kShapes.size())]);
    const State p1 = random_state(rng, t1.algebra()), q1 = random_state(rng, t1.algebra());
    const State p2 = random_state(rng, t2.algebra());
    const DistanceResult d1 = spectral_distance(t1, p1, q1, opts);
    const DistanceResult d = spectral_distance(product(t1, t2), product_state(p1, p2), product_state(q1, p2), opts);
    CHECK(std::abs(d.lower - d1.lower) <= 3 * tol * std::max(1.0, d1.lower));
  }
}

TEST_CASE("distance matrix") {
  const auto m = distance_matrix(two_point(2.5), {kPlus, kMinus});
  CHECK(m[0][0] == 0.0);
  CHECK(m[1][1] == 0.0);
  CHECK(m[0][1] == doctest::Approx(2.5).epsilon(1e-6));
  CHECK(m[1][0] == m[0][1]);
  const auto same = distance_matrix(two_point(1.0), {kPlus, kPlus});
  CHECK(same[0][1] == 0.0);
  CHECK_THROWS_AS(distance_matrix(two_point(1.0), {kPlus}), NcgError);
  CHECK(std::isinf(distance_matrix(as_triple(pullback_module(Character::coordinate(kC2, 0))), {kPlus, kMinus})[0][1]));
}

TEST_CASE("lattice distance matrix is a metric dominated by transport") {
  const std::size_t n = 5;
  const double tol = 1e-6;
  const SpectralTriple t = lattice_line(n, 1.0);
  const auto states = pure_states(t.algebra());
  std::vector<std::vector<double>> upper(n, std::vector<double>(n, 0.0));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (x != y) upper[x][y] = spectral_distance(t, states[x], states[y]).upper;
  const auto lower = distance_matrix(t, states);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) CHECK(lower[x][z] <= lower[x][y] + lower[y][z] + 2 * tol * lower[x][z]);

  // Path closure of the upper bounds is a metric above the true one, so
  // transport cost in it bounds every distance between mixed states.
  auto closure = upper;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) closure[i][j] = std::min(closure[i][j], closure[i][k] + closure[k][j]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) closure[i][j] = closure[j][i] = std::max(closure[i][j], closure[j][i]);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  const FiniteMetricSpace space = FiniteMetricSpace::make(labels, {}, closure);

  Rng rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    const State p = random_state(rng, t.algebra());
    const State q = random_state(rng, t.algebra());
    std::vector<double> wp(n), wq(n);
    for (std::size_t i = 0; i < n; ++i) {
      wp[i] = p.densities()[i](0, 0).real();
      wq[i] = q.densities()[i](0, 0).real();
    }
    const double w = w1(space, Measure::make(wp), Measure::make(wq)).value;
    CHECK(spectral_distance(t, p, q).lower <= w + 1e-9);
  }
  // Between point masses the two notions coincide.
  CHECK(w1(space, Measure::dirac(n, 0), Measure::dirac(n, 3)).value == doctest::Approx(closure[0][3]));
}

TEST_CASE("quarter-disk supremum is the Euclidean norm") {
  for (auto [x, y] : std::vector<std::pair<double, double>>{{0, 0}, {1, 0}, {0, 2}, {3, 4}, {1e-3, 7.5}, {2.2, 2.2}}) {
    CHECK(std::abs(quarter_disk_sup(x, y) - std::hypot(x, y)) <= 1e-12 * std::max(1.0, std::hypot(x, y)));
  }
  CHECK_THROWS_AS(quarter_disk_sup(-1.0, 1.0), NcgError);
}

TEST_CASE("distance input errors") {
  const FiniteAlgebra c3 = FiniteAlgebra::commutative(3);
  CHECK_THROWS_AS(spectral_distance(two_point(1.0), State::coordinate(c3, 0), kMinus), NcgError);
  CHECK_THROWS_AS(spectral_distance(two_point(1.0), kPlus, kMinus, {.tol = 0.0}), NcgError);
}
