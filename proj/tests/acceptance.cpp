// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Time limits are wall-clock, measured per instance where
// the criterion says "each".

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "ncg/catalog.hpp"
#include "ncg/distance.hpp"
#include "ncg/experiments.hpp"
#include "ncg/wasserstein.hpp"

using namespace ncg;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool ok = true;
  std::string detail;
  double slowest = 0.0;  // slowest timed instance
};

template <class F>
auto timed(Outcome& o, F&& f) {
  const auto t0 = Clock::now();
  auto v = f();
  o.slowest = std::max(o.slowest, seconds_since(t0));
  return v;
}

void fail(Outcome& o, const std::string& why) {
  o.ok = false;
  if (!o.detail.empty()) o.detail += "; ";
  o.detail += why;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

const FiniteAlgebra kC2 = FiniteAlgebra::commutative(2);
const State kPlus = State::coordinate(kC2, 0);
const State kMinus = State::coordinate(kC2, 1);

Outcome two_point_distance() {
  Outcome o;
  for (double lambda : {0.5, 1.0, 3.0}) {
    const DistanceResult d = timed(o, [&] { return spectral_distance(two_point(lambda), kPlus, kMinus); });
    if (std::abs(d.lower - lambda) > 1e-6 || std::abs(d.upper - lambda) > 1e-6)
      fail(o, fmt("lambda=%g gave [%.9g, %.9g]", lambda, d.lower, d.upper));
  }
  return o;
}

Outcome amplified_distance() {
  Outcome o;
  for (double mu : {0.5, 1.0, 2.0}) {
    const DistanceResult d = timed(o, [&] { return spectral_distance(amplified_two_point(mu), kPlus, kMinus); });
    if (std::abs(d.lower - mu) > 1e-6 || std::abs(d.upper - mu) > 1e-6)
      fail(o, fmt("mu=%g gave [%.9g, %.9g]", mu, d.lower, d.upper));
  }
  return o;
}

Outcome product_independence() {
  Outcome o;
  const DistanceOptions opts{.tol = 1e-6};
  for (double lambda : {0.1, 1.0, 10.0}) {
    for (double mu : {1.0, 2.0}) {
      const SpectralTriple t = product(two_point(lambda), amplified_two_point(mu));
      const DistanceResult d = timed(o, [&] {
        return spectral_distance(t, product_state(kPlus, kPlus), product_state(kMinus, kMinus), opts);
      });
      if (std::abs(d.lower - mu) > 1e-5 || std::abs(d.upper - mu) > 1e-5)
        fail(o, fmt("lambda=%g mu=%g gave %.9g", lambda, mu, d.lower));
      // d / sqrt(d1^2 + d2^2) against mu / sqrt(lambda^2 + mu^2)
      const DistanceResult d1 = spectral_distance(two_point(lambda), kPlus, kMinus, opts);
      const DistanceResult d2 = spectral_distance(amplified_two_point(mu), kPlus, kMinus, opts);
      const double ratio = d.lower / std::hypot(d1.lower, d2.lower);
      const double expected = mu / std::hypot(lambda, mu);
      if (std::abs(ratio - expected) > 1e-5) fail(o, fmt("ratio %.9g vs %.9g", ratio, expected));
    }
  }
  return o;
}

Outcome product_bound() {
  Outcome o;
  for (double lambda : {2.0, 5.0, 10.0}) {
    const SpectralTriple t = product(two_point(lambda), amplified_two_point(1.0));
    const DistanceResult d = timed(o, [&] {
      return spectral_distance(t, product_state(kPlus, kPlus), product_state(kMinus, kPlus), {.tol = 1e-6});
    });
    const double bound = 2 * lambda / (1 + lambda);
    if (!(d.lower <= bound + 1e-5)) fail(o, fmt("lambda=%g: %.9g exceeds %.9g", lambda, d.lower, bound));
    if (!(d.upper < lambda)) fail(o, fmt("lambda=%g: upper %.9g not below lambda", lambda, d.upper));
    o.detail += (o.detail.empty() ? "" : ", ") + fmt("d(%g)=%.7f", lambda, d.lower);
  }
  return o;
}

Outcome pullback_infinite() {
  Outcome o;
  for (std::size_t k = 0; k < 2; ++k) {
    const SpectralTriple t = as_triple(pullback_module(Character::coordinate(kC2, k)));
    const DistanceResult d = timed(o, [&] { return spectral_distance(t, kPlus, kMinus); });
    if (d.status != DistanceStatus::kInfinite || !std::isinf(d.lower)) fail(o, k == 0 ? "F+ finite" : "F- finite");
  }
  return o;
}

Outcome wasserstein_square() {
  Outcome o;
  const auto t0 = Clock::now();
  const FiniteMetricSpace seg = FiniteMetricSpace::euclidean({{0.0}, {1.0}});
  const FiniteMetricSpace sq = product_space(seg, seg);
  for (int k = 1; k <= 9; ++k) {
    const double lambda = k / 10.0;
    const Measure m = segment_measure(lambda);
    const double w_1 = w1(seg, m, Measure::dirac(2, 0)).value;
    const double w = w1(sq, product_measure(m, m), Measure::dirac(4, 0)).value;
    const double expected = std::sqrt(2.0) * lambda * (lambda + std::sqrt(2.0) * (1 - lambda));
    if (std::abs(w_1 - lambda) > 1e-9) fail(o, fmt("W1(%g)=%.12g", lambda, w_1));
    if (std::abs(w - expected) > 1e-9) fail(o, fmt("W(%g)=%.12g vs %.12g", lambda, w, expected));
  }
  const auto ends = square_sweep({1.0, 1e-9});
  if (std::abs(ends[0].ratio - 1.0) > 1e-9) fail(o, fmt("ratio at 1 is %.12g", ends[0].ratio));
  if (std::abs(ends[1].ratio - std::sqrt(2.0)) > 1e-6) fail(o, fmt("ratio near 0 is %.12g", ends[1].ratio));
  o.slowest = seconds_since(t0);
  return o;
}

Outcome from_experiment(const char* id, ExperimentParams p) {
  Outcome o;
  const ExperimentReport r = timed(o, [&] { return run_experiment(id, p); });
  if (!r.pass) fail(o, r.computed.dump().substr(0, 400));
  return o;
}

Outcome theorem_suite() {
  ExperimentParams p;
  p.trials = 200;
  p.tol = 1e-4;
  Outcome o = from_experiment("theorem1", p);
  return o;
}

Outcome lemma_suite() {
  ExperimentParams p;
  p.trials = 1000;
  p.tol = 1e-9;
  return from_experiment("lemmas", p);
}

Outcome khomology_table() {
  ExperimentParams p;
  p.tol = 1e-8;
  return from_experiment("khomology", p);
}

Outcome two_sheeted() {
  Outcome o;
  const auto t0 = Clock::now();
  for (std::size_t n : {5, 9}) {
    for (double lambda : {0.5, 2.0, 10.0}) {
      ExperimentParams p;
      p.n = n;
      p.lambda = lambda;
      p.tol = 1e-5;
      const ExperimentReport r = run_experiment("two-sheeted-line", p);
      const double worst = r.computed.at("max_lower").get<double>();
      if (!r.pass) fail(o, fmt("n=%g lambda=%g max %.9g", static_cast<double>(n), lambda, worst));
      if (lambda == 2.0)
        o.detail += (o.detail.empty() ? "" : ", ") +
                    fmt("n=%g diag<=%.6f", static_cast<double>(n), r.computed.at("max_diagonal_upper").get<double>());
    }
  }
  o.slowest = seconds_since(t0);
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double limit;  // seconds
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "two-point distance equals lambda", 1.0, two_point_distance},
      {2, "amplified two-point distance equals mu", 1.0, amplified_distance},
      {3, "product distance equals mu independent of lambda", 5.0, product_independence},
      {4, "product distance bounded by 2 lambda/(1+lambda)", 5.0, product_bound},
      {5, "pullback modules give infinite distance", 1.0, pullback_infinite},
      {6, "Wasserstein square example and ratio range", 1.0, wasserstein_square},
      {7, "Pythagoras inequalities on 200 random products", 300.0, theorem_suite},
      {8, "norm, odd/even and slice lemmas over 1000 trials", 30.0, lemma_suite},
      {9, "K-homology pairing table", 1.0, khomology_table},
      {10, "two-sheeted lattice line bounded by 1", 120.0, two_sheeted},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      fail(o, std::string("exception: ") + e.what());
    }
    if (o.slowest >= c.limit) fail(o, fmt("took %.3fs, limit %gs", o.slowest, c.limit));
    failures += o.ok ? 0 : 1;
    std::printf("%s %2d %s [%.3fs / %gs]%s%s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, o.slowest, c.limit,
                o.detail.empty() ? "" : " ", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
