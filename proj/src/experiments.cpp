#include "ncg/experiments.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "ncg/catalog.hpp"
#include "ncg/error.hpp"
#include "ncg/random.hpp"

namespace ncg {

namespace {

constexpr double kClosedFormTol = 1e-6;
constexpr double kSweepTol = 1e-4;

using Runner = std::function<ExperimentReport(const ExperimentParams&)>;

double positive(std::optional<double> v, double fallback, const char* name) {
  const double x = v.value_or(fallback);
  if (!(x > 0.0) || !std::isfinite(x)) throw NcgError(ErrorKind::kInvalidInput, std::string(name) + " must be positive");
  return x;
}

ExperimentReport base(std::string id, double tolerance) {
  ExperimentReport r;
  r.experiment_id = std::move(id);
  r.inputs = Json::object();
  r.tolerance = tolerance;
  return r;
}

struct PureC2 {
  FiniteAlgebra algebra = FiniteAlgebra::commutative(2);
  State plus = State::coordinate(algebra, 0);
  State minus = State::coordinate(algebra, 1);
};

bool near(const DistanceResult& d, double target, double tol) {
  return std::abs(d.lower - target) <= tol && std::abs(d.upper - target) <= tol;
}

ExperimentReport two_point_experiment(const ExperimentParams& params) {
  const double lambda = positive(params.lambda, 1.0, "lambda");
  const double tol = params.tol.value_or(kClosedFormTol);
  ExperimentReport r = base("two-point", tol);
  r.inputs = {{"lambda", lambda}};
  const PureC2 c2;
  const DistanceResult d = spectral_distance(two_point(lambda), c2.plus, c2.minus, {.tol = tol * 0.1});
  r.claimed = lambda;
  r.computed = to_json(d);
  r.pass = near(d, lambda, tol);
  return r;
}

ExperimentReport amplified_experiment(const ExperimentParams& params) {
  const double mu = positive(params.mu, 1.0, "mu");
  const double tol = params.tol.value_or(kClosedFormTol);
  ExperimentReport r = base("amplified-two-point", tol);
  r.inputs = {{"mu", mu}};
  const PureC2 c2;
  const DistanceResult d = spectral_distance(amplified_two_point(mu), c2.plus, c2.minus, {.tol = tol * 0.1});
  r.claimed = mu;
  r.computed = to_json(d);
  r.pass = near(d, mu, tol);
  return r;
}

ExperimentReport prop_indep_experiment(const ExperimentParams& params) {
  const double lambda = positive(params.lambda, 1.0, "lambda");
  const double mu = positive(params.mu, 1.0, "mu");
  const double tol = params.tol.value_or(1e-5);
  ExperimentReport r = base("prop-indep", tol);
  r.inputs = {{"lambda", lambda}, {"mu", mu}};
  const PureC2 c2;
  const SpectralTriple t = product(two_point(lambda), amplified_two_point(mu));
  const DistanceOptions opts{.tol = tol * 0.1};
  const DistanceResult d = spectral_distance(t, product_state(c2.plus, c2.plus), product_state(c2.minus, c2.minus), opts);
  const double d1 = spectral_distance(two_point(lambda), c2.plus, c2.minus, opts).lower;
  const double d2 = spectral_distance(amplified_two_point(mu), c2.plus, c2.minus, opts).lower;
  const double ratio = d.lower / std::hypot(d1, d2);
  const double claimed_ratio = mu / std::hypot(lambda, mu);
  r.claimed = {{"distance", mu}, {"ratio", claimed_ratio}};
  r.computed = {{"distance", to_json(d)}, {"d1", d1}, {"d2", d2}, {"ratio", ratio}};
  r.pass = near(d, mu, tol) && std::abs(ratio - claimed_ratio) <= tol;
  return r;
}

ExperimentReport prop_bound_experiment(const ExperimentParams& params) {
  const double lambda = positive(params.lambda, 2.0, "lambda");
  const double mu = positive(params.mu, 1.0, "mu");
  const double tol = params.tol.value_or(1e-5);
  if (!(lambda > 1.0) || mu != 1.0) {
    throw NcgError(ErrorKind::kInvalidInput, "prop-bound: the bound is stated for lambda > 1 and mu = 1");
  }
  ExperimentReport r = base("prop-bound", tol);
  r.inputs = {{"lambda", lambda}, {"mu", mu}};
  const PureC2 c2;
  const SpectralTriple t = product(two_point(lambda), amplified_two_point(mu));
  const DistanceResult d =
      spectral_distance(t, product_state(c2.plus, c2.plus), product_state(c2.minus, c2.plus), {.tol = tol * 0.1});
  const double bound = 2.0 * lambda / (1.0 + lambda);
  std::ostringstream rel;
  rel << "d <= " << bound << " and d < " << lambda;
  r.claimed = {{"relation", rel.str()}, {"bound", bound}, {"strict_upper", lambda}};
  r.computed = to_json(d);
  r.pass = d.lower <= bound + tol && d.upper < lambda;
  return r;
}

ExperimentReport pullback_experiment(const ExperimentParams&) {
  ExperimentReport r = base("pullback-infinite", 0.0);
  const PureC2 c2;
  r.claimed = extended_real(kInfinity);
  r.computed = Json::object();
  r.pass = true;
  for (std::size_t k = 0; k < 2; ++k) {
    const SpectralTriple t = as_triple(pullback_module(Character::coordinate(c2.algebra, k)));
    const DistanceResult d = spectral_distance(t, c2.plus, c2.minus);
    r.computed[k == 0 ? "F+" : "F-"] = {{"lower", extended_real(d.lower)}, {"status", std::string(to_string(d.status))}};
    r.pass = r.pass && d.status == DistanceStatus::kInfinite;
  }
  return r;
}

ExperimentReport wasserstein_experiment(const ExperimentParams& params) {
  const double tol = params.tol.value_or(1e-9);
  ExperimentReport r = base("wasserstein-rsquare", tol);
  std::vector<double> lambdas;
  if (params.lambda) {
    if (!(*params.lambda > 0.0 && *params.lambda <= 1.0)) throw NcgError(ErrorKind::kInvalidInput, "lambda must lie in (0, 1]");
    lambdas.push_back(*params.lambda);
  } else {
    for (int k = 1; k <= 9; ++k) lambdas.push_back(k / 10.0);
  }
  r.inputs = {{"lambdas", lambdas}};
  r.claimed = {{"W1", "lambda"}, {"W", "sqrt(2) lambda (lambda + sqrt(2) (1 - lambda))"}};
  r.computed = Json::array();
  r.pass = true;
  for (const SquareSweepRow& row : square_sweep(lambdas)) {
    const double w_claim = std::sqrt(2.0) * row.lambda * k_lambda(row.lambda);
    const bool ok = std::abs(row.w_first - row.lambda) <= tol && std::abs(row.w_product - w_claim) <= tol;
    r.computed.push_back({{"lambda", row.lambda}, {"W1", row.w_first}, {"W", row.w_product}, {"ratio", row.ratio}, {"pass", ok}});
    r.pass = r.pass && ok;
  }
  return r;
}

// Factor shapes for randomized sweeps: Hilbert dimension <= 4, unital, and
// with generic D the commutant of D in the algebra is trivial.
const std::array<RandomTripleSpec, 5>& sweep_shapes() {
  static const std::array<RandomTripleSpec, 5> shapes{{
      {{1, 1}, {1, 1}, 0},
      {{1, 1, 1}, {1, 1, 1}, 0},
      {{1, 1, 1, 1}, {1, 1, 1, 1}, 0},
      {{2}, {2}, 0},
      {{1, 1}, {2, 2}, 0},
  }};
  return shapes;
}

ExperimentReport theorem1_experiment(const ExperimentParams& params) {
  const std::size_t trials = params.trials.value_or(200);
  const double tol = params.tol.value_or(kSweepTol);
  const double slack = 3.0 * tol;
  ExperimentReport r = base("theorem1", slack);
  r.inputs = {{"trials", trials}, {"seed", params.seed}, {"rng", kRngAlgorithm}, {"solver_tol", tol}};
  r.claimed = "sqrt(d1^2 + d2^2) <= d <= min(d1 + d2, sqrt(2) sqrt(d1^2 + d2^2))";
  Rng rng(params.seed);
  const DistanceOptions opts{.tol = tol};
  std::size_t violations = 0;
  Json failures = Json::array();
  double worst_margin = kInfinity;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const auto& shapes = sweep_shapes();
    const RandomTripleSpec& s1 = shapes[rng.index(shapes.size())];
    const RandomTripleSpec& s2 = shapes[rng.index(shapes.size())];
    const SpectralTriple t1 = random_triple(rng, s1);
    const SpectralTriple t2 = random_triple(rng, s2);
    const State p1 = random_state(rng, t1.algebra());
    const State q1 = random_state(rng, t1.algebra());
    const State p2 = random_state(rng, t2.algebra());
    const State q2 = random_state(rng, t2.algebra());
    const SpectralTriple t = product(t1, t2);
    const DistanceResult d1 = spectral_distance(t1, p1, q1, opts);
    const DistanceResult d2 = spectral_distance(t2, p2, q2, opts);
    const DistanceResult d = spectral_distance(t, product_state(p1, p2), product_state(q1, q2), opts);
    const double m_sum = d1.upper + d2.upper + slack - d.lower;
    const double m_pyth = d.upper - (std::hypot(d1.lower, d2.lower) - slack);
    const double m_sqrt2 = std::sqrt(2.0) * std::hypot(d1.upper, d2.upper) + slack - d.lower;
    const double margin = std::min({m_sum, m_pyth, m_sqrt2});
    worst_margin = std::min(worst_margin, margin);
    if (!(margin >= 0.0)) {
      ++violations;
      failures.push_back({{"trial", trial},
                          {"t1", to_json(t1)},
                          {"t2", to_json(t2)},
                          {"phi1", to_json(p1)},
                          {"phi1_prime", to_json(q1)},
                          {"phi2", to_json(p2)},
                          {"phi2_prime", to_json(q2)},
                          {"d", to_json(d)},
                          {"d1", to_json(d1)},
                          {"d2", to_json(d2)}});
    }
  }
  r.computed = {{"violations", violations}, {"worst_margin", extended_real(worst_margin)}, {"failures", failures}};
  r.pass = violations == 0;
  return r;
}

struct LemmaTally {
  std::size_t violations = 0;
  double worst = 0.0;
  void record(double excess, double tol) {
    worst = std::max(worst, excess);
    if (!(excess <= tol)) ++violations;
  }
  Json json() const { return {{"violations", violations}, {"worst_excess", worst}}; }
};

ExperimentReport lemmas_experiment(const ExperimentParams& params) {
  const std::size_t trials = params.trials.value_or(1000);
  const double tol = params.tol.value_or(1e-9);
  ExperimentReport r = base("lemmas", tol);
  r.inputs = {{"trials", trials}, {"seed", params.seed}, {"rng", kRngAlgorithm}};
  r.claimed = {{"norm_pythagoras", "||[D,a1(x)1 + 1(x)a2]||^2 = ||[D1,a1]||^2 + ||[D2,a2]||^2"},
               {"odd_even", "max(||odd||, ||even||) <= ||odd + even||"},
               {"slice", "||[D1, (id(x)phi)(a)]|| <= ||[D1(x)1, a]||"}};
  Rng rng(params.seed);
  const auto& shapes = sweep_shapes();
  LemmaTally pyth, parity, slice;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const SpectralTriple t1 = random_triple(rng, shapes[rng.index(shapes.size())]);
    const SpectralTriple t2 = random_triple(rng, shapes[rng.index(shapes.size())]);
    const SpectralTriple t = product(t1, t2);

    const AlgebraElement a1 = random_self_adjoint(rng, t1.algebra());
    const AlgebraElement a2 = random_self_adjoint(rng, t2.algebra());
    const AlgebraElement a = tensor(a1, AlgebraElement::unit(t2.algebra())) + tensor(AlgebraElement::unit(t1.algebra()), a2);
    const double lhs = std::pow(op_norm(dirac_commutator(t, a)), 2);
    const double rhs = std::pow(op_norm(dirac_commutator(t1, a1)), 2) + std::pow(op_norm(dirac_commutator(t2, a2)), 2);
    pyth.record(std::abs(lhs - rhs) / std::max(1.0, rhs), tol);

    const std::size_t dim = 2 + rng.index(7);
    std::vector<Complex> signs(dim);
    for (std::size_t k = 0; k < dim; ++k) signs[k] = k % 2 == 0 ? 1.0 : -1.0;
    std::shuffle(signs.begin(), signs.end(), rng.engine());
    const ParityParts parts = parity_split(random_matrix(rng, dim, dim), ComplexMatrix::diagonal(signs));
    parity.record(std::max(op_norm(parts.odd), op_norm(parts.even)) - op_norm(parts.odd + parts.even), tol);

    const AlgebraElement b = random_self_adjoint(rng, t.algebra());
    const State phi2 = random_state(rng, t2.algebra());
    const AlgebraElement sliced = slice_map(b, phi2, Factor::kSecond);
    const ComplexMatrix d1_id = tensor(t1.dirac().matrix(), ComplexMatrix::identity(t2.hilbert_dim()));
    slice.record(op_norm(dirac_commutator(t1, sliced)) - op_norm(commutator(d1_id, t.rep()(b))), tol);
  }
  r.computed = {{"norm_pythagoras", pyth.json()}, {"odd_even", parity.json()}, {"slice", slice.json()}};
  r.pass = pyth.violations == 0 && parity.violations == 0 && slice.violations == 0;
  return r;
}

ExperimentReport khomology_experiment(const ExperimentParams& params) {
  const double tol = params.tol.value_or(1e-8);
  const double lambda = positive(params.lambda, 1.0, "lambda");
  const double mu = positive(params.mu, 1.0, "mu");
  ExperimentReport r = base("khomology", tol);
  r.inputs = {{"lambda", lambda}, {"mu", mu}};
  const PureC2 c2;
  struct Row {
    std::string name;
    FredholmModule module;
    std::pair<double, double> expected;
  };
  const std::vector<Row> rows{
      {"F+", pullback_module(Character::coordinate(c2.algebra, 0)), {1.0, 0.0}},
      {"F-", pullback_module(Character::coordinate(c2.algebra, 1)), {0.0, 1.0}},
      {"F1", fredholm_module(two_point(lambda)), {1.0, -1.0}},
      {"F2", fredholm_module(amplified_two_point(mu)), {1.0, 1.0}},
  };
  Json table = Json::array();
  Json expected = Json::array();
  r.pass = true;
  for (const Row& row : rows) {
    const auto [plus, minus] = pairing_vector(row.module);
    table.push_back({{"module", row.name}, {"pairings", {{"p+", plus}, {"p-", minus}}}});
    expected.push_back({{"module", row.name}, {"pairings", {{"p+", row.expected.first}, {"p-", row.expected.second}}}});
    r.pass = r.pass && std::abs(plus - row.expected.first) <= tol && std::abs(minus - row.expected.second) <= tol;
  }
  const FiniteAlgebra c1 = FiniteAlgebra::commutative(1);
  const double rank = chern_pairing(pullback_module(Character::coordinate(c1, 0)),
                                    Projection::scalar(AlgebraElement::unit(c1)));
  r.pass = r.pass && std::abs(rank - 1.0) <= tol;
  r.claimed = {{"table", expected}, {"rank_over_C", 1}};
  r.computed = {{"table", table}, {"rank_over_C", rank}};
  return r;
}

ExperimentReport two_sheeted_experiment(const ExperimentParams& params) {
  const double lambda = positive(params.lambda, 2.0, "lambda");
  const std::size_t n = params.n.value_or(5);
  const double tol = params.tol.value_or(1e-5);
  if (n < 3) throw NcgError(ErrorKind::kInvalidInput, "two-sheeted-line: n must be at least 3");
  ExperimentReport r = base("two-sheeted-line", tol);
  r.inputs = {{"lambda", lambda}, {"n", n}, {"h", 1.0}};
  const PureC2 c2;
  const SpectralTriple t = product(two_point(lambda), two_sheeted_line(n, 1.0));
  const FiniteAlgebra line = FiniteAlgebra::commutative(n);
  const DistanceOptions opts{.tol = tol * 0.1};
  std::vector<std::vector<double>> lower(n, std::vector<double>(n));
  double worst = 0.0;
  double worst_diag = 0.0;
  bool all_finite = true;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const DistanceResult d = spectral_distance(t, product_state(c2.plus, State::coordinate(line, x)),
                                                 product_state(c2.minus, State::coordinate(line, y)), opts);
      all_finite = all_finite && d.status != DistanceStatus::kInfinite;
      lower[x][y] = d.lower;
      worst = std::max(worst, d.lower);
      if (x == y) worst_diag = std::max(worst_diag, d.upper);
    }
  }
  std::string relation = "d(phi+ (x) delta_x, phi- (x) delta_y) <= 1";
  bool pass = all_finite && worst <= 1.0 + tol;
  if (lambda > 1.0) {
    relation += " and d(phi+ (x) delta_x, phi- (x) delta_x) < lambda";
    pass = pass && worst_diag < lambda;
  }
  r.claimed = relation;
  r.computed = {{"max_lower", worst}, {"max_diagonal_upper", worst_diag}, {"distances", lower}};
  r.pass = pass;
  return r;
}

const std::map<std::string, Runner, std::less<>>& registry() {
  static const std::map<std::string, Runner, std::less<>> runners{
      {"amplified-two-point", amplified_experiment},
      {"khomology", khomology_experiment},
      {"lemmas", lemmas_experiment},
      {"prop-bound", prop_bound_experiment},
      {"prop-indep", prop_indep_experiment},
      {"pullback-infinite", pullback_experiment},
      {"theorem1", theorem1_experiment},
      {"two-point", two_point_experiment},
      {"two-sheeted-line", two_sheeted_experiment},
      {"wasserstein-rsquare", wasserstein_experiment},
  };
  return runners;
}

}  // namespace

Json to_json(const ExperimentReport& r, bool with_runtime) {
  Json out = {{"experiment_id", r.experiment_id},
              {"inputs", r.inputs},
              {"claimed", r.claimed},
              {"computed", r.computed},
              {"pass", r.pass},
              {"tolerance", r.tolerance}};
  if (with_runtime) out["runtime"] = r.runtime;
  return out;
}

const std::vector<std::string>& experiment_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& [id, _] : registry()) out.push_back(id);
    return out;
  }();
  return ids;
}

bool is_experiment(std::string_view id) { return registry().find(id) != registry().end(); }

ExperimentReport run_experiment(std::string_view id, const ExperimentParams& params) {
  const auto it = registry().find(id);
  if (it == registry().end()) throw NcgError(ErrorKind::kInvalidInput, "unknown experiment \"" + std::string(id) + "\"");
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport r = it->second(params);
  r.runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

SweepOutput run_sweep(std::string_view id, const ExperimentParams& params) {
  if (id != "wasserstein-rsquare") throw NcgError(ErrorKind::kInvalidInput, "no sweep named \"" + std::string(id) + "\"");
  const auto start = std::chrono::steady_clock::now();
  const std::size_t steps = params.lambda_steps.value_or(20);
  if (steps == 0) throw NcgError(ErrorKind::kInvalidInput, "lambda-steps must be positive");
  const double tol = params.tol.value_or(1e-9);
  std::vector<double> lambdas;
  for (std::size_t k = 1; k <= steps; ++k) lambdas.push_back(static_cast<double>(k) / static_cast<double>(steps));

  SweepOutput out;
  out.report = base("wasserstein-rsquare", tol);
  out.report.inputs = {{"lambda_steps", steps}};
  out.report.claimed = "ratio = lambda + sqrt(2) (1 - lambda), decreasing from sqrt(2) to 1";
  std::ostringstream csv;
  csv.precision(17);
  csv << "lambda,W1,W2,W,ratio,k_lambda\n";
  bool pass = true;
  double previous = kInfinity;
  double max_err = 0.0;
  for (const SquareSweepRow& row : square_sweep(lambdas)) {
    const double k = k_lambda(row.lambda);
    csv << row.lambda << ',' << row.w_first << ',' << row.w_second << ',' << row.w_product << ',' << row.ratio << ','
        << k << '\n';
    max_err = std::max(max_err, std::abs(row.ratio - k));
    pass = pass && std::abs(row.ratio - k) <= tol && row.ratio < previous + tol;
    previous = row.ratio;
  }
  out.report.computed = {{"max_ratio_error", max_err}, {"rows", lambdas.size()}};
  out.report.pass = pass;
  out.csv = csv.str();
  out.report.runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace ncg
