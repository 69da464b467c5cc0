#include "ncg/wasserstein.hpp"

#include <cmath>
#include <limits>

#include "ncg/error.hpp"
#include "ncg/simplex.hpp"

namespace ncg {

namespace {

constexpr double kMetricTol = 1e-12;
constexpr double kGapTol = 1e-9;

}  // namespace

FiniteMetricSpace FiniteMetricSpace::make(std::vector<std::string> labels, std::vector<std::vector<double>> coords,
                                          std::vector<std::vector<double>> dist) {
  const std::size_t n = dist.size();
  if (n == 0) throw NcgError(ErrorKind::kInvalidInput, "metric space: no points");
  if (labels.size() != n) throw NcgError(ErrorKind::kDimensionMismatch, "metric space: label count");
  if (!coords.empty() && coords.size() != n) throw NcgError(ErrorKind::kDimensionMismatch, "metric space: coordinate count");
  for (const auto& row : dist) {
    if (row.size() != n) throw NcgError(ErrorKind::kDimensionMismatch, "metric space: distance matrix not square");
    for (double v : row) {
      if (!std::isfinite(v) || v < 0.0) throw NcgError(ErrorKind::kInvalidInput, "metric space: distances must be finite and nonnegative");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (dist[i][i] != 0.0) throw NcgError(ErrorKind::kInvalidInput, "metric space: nonzero diagonal");
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(dist[i][j] - dist[j][i]) > kMetricTol) throw NcgError(ErrorKind::kInvalidInput, "metric space: asymmetric distances");
      for (std::size_t k = 0; k < n; ++k) {
        if (dist[i][k] > dist[i][j] + dist[j][k] + kMetricTol) {
          throw NcgError(ErrorKind::kInvalidInput, "metric space: triangle inequality fails");
        }
      }
    }
  }
  return FiniteMetricSpace(std::move(labels), std::move(coords), std::move(dist));
}

FiniteMetricSpace FiniteMetricSpace::euclidean(std::vector<std::vector<double>> points) {
  const std::size_t n = points.size();
  std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    if (points[i].size() != points[0].size()) throw NcgError(ErrorKind::kDimensionMismatch, "euclidean: mixed dimensions");
    for (std::size_t j = 0; j < i; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < points[i].size(); ++k) {
        const double d = points[i][k] - points[j][k];
        s += d * d;
      }
      dist[i][j] = dist[j][i] = std::sqrt(s);
    }
  }
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
  return make(std::move(labels), std::move(points), std::move(dist));
}

FiniteMetricSpace product_space(const FiniteMetricSpace& s1, const FiniteMetricSpace& s2) {
  const std::size_t n1 = s1.size();
  const std::size_t n2 = s2.size();
  const std::size_t n = n1 * n2;
  std::vector<std::string> labels(n);
  std::vector<std::vector<double>> coords;
  const bool with_coords = !s1.coords().empty() && !s2.coords().empty();
  if (with_coords) coords.resize(n);
  std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      const std::size_t p = i * n2 + j;
      labels[p] = "(" + s1.labels()[i] + "," + s2.labels()[j] + ")";
      if (with_coords) {
        coords[p] = s1.coords()[i];
        coords[p].insert(coords[p].end(), s2.coords()[j].begin(), s2.coords()[j].end());
      }
      for (std::size_t k = 0; k < n1; ++k) {
        for (std::size_t l = 0; l < n2; ++l) {
          dist[p][k * n2 + l] = std::hypot(s1.dist(i, k), s2.dist(j, l));
        }
      }
    }
  }
  return FiniteMetricSpace::make(std::move(labels), std::move(coords), std::move(dist));
}

Measure Measure::make(std::vector<double> weights) {
  if (weights.empty()) throw NcgError(ErrorKind::kInvalidInput, "measure: no points");
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) throw NcgError(ErrorKind::kInvalidInput, "measure: weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > kMetricTol) throw NcgError(ErrorKind::kInvalidInput, "measure: weights must sum to 1");
  return Measure(std::move(weights));
}

Measure Measure::dirac(std::size_t n, std::size_t i) {
  if (i >= n) throw NcgError(ErrorKind::kInvalidInput, "measure: dirac point out of range");
  std::vector<double> w(n, 0.0);
  w[i] = 1.0;
  return Measure(std::move(w));
}

Measure product_measure(const Measure& m1, const Measure& m2) {
  std::vector<double> w;
  w.reserve(m1.size() * m2.size());
  for (double a : m1.weights()) {
    for (double b : m2.weights()) w.push_back(a * b);
  }
  return Measure::make(std::move(w));
}

W1Result w1(const FiniteMetricSpace& space, const Measure& mu, const Measure& nu) {
  const std::size_t n = space.size();
  if (mu.size() != n || nu.size() != n) throw NcgError(ErrorKind::kDimensionMismatch, "w1: measures live on a different space");

  // Transport problem over plan[i][j] >= 0 with both marginals fixed.
  LinearProgram primal;
  primal.rows = 2 * n;
  primal.cols = n * n;
  primal.a.assign(primal.rows * primal.cols, 0.0);
  primal.b.resize(primal.rows);
  primal.c.resize(primal.cols);
  for (std::size_t i = 0; i < n; ++i) {
    primal.b[i] = mu[i];
    primal.b[n + i] = nu[i];
    for (std::size_t j = 0; j < n; ++j) {
      primal.at(i, i * n + j) = 1.0;
      primal.at(n + j, i * n + j) = 1.0;
      primal.c[i * n + j] = space.dist(i, j);
    }
  }
  const LpSolution ps = solve_lp(primal);
  if (ps.status != LpStatus::kOptimal) throw NcgError(ErrorKind::kInvariantViolation, "w1: transport LP did not reach optimality");

  // Potential problem: f_0 = 0, f_i = p_i - q_i for i >= 1, one slack per
  // ordered pair: f_i - f_j + s_ij = d_ij.
  const std::size_t free_vars = n - 1;
  const std::size_t pairs = n * (n - 1);
  LinearProgram dual;
  dual.rows = pairs;
  dual.cols = 2 * free_vars + pairs;
  dual.a.assign(dual.rows * dual.cols, 0.0);
  dual.b.resize(dual.rows);
  dual.c.assign(dual.cols, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    const double g = mu[i] - nu[i];
    dual.c[i - 1] = -g;
    dual.c[free_vars + i - 1] = g;
  }
  std::size_t row = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (i > 0) {
        dual.at(row, i - 1) += 1.0;
        dual.at(row, free_vars + i - 1) -= 1.0;
      }
      if (j > 0) {
        dual.at(row, j - 1) -= 1.0;
        dual.at(row, free_vars + j - 1) += 1.0;
      }
      dual.at(row, 2 * free_vars + row) = 1.0;
      dual.b[row] = space.dist(i, j);
      ++row;
    }
  }
  const LpSolution ds = solve_lp(dual);
  if (ds.status != LpStatus::kOptimal) throw NcgError(ErrorKind::kInvariantViolation, "w1: potential LP did not reach optimality");

  W1Result out;
  out.primal_value = ps.objective;
  out.potential.assign(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) out.potential[i] = ds.x[i - 1] - ds.x[free_vars + i - 1];
  out.dual_value = 0.0;
  for (std::size_t i = 0; i < n; ++i) out.dual_value += out.potential[i] * (mu[i] - nu[i]);
  out.plan.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out.plan[i][j] = std::max(0.0, ps.x[i * n + j]);
  }
  if (std::abs(out.primal_value - out.dual_value) > kGapTol) {
    throw NcgError(ErrorKind::kInvariantViolation, "w1: duality gap above tolerance");
  }
  out.value = out.primal_value;
  return out;
}

Measure segment_measure(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw NcgError(ErrorKind::kInvalidInput, "segment_measure: lambda outside [0,1]");
  return Measure::make({1.0 - lambda, lambda});
}

double k_lambda(double lambda) { return lambda + std::sqrt(2.0) * (1.0 - lambda); }

std::vector<SquareSweepRow> square_sweep(const std::vector<double>& lambdas) {
  const FiniteMetricSpace segment = FiniteMetricSpace::euclidean({{0.0}, {1.0}});
  const FiniteMetricSpace square = product_space(segment, segment);
  const Measure origin = Measure::dirac(2, 0);
  const Measure origin2 = product_measure(origin, origin);
  std::vector<SquareSweepRow> rows;
  rows.reserve(lambdas.size());
  for (double lambda : lambdas) {
    const Measure m = segment_measure(lambda);
    const double w = w1(segment, m, origin).value;
    const double wp = w1(square, product_measure(m, m), origin2).value;
    const double base = std::hypot(w, w);
    rows.push_back({lambda, w, w, wp, base > 0.0 ? wp / base : std::numeric_limits<double>::quiet_NaN()});
  }
  return rows;
}

}  // namespace ncg
