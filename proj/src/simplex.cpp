#include "ncg/simplex.hpp"

#include <cmath>
#include <limits>

#include "ncg/error.hpp"

namespace ncg {

namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-11;

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), t_((rows + 1) * (cols + 1), 0.0) {}

  double& at(std::size_t i, std::size_t j) { return t_[i * (cols_ + 1) + j]; }
  double& rhs(std::size_t i) { return at(i, cols_); }
  /// Row `rows_` holds reduced costs; its rhs holds minus the objective.
  double& cost(std::size_t j) { return at(rows_, j); }

  void pivot(std::size_t r, std::size_t c) {
    const std::size_t w = cols_ + 1;
    double* pr = &t_[r * w];
    const double inv = 1.0 / pr[c];
    for (std::size_t j = 0; j < w; ++j) pr[j] *= inv;
    pr[c] = 1.0;
    for (std::size_t i = 0; i <= rows_; ++i) {
      if (i == r) continue;
      double* pi = &t_[i * w];
      const double f = pi[c];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < w; ++j) pi[j] -= f * pr[j];
      pi[c] = 0.0;
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> t_;
};

enum class PhaseResult { kOptimal, kUnbounded, kIterationLimit };

PhaseResult run_phase(Tableau& t, std::vector<std::size_t>& basis, std::size_t allowed_cols) {
  const std::size_t m = t.rows();
  const std::size_t max_iters = 50 * (m + allowed_cols) + 1000;
  std::size_t degenerate_run = 0;
  for (std::size_t iter = 0; iter < max_iters; ++iter) {
    const bool bland = degenerate_run > 50;
    std::size_t enter = allowed_cols;
    double best = -kCostTol;
    for (std::size_t j = 0; j < allowed_cols; ++j) {
      const double d = t.cost(j);
      if (d < best) {
        enter = j;
        best = d;
        if (bland) break;
      }
    }
    if (enter == allowed_cols) return PhaseResult::kOptimal;

    std::size_t leave = m;
    double ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      const double a = t.at(i, enter);
      if (a <= kPivotTol) continue;
      const double r = t.rhs(i) / a;
      if (r < ratio - 1e-14 || (r <= ratio + 1e-14 && leave < m && basis[i] < basis[leave])) {
        ratio = r;
        leave = i;
      }
    }
    if (leave == m) return PhaseResult::kUnbounded;
    degenerate_run = ratio <= 1e-14 ? degenerate_run + 1 : 0;
    t.pivot(leave, enter);
    basis[leave] = enter;
  }
  return PhaseResult::kIterationLimit;
}

void load_costs(Tableau& t, const std::vector<std::size_t>& basis, const std::vector<double>& costs) {
  const std::size_t m = t.rows();
  const std::size_t n = t.cols();
  for (std::size_t j = 0; j < n; ++j) t.cost(j) = costs[j];
  t.at(m, n) = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double cb = costs[basis[i]];
    if (cb == 0.0) continue;
    for (std::size_t j = 0; j <= n; ++j) t.at(m, j) -= cb * t.at(i, j);
  }
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
  const std::size_t m = lp.rows;
  const std::size_t n = lp.cols;
  if (lp.a.size() != m * n || lp.b.size() != m || lp.c.size() != n) {
    throw NcgError(ErrorKind::kDimensionMismatch, "solve_lp: inconsistent program dimensions");
  }

  std::vector<double> a = lp.a;
  std::vector<double> b = lp.b;
  for (std::size_t i = 0; i < m; ++i) {
    if (b[i] < 0.0) {
      b[i] = -b[i];
      for (std::size_t j = 0; j < n; ++j) a[i * n + j] = -a[i * n + j];
    }
  }

  // Reuse identity columns as the initial basis where possible.
  std::vector<std::size_t> basis(m, n + m);
  std::vector<bool> column_used(n, false);
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t row = m;
    bool unit = true;
    for (std::size_t i = 0; i < m && unit; ++i) {
      const double v = a[i * n + j];
      if (v == 0.0) continue;
      if (v == 1.0 && row == m) {
        row = i;
      } else {
        unit = false;
      }
    }
    if (unit && row < m && basis[row] == n + m) {
      basis[row] = j;
      column_used[j] = true;
    }
  }
  std::vector<std::size_t> artificial_rows;
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] == n + m) artificial_rows.push_back(i);
  }
  const std::size_t total = n + artificial_rows.size();

  Tableau t(m, total);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t.at(i, j) = a[i * n + j];
    t.rhs(i) = b[i];
  }
  for (std::size_t k = 0; k < artificial_rows.size(); ++k) {
    t.at(artificial_rows[k], n + k) = 1.0;
    basis[artificial_rows[k]] = n + k;
  }

  LpSolution out;
  if (!artificial_rows.empty()) {
    std::vector<double> phase1(total, 0.0);
    for (std::size_t k = n; k < total; ++k) phase1[k] = 1.0;
    load_costs(t, basis, phase1);
    const PhaseResult r = run_phase(t, basis, total);
    if (r == PhaseResult::kIterationLimit) {
      out.status = LpStatus::kIterationLimit;
      return out;
    }
    double bscale = 1.0;
    for (double v : b) bscale = std::max(bscale, std::abs(v));
    if (-t.at(m, total) > 1e-9 * bscale) {
      out.status = LpStatus::kInfeasible;
      return out;
    }
    // Drive zero-level artificials out of the basis; rows with no real
    // pivot left are redundant and keep their artificial at zero.
    for (std::size_t i = 0; i < m; ++i) {
      if (basis[i] < n) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (std::abs(t.at(i, j)) > 1e-9) {
          t.pivot(i, j);
          basis[i] = j;
          break;
        }
      }
    }
  }

  std::vector<double> phase2(total, 0.0);
  for (std::size_t j = 0; j < n; ++j) phase2[j] = lp.c[j];
  load_costs(t, basis, phase2);
  const PhaseResult r = run_phase(t, basis, n);
  if (r == PhaseResult::kUnbounded) {
    out.status = LpStatus::kUnbounded;
    return out;
  }
  if (r == PhaseResult::kIterationLimit) {
    out.status = LpStatus::kIterationLimit;
    return out;
  }
  out.status = LpStatus::kOptimal;
  out.x.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) out.x[basis[i]] = std::max(t.rhs(i), 0.0);
  }
  out.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) out.objective += lp.c[j] * out.x[j];
  return out;
}

}  // namespace ncg
