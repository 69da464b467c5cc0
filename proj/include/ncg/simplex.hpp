#pragma once

#include <cstddef>
#include <vector>

namespace ncg {

/// minimize c^T x subject to A x = b, x >= 0. A is row-major rows x cols.
struct LinearProgram {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> c;

  double& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

struct LpSolution {
  LpStatus status = LpStatus::kIterationLimit;
  std::vector<double> x;
  double objective = 0.0;
};

/// Two-phase dense tableau simplex. Columns that already form an identity
/// block (e.g. slacks) seed the starting basis, so artificial variables are
/// only added for the remaining rows. Dantzig pricing, switching to Bland's
/// rule after a run of degenerate pivots.
LpSolution solve_lp(const LinearProgram& lp);

}  // namespace ncg
