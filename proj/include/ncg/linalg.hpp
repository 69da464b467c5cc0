#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ncg/matrix.hpp"

namespace ncg {

/// Cholesky factor of a Hermitian positive-definite matrix, a = L L^H.
class Cholesky {
 public:
  /// Returns std::nullopt when `a` is not numerically positive definite.
  static std::optional<Cholesky> factor(const ComplexMatrix& a);

  double log_det() const;
  ComplexMatrix inverse() const;

 private:
  explicit Cholesky(ComplexMatrix l) : l_(std::move(l)) {}
  ComplexMatrix l_;
};

/// Dense real symmetric matrix, row-major, used for small normal equations.
struct RealMatrix {
  std::size_t n = 0;
  std::vector<double> a;

  explicit RealMatrix(std::size_t dim = 0) : n(dim), a(dim * dim, 0.0) {}
  double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

/// Solves h x = rhs for symmetric positive-definite h. Adds a diagonal
/// shift that grows until the factorization succeeds.
std::vector<double> solve_spd(const RealMatrix& h, std::span<const double> rhs);

}  // namespace ncg
