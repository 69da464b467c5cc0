#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace ncg {

using Complex = std::complex<double>;

/// Tolerance for structural checks (hermiticity, gradings, projections).
inline constexpr double kStructuralTol = 1e-12;
/// Tolerance for derived numerical equalities.
inline constexpr double kNumericTol = 1e-10;

/// Dense complex matrix stored row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  /// Row-wise literal, e.g. {{0, 1}, {1, 0}}.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static ComplexMatrix diagonal(std::span<const Complex> diag);
  static ComplexMatrix diagonal(std::initializer_list<double> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return entries_.empty(); }

  Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  std::span<Complex> entries() noexcept { return entries_; }
  std::span<const Complex> entries() const noexcept { return entries_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  Complex trace() const;
  bool all_finite() const noexcept;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex s);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, Complex s);

/// Largest absolute entrywise difference; dimensions must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs(const ComplexMatrix& a);
double frobenius_norm(const ComplexMatrix& a);
bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol);

/// Re Tr(a^H b), the real Frobenius inner product.
double real_inner(const ComplexMatrix& a, const ComplexMatrix& b);

bool is_hermitian(const ComplexMatrix& m, double tol = kStructuralTol);
/// gamma = gamma^H and gamma^2 = 1 within tol.
bool is_grading(const ComplexMatrix& gamma, double tol = kStructuralTol);

/// Kronecker product: entry ((i1,i2),(j1,j2)) = a[i1,j1] * b[i2,j2].
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

/// d*a - a*d.
ComplexMatrix commutator(const ComplexMatrix& d, const ComplexMatrix& a);
/// d*a + a*d.
ComplexMatrix anticommutator(const ComplexMatrix& d, const ComplexMatrix& a);

/// Largest singular value, via the top eigenvalue of m^H m.
double op_norm(const ComplexMatrix& m);

/// Sum of singular values, via the spectrum of the Hermitian dilation [[0, m], [m^H, 0]].
double trace_norm(const ComplexMatrix& m);

struct ParityParts {
  ComplexMatrix even;
  ComplexMatrix odd;
};

/// even = (m + gamma m gamma)/2, odd = m - even.
ParityParts parity_split(const ComplexMatrix& m, const ComplexMatrix& gamma);

/// Block-diagonal direct sum diag(a, b).
ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b);

/// Copies `block` into `target` with its top-left corner at (row, col).
void place_block(ComplexMatrix& target, const ComplexMatrix& block, std::size_t row, std::size_t col);

/// p m p^T for the permutation matrix sending basis vector i to perm[i].
ComplexMatrix permute(const ComplexMatrix& m, std::span<const std::size_t> perm);

/// Self-adjoint operator on a finite-dimensional Hilbert space.
class HermitianOperator {
 public:
  /// Throws NcgError if m is not square or not Hermitian within tol.
  static HermitianOperator make(ComplexMatrix m, double tol = kStructuralTol);

  std::size_t dim() const noexcept { return matrix_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }

 private:
  explicit HermitianOperator(ComplexMatrix m) : matrix_(std::move(m)) {}
  ComplexMatrix matrix_;
};

}  // namespace ncg
