#include "ncg/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ncg/eigen.hpp"
#include "ncg/error.hpp"

namespace ncg {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw NcgError(ErrorKind::kDimensionMismatch,
                   std::string(op) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                       std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                       std::to_string(b.cols()));
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Complex{0.0, 0.0}) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw NcgError(ErrorKind::kInvalidInput, "ComplexMatrix: expected " + std::to_string(rows_ * cols_) +
                                                 " entries, got " + std::to_string(entries_.size()));
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw NcgError(ErrorKind::kInvalidInput, "ComplexMatrix: ragged literal");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<double> diag) {
  std::vector<Complex> d(diag.begin(), diag.end());
  return diagonal(std::span<const Complex>(d));
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  }
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  }
  return out;
}

Complex ComplexMatrix::trace() const {
  if (!is_square()) throw NcgError(ErrorKind::kDimensionMismatch, "trace: matrix is not square");
  Complex t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

bool ComplexMatrix::all_finite() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator+");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator-");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (Complex& z : entries_) z *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator-(ComplexMatrix a) { return a *= -1.0; }
ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw NcgError(ErrorKind::kDimensionMismatch, "matrix product: inner dimensions differ");
  }
  ComplexMatrix out(a.rows(), b.cols());
  const std::size_t n = b.cols();
  // Plain real arithmetic: std::complex multiplication carries NaN recovery
  // branches that dominate at these sizes.
  const double* pb = reinterpret_cast<const double*>(b.entries().data());
  double* po = reinterpret_cast<double*>(out.entries().data());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double* row = po + 2 * i * n;
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      const double ar = aik.real();
      const double ai = aik.imag();
      if (ar == 0.0 && ai == 0.0) continue;
      const double* bk = pb + 2 * k * n;
      for (std::size_t j = 0; j < n; ++j) {
        const double br = bk[2 * j];
        const double bi = bk[2 * j + 1];
        row[2 * j] += ar * br - ai * bi;
        row[2 * j + 1] += ar * bi + ai * br;
      }
    }
  }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t k = 0; k < a.entries().size(); ++k) {
    m = std::max(m, std::abs(a.entries()[k] - b.entries()[k]));
  }
  return m;
}

double max_abs(const ComplexMatrix& a) {
  double m = 0.0;
  for (const Complex& z : a.entries()) m = std::max(m, std::abs(z));
  return m;
}

double frobenius_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (const Complex& z : a.entries()) s += std::norm(z);
  return std::sqrt(s);
}

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return max_abs_diff(a, b) <= tol;
}

double real_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "real_inner");
  double s = 0.0;
  for (std::size_t k = 0; k < a.entries().size(); ++k) {
    s += a.entries()[k].real() * b.entries()[k].real() + a.entries()[k].imag() * b.entries()[k].imag();
  }
  return s;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (!m.is_square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = i; j < m.cols(); ++j) {
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
    }
  }
  return true;
}

bool is_grading(const ComplexMatrix& gamma, double tol) {
  if (!is_hermitian(gamma, tol)) return false;
  return approx_equal(gamma * gamma, ComplexMatrix::identity(gamma.rows()), tol);
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i1 = 0; i1 < a.rows(); ++i1) {
    for (std::size_t j1 = 0; j1 < a.cols(); ++j1) {
      const Complex aij = a(i1, j1);
      if (aij == Complex{}) continue;
      for (std::size_t i2 = 0; i2 < b.rows(); ++i2) {
        for (std::size_t j2 = 0; j2 < b.cols(); ++j2) {
          out(i1 * b.rows() + i2, j1 * b.cols() + j2) = aij * b(i2, j2);
        }
      }
    }
  }
  return out;
}

ComplexMatrix commutator(const ComplexMatrix& d, const ComplexMatrix& a) {
  if (!d.is_square() || !a.is_square() || d.rows() != a.rows()) {
    throw NcgError(ErrorKind::kDimensionMismatch, "commutator: operands must be square of equal size");
  }
  return d * a - a * d;
}

ComplexMatrix anticommutator(const ComplexMatrix& d, const ComplexMatrix& a) {
  if (!d.is_square() || !a.is_square() || d.rows() != a.rows()) {
    throw NcgError(ErrorKind::kDimensionMismatch, "anticommutator: operands must be square of equal size");
  }
  return d * a + a * d;
}

double op_norm(const ComplexMatrix& m) {
  if (!m.all_finite()) throw NcgError(ErrorKind::kInvalidInput, "op_norm: non-finite entries");
  if (m.empty()) return 0.0;
  // Use the smaller Gram matrix; both share the nonzero spectrum.
  const ComplexMatrix gram = m.rows() < m.cols() ? m * m.adjoint() : m.adjoint() * m;
  const std::vector<double> ev = eigvalsh(gram);
  return std::sqrt(std::max(ev.back(), 0.0));
}

double trace_norm(const ComplexMatrix& m) {
  if (!m.all_finite()) throw NcgError(ErrorKind::kInvalidInput, "trace_norm: non-finite entries");
  const std::size_t r = m.rows();
  const std::size_t c = m.cols();
  ComplexMatrix dilation(r + c, r + c);
  place_block(dilation, m, 0, r);
  place_block(dilation, m.adjoint(), r, 0);
  double total = 0.0;
  for (double v : eigvalsh(dilation)) total += std::abs(v);
  return 0.5 * total;
}

ParityParts parity_split(const ComplexMatrix& m, const ComplexMatrix& gamma) {
  if (!gamma.is_square() || !m.is_square() || m.rows() != gamma.rows()) {
    throw NcgError(ErrorKind::kDimensionMismatch, "parity_split: dimension mismatch");
  }
  if (!is_grading(gamma)) throw NcgError(ErrorKind::kInvalidInput, "parity_split: gamma is not a grading");
  ComplexMatrix even = 0.5 * (m + gamma * m * gamma);
  ComplexMatrix odd = m - even;
  return {std::move(even), std::move(odd)};
}

ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
  place_block(out, a, 0, 0);
  place_block(out, b, a.rows(), a.cols());
  return out;
}

void place_block(ComplexMatrix& target, const ComplexMatrix& block, std::size_t row, std::size_t col) {
  if (row + block.rows() > target.rows() || col + block.cols() > target.cols()) {
    throw NcgError(ErrorKind::kDimensionMismatch, "place_block: block does not fit");
  }
  for (std::size_t i = 0; i < block.rows(); ++i) {
    for (std::size_t j = 0; j < block.cols(); ++j) target(row + i, col + j) = block(i, j);
  }
}

ComplexMatrix permute(const ComplexMatrix& m, std::span<const std::size_t> perm) {
  if (!m.is_square() || perm.size() != m.rows()) {
    throw NcgError(ErrorKind::kDimensionMismatch, "permute: permutation size mismatch");
  }
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(perm[i], perm[j]) = m(i, j);
  }
  return out;
}

HermitianOperator HermitianOperator::make(ComplexMatrix m, double tol) {
  if (!m.all_finite()) throw NcgError(ErrorKind::kInvalidInput, "HermitianOperator: non-finite entries");
  if (!is_hermitian(m, tol)) {
    throw NcgError(ErrorKind::kInvariantViolation, "HermitianOperator: matrix is not self-adjoint");
  }
  ComplexMatrix sym = 0.5 * (m + m.adjoint());
  return HermitianOperator(std::move(sym));
}

}  // namespace ncg
