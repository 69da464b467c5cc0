#pragma once

// Reference computations written independently of the library, used as
// test oracles. Plain loops over std::complex, no shared code paths.

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "ncg/matrix.hpp"

namespace oracle {

using cx = std::complex<double>;
using Dense = std::vector<std::vector<cx>>;

inline Dense dense(const ncg::ComplexMatrix& m) {
  Dense d(m.rows(), std::vector<cx>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) d[i][j] = m(i, j);
  }
  return d;
}

/// Largest singular value by power iteration on m^H m, run until the
/// Rayleigh quotient moves by less than 1e-14 relative.
inline double power_norm(const ncg::ComplexMatrix& m) {
  const Dense a = dense(m);
  const std::size_t r = m.rows();
  const std::size_t c = m.cols();
  std::vector<cx> v(c);
  for (std::size_t j = 0; j < c; ++j) v[j] = cx(1.0 + 0.1 * static_cast<double>(j), 0.05 * static_cast<double>(j % 3));
  double sigma2 = 0.0;
  for (int it = 0; it < 200000; ++it) {
    std::vector<cx> w(r);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) w[i] += a[i][j] * v[j];
    }
    std::vector<cx> u(c);
    for (std::size_t j = 0; j < c; ++j) {
      for (std::size_t i = 0; i < r; ++i) u[j] += std::conj(a[i][j]) * w[i];
    }
    double nv = 0.0;
    double nu = 0.0;
    for (std::size_t j = 0; j < c; ++j) {
      nv += std::norm(v[j]);
      nu += std::norm(u[j]);
    }
    if (nu == 0.0) return 0.0;
    const double next = std::sqrt(nu / nv);
    for (std::size_t j = 0; j < c; ++j) v[j] = u[j] / std::sqrt(nu);
    if (it > 50 && std::abs(next - sigma2) <= 1e-14 * next) {
      sigma2 = next;
      break;
    }
    sigma2 = next;
  }
  return std::sqrt(sigma2);
}

/// Kronecker product straight from the index formula.
inline Dense kron(const Dense& a, const Dense& b) {
  const std::size_t ar = a.size(), ac = a[0].size(), br = b.size(), bc = b[0].size();
  Dense out(ar * br, std::vector<cx>(ac * bc));
  for (std::size_t i1 = 0; i1 < ar; ++i1)
    for (std::size_t i2 = 0; i2 < br; ++i2)
      for (std::size_t j1 = 0; j1 < ac; ++j1)
        for (std::size_t j2 = 0; j2 < bc; ++j2) out[i1 * br + i2][j1 * bc + j2] = a[i1][j1] * b[i2][j2];
  return out;
}

inline double max_diff(const Dense& a, const ncg::ComplexMatrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) m = std::max(m, std::abs(a[i][j] - b(i, j)));
  return m;
}

}  // namespace oracle
