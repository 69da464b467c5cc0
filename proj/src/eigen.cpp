#include "ncg/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ncg/error.hpp"

namespace ncg {

namespace {

constexpr int kMaxSweeps = 100;

double off_diagonal_norm2(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (i != j) s += std::norm(a(i, j));
    }
  }
  return s;
}

}  // namespace

HermitianEigen eigh(const ComplexMatrix& input, bool want_vectors) {
  if (!input.is_square()) {
    throw NcgError(ErrorKind::kDimensionMismatch, "eigh: matrix is not square");
  }
  if (!input.all_finite()) {
    throw NcgError(ErrorKind::kInvalidInput, "eigh: non-finite entries");
  }
  const std::size_t n = input.rows();
  ComplexMatrix a = input;
  // Work with the Hermitian part so roundoff asymmetry cannot leak in.
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex v = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = v;
      a(j, i) = std::conj(v);
    }
  }
  ComplexMatrix v = want_vectors ? ComplexMatrix::identity(n) : ComplexMatrix{};

  double scale = 0.0;
  for (const Complex& z : a.entries()) scale += std::norm(z);
  const double threshold = std::max(scale, 1e-300) * 1e-34;

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm2(a) <= threshold) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // Negligible entries are dropped rather than rotated: for subnormal
        // apq the phase apq / r is no longer unimodular.
        if (r < 1e-18 * (std::abs(app) + std::abs(aqq)) || r * r <= threshold * 1e-20) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        // Phase e^{-i theta} on q makes a(p,q) real, then a real rotation zeroes it.
        const Complex phase = apq / r;
        const double theta = (aqq - app) / (2.0 * r);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // U restricted to (p,q): [[c, s], [-s conj(phase), c conj(phase)]].
        const Complex u_pp = c;
        const Complex u_pq = s;
        const Complex u_qp = -s * std::conj(phase);
        const Complex u_qq = c * std::conj(phase);
        // a <- a U (columns)
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * u_pp + akq * u_qp;
          a(k, q) = akp * u_pq + akq * u_qq;
        }
        // a <- U^H a (rows)
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(u_pp) * apk + std::conj(u_qp) * aqk;
          a(q, k) = std::conj(u_pq) * apk + std::conj(u_qq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        if (want_vectors) {
          for (std::size_t k = 0; k < n; ++k) {
            const Complex vkp = v(k, p);
            const Complex vkq = v(k, q);
            v(k, p) = vkp * u_pp + vkq * u_qp;
            v(k, q) = vkp * u_pq + vkq * u_qq;
          }
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  HermitianEigen out;
  out.values.reserve(n);
  for (std::size_t i : order) out.values.push_back(a(i, i).real());
  if (want_vectors) {
    out.vectors = ComplexMatrix(n, n);
    for (std::size_t col = 0; col < n; ++col) {
      for (std::size_t k = 0; k < n; ++k) out.vectors(k, col) = v(k, order[col]);
    }
  }
  return out;
}

std::vector<double> eigvalsh(const ComplexMatrix& a) { return eigh(a, false).values; }

}  // namespace ncg
