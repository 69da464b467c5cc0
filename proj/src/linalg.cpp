#include "ncg/linalg.hpp"

#include <cmath>

#include "ncg/error.hpp"

namespace ncg {

std::optional<Cholesky> Cholesky::factor(const ComplexMatrix& a) {
  if (!a.is_square()) throw NcgError(ErrorKind::kDimensionMismatch, "Cholesky: matrix is not square");
  const std::size_t n = a.rows();
  ComplexMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j).real();
    for (std::size_t k = 0; k < j; ++k) d -= std::norm(l(j, k));
    if (!(d > 0.0) || !std::isfinite(d)) return std::nullopt;
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      Complex s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / ljj;
    }
  }
  return Cholesky(std::move(l));
}

double Cholesky::log_det() const {
  double s = 0.0;
  for (std::size_t i = 0; i < l_.rows(); ++i) s += 2.0 * std::log(l_(i, i).real());
  return s;
}

ComplexMatrix Cholesky::inverse() const {
  const std::size_t n = l_.rows();
  // Invert the lower-triangular factor, then a^{-1} = L^{-H} L^{-1}.
  ComplexMatrix linv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    linv(j, j) = 1.0 / l_(j, j);
    for (std::size_t i = j + 1; i < n; ++i) {
      Complex s = 0.0;
      for (std::size_t k = j; k < i; ++k) s -= l_(i, k) * linv(k, j);
      linv(i, j) = s / l_(i, i);
    }
  }
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      Complex s = 0.0;
      for (std::size_t k = i; k < n; ++k) s += std::conj(linv(k, i)) * linv(k, j);
      out(i, j) = s;
      out(j, i) = std::conj(s);
    }
  }
  return out;
}

std::vector<double> solve_spd(const RealMatrix& h, std::span<const double> rhs) {
  const std::size_t n = h.n;
  if (rhs.size() != n) throw NcgError(ErrorKind::kDimensionMismatch, "solve_spd: rhs size mismatch");
  double diag_scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) diag_scale = std::max(diag_scale, std::abs(h(i, i)));
  if (diag_scale == 0.0) diag_scale = 1.0;

  double shift = 0.0;
  for (int attempt = 0; attempt < 40; ++attempt) {
    RealMatrix l(n);
    bool ok = true;
    for (std::size_t j = 0; j < n && ok; ++j) {
      double d = h(j, j) + shift;
      for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
      if (!(d > 0.0)) {
        ok = false;
        break;
      }
      l(j, j) = std::sqrt(d);
      for (std::size_t i = j + 1; i < n; ++i) {
        double s = h(i, j);
        for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
        l(i, j) = s / l(j, j);
      }
    }
    if (ok) {
      std::vector<double> y(rhs.begin(), rhs.end());
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < i; ++k) y[i] -= l(i, k) * y[k];
        y[i] /= l(i, i);
      }
      for (std::size_t i = n; i-- > 0;) {
        for (std::size_t k = i + 1; k < n; ++k) y[i] -= l(k, i) * y[k];
        y[i] /= l(i, i);
      }
      return y;
    }
    shift = shift == 0.0 ? 1e-14 * diag_scale : shift * 10.0;
  }
  throw NcgError(ErrorKind::kInvalidInput, "solve_spd: matrix is not positive definite");
}

}  // namespace ncg
