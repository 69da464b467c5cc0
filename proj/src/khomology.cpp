#include "ncg/khomology.hpp"

#include <cmath>

#include "ncg/eigen.hpp"
#include "ncg/error.hpp"

namespace ncg {

FredholmModule FredholmModule::make(Representation rep, ComplexMatrix f, ComplexMatrix grading) {
  const std::size_t n = rep.hilbert_dim();
  if (f.rows() != n || f.cols() != n || grading.rows() != n || grading.cols() != n) {
    throw NcgError(ErrorKind::kDimensionMismatch, "FredholmModule: operator sizes do not match the Hilbert space");
  }
  if (!is_hermitian(f, kStructuralTol)) throw NcgError(ErrorKind::kInvariantViolation, "FredholmModule: F is not self-adjoint");
  if (!approx_equal(f * f, ComplexMatrix::identity(n), kStructuralTol)) {
    throw NcgError(ErrorKind::kInvariantViolation, "FredholmModule: F^2 != 1");
  }
  if (!is_grading(grading, kGradingTol)) throw NcgError(ErrorKind::kInvariantViolation, "FredholmModule: invalid grading");
  if (max_abs(anticommutator(grading, f)) > kGradingTol) {
    throw NcgError(ErrorKind::kInvariantViolation, "FredholmModule: grading does not anticommute with F");
  }
  for (const auto& block : rep.images()) {
    for (const ComplexMatrix& img : block) {
      if (max_abs(commutator(grading, img)) > kGradingTol) {
        throw NcgError(ErrorKind::kInvariantViolation, "FredholmModule: grading does not commute with the algebra");
      }
    }
  }
  return FredholmModule(std::move(rep), std::move(f), std::move(grading));
}

FredholmModule FredholmModule::conjugated(const ComplexMatrix& u) const {
  const ComplexMatrix uh = u.adjoint();
  return make(rep_.conjugated(u), u * f_ * uh, u * grading_ * uh);
}

Projection Projection::make(std::size_t n, std::vector<AlgebraElement> entries) {
  if (n == 0 || entries.size() != n * n) {
    throw NcgError(ErrorKind::kDimensionMismatch, "Projection: expected n*n entries");
  }
  const FiniteAlgebra alg = entries.front().algebra();
  for (const AlgebraElement& e : entries) {
    if (!(e.algebra() == alg)) throw NcgError(ErrorKind::kDimensionMismatch, "Projection: mixed algebras");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // p = p^*: p_ij = (p_ji)^*
      if (entries[i * n + j].max_abs_diff(entries[j * n + i].adjoint()) > kStructuralTol) {
        throw NcgError(ErrorKind::kInvariantViolation, "Projection: p is not self-adjoint");
      }
      // p = p^2: p_ij = sum_k p_ik p_kj
      AlgebraElement sq = AlgebraElement::zero(alg);
      for (std::size_t k = 0; k < n; ++k) sq += entries[i * n + k] * entries[k * n + j];
      if (sq.max_abs_diff(entries[i * n + j]) > kStructuralTol) {
        throw NcgError(ErrorKind::kInvariantViolation, "Projection: p is not idempotent");
      }
    }
  }
  return Projection(n, std::move(entries));
}

Projection Projection::scalar(const AlgebraElement& p) { return make(1, {p}); }

double chern_pairing(const FredholmModule& m, const Projection& p) {
  if (!(p.algebra().blocks() == m.algebra().blocks())) {
    throw NcgError(ErrorKind::kDimensionMismatch, "chern_pairing: projection over a different algebra");
  }
  const std::size_t h = m.hilbert_dim();
  const std::size_t n = p.n();
  // C^n (x) H ordering: block (i,j) of the amplified operator is pi(p_ij).
  ComplexMatrix pi_p(n * h, n * h);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) place_block(pi_p, m.rep()(p.entry(i, j)), i * h, j * h);
  }
  const ComplexMatrix id = ComplexMatrix::identity(n);
  const ComplexMatrix f = tensor(id, m.f());
  const ComplexMatrix gamma = tensor(id, m.grading());
  const Complex value = 0.5 * (gamma * f * commutator(f, pi_p)).trace();
  if (std::abs(value.imag()) > kNumericTol) {
    throw NcgError(ErrorKind::kInvariantViolation, "chern_pairing: pairing is not real");
  }
  return value.real();
}

std::pair<double, double> pairing_vector(const FredholmModule& m) {
  if (m.algebra().blocks() != std::vector<std::size_t>{1, 1}) {
    throw NcgError(ErrorKind::kUnsupported, "pairing_vector: module must be over C^2");
  }
  const FiniteAlgebra& alg = m.algebra();
  const Projection p_plus = Projection::scalar(AlgebraElement::from_values(alg, {1.0, 0.0}));
  const Projection p_minus = Projection::scalar(AlgebraElement::from_values(alg, {0.0, 1.0}));
  return {chern_pairing(m, p_plus), chern_pairing(m, p_minus)};
}

FredholmModule direct_sum(const FredholmModule& a, const FredholmModule& b) {
  if (!(a.algebra() == b.algebra())) throw NcgError(ErrorKind::kDimensionMismatch, "direct_sum: algebra mismatch");
  std::vector<std::vector<ComplexMatrix>> images;
  for (std::size_t blk = 0; blk < a.rep().images().size(); ++blk) {
    std::vector<ComplexMatrix> sum;
    for (std::size_t u = 0; u < a.rep().images()[blk].size(); ++u) {
      sum.push_back(ncg::direct_sum(a.rep().images()[blk][u], b.rep().images()[blk][u]));
    }
    images.push_back(std::move(sum));
  }
  return FredholmModule::make(Representation::make(a.algebra(), a.hilbert_dim() + b.hilbert_dim(), std::move(images)),
                              ncg::direct_sum(a.f(), b.f()), ncg::direct_sum(a.grading(), b.grading()));
}

namespace {

ComplexMatrix spectral_function(const ComplexMatrix& d, double (*fn)(double)) {
  const HermitianEigen eig = eigh(d);
  const std::size_t n = d.rows();
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double w = fn(eig.values[k]);
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vi = eig.vectors(i, k) * w;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vi * std::conj(eig.vectors(j, k));
    }
  }
  return out;
}

}  // namespace

ComplexMatrix bounded_transform(const ComplexMatrix& d) {
  if (!is_hermitian(d)) throw NcgError(ErrorKind::kInvalidInput, "bounded_transform: D must be self-adjoint");
  return spectral_function(d, [](double x) { return x / std::sqrt(1.0 + x * x); });
}

ComplexMatrix phase_of(const ComplexMatrix& d) {
  if (!is_hermitian(d)) throw NcgError(ErrorKind::kInvalidInput, "phase_of: D must be self-adjoint");
  for (double v : eigvalsh(d)) {
    if (std::abs(v) <= kStructuralTol) throw NcgError(ErrorKind::kInvalidInput, "phase_of: D is not invertible");
  }
  return spectral_function(d, [](double x) { return x > 0.0 ? 1.0 : -1.0; });
}

FredholmModule fredholm_module(const SpectralTriple& t) {
  if (!t.is_graded()) throw NcgError(ErrorKind::kInvalidInput, "fredholm_module: triple must be graded");
  return FredholmModule::make(t.rep(), phase_of(t.dirac().matrix()), *t.grading());
}

SpectralTriple as_triple(const FredholmModule& m) { return SpectralTriple::make(m.rep(), m.f(), m.grading()); }

}  // namespace ncg
