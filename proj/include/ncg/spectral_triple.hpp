#pragma once

#include <optional>

#include "ncg/algebra.hpp"
#include "ncg/matrix.hpp"

namespace ncg {

/// Tolerance for grading relations (gamma pi(a) = pi(a) gamma, gamma D = -D gamma).
inline constexpr double kGradingTol = 1e-10;

/// Finite spectral triple (A, H, D) with optional grading.
///
/// The representation need not be unital. It also need not be faithful, so
/// Fredholm modules built by pullback can be viewed as triples; their
/// distances then come out infinite.
class SpectralTriple {
 public:
  /// Throws NcgError when D is not self-adjoint, when sizes disagree, or when
  /// a supplied grading fails gamma = gamma^H, gamma^2 = 1, [gamma, pi(a)] = 0
  /// or {gamma, D} = 0.
  static SpectralTriple make(Representation rep, ComplexMatrix dirac, std::optional<ComplexMatrix> grading);

  const Representation& rep() const noexcept { return rep_; }
  const FiniteAlgebra& algebra() const noexcept { return rep_.algebra(); }
  const HermitianOperator& dirac() const noexcept { return dirac_; }
  const std::optional<ComplexMatrix>& grading() const noexcept { return grading_; }
  std::size_t hilbert_dim() const noexcept { return rep_.hilbert_dim(); }
  bool is_graded() const noexcept { return grading_.has_value(); }
  bool unital() const noexcept { return unital_; }

  /// Same data with D replaced by s D.
  SpectralTriple scaled(double s) const;

 private:
  SpectralTriple(Representation rep, HermitianOperator dirac, std::optional<ComplexMatrix> grading, bool unital)
      : rep_(std::move(rep)), dirac_(std::move(dirac)), grading_(std::move(grading)), unital_(unital) {}

  Representation rep_;
  HermitianOperator dirac_;
  std::optional<ComplexMatrix> grading_;
  bool unital_;
};

/// Every algebra block is represented and pi(e) = 1 within 1e-12.
bool is_unital(const SpectralTriple& t);

/// Product triple: A1 (x) A2 on H1 (x) H2 with D = D1 (x) 1 + gamma1 (x) D2.
/// The result is graded by gamma1 (x) gamma2 when t2 is graded.
SpectralTriple product(const SpectralTriple& t1, const SpectralTriple& t2);

/// Doubling H' = H + H with pi'(a) = diag(pi(a), 0), D' = [[D, 1], [1, -D]]
/// and, if t is graded, gamma' = diag(gamma, -gamma).
SpectralTriple amplify(const SpectralTriple& t);

/// [D, pi(a)].
ComplexMatrix dirac_commutator(const SpectralTriple& t, const AlgebraElement& a);

}  // namespace ncg
