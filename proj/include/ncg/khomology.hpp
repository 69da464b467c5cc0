#pragma once

#include <utility>
#include <vector>

#include "ncg/algebra.hpp"
#include "ncg/matrix.hpp"
#include "ncg/spectral_triple.hpp"

namespace ncg {

/// Even Fredholm module (A, H, F, gamma) with F = F^*, F^2 = 1.
class FredholmModule {
 public:
  /// Throws NcgError unless F = F^H and F^2 = 1 within 1e-12 and gamma is a
  /// grading commuting with pi(A) and anticommuting with F within 1e-10.
  static FredholmModule make(Representation rep, ComplexMatrix f, ComplexMatrix grading);

  const Representation& rep() const noexcept { return rep_; }
  const FiniteAlgebra& algebra() const noexcept { return rep_.algebra(); }
  const ComplexMatrix& f() const noexcept { return f_; }
  const ComplexMatrix& grading() const noexcept { return grading_; }
  std::size_t hilbert_dim() const noexcept { return rep_.hilbert_dim(); }

  /// Conjugate (pi, F, gamma) by a unitary u.
  FredholmModule conjugated(const ComplexMatrix& u) const;

 private:
  FredholmModule(Representation rep, ComplexMatrix f, ComplexMatrix grading)
      : rep_(std::move(rep)), f_(std::move(f)), grading_(std::move(grading)) {}

  Representation rep_;
  ComplexMatrix f_;
  ComplexMatrix grading_;
};

/// Element p = p^* = p^2 of M_n(A), stored as an n x n array of algebra
/// elements in row-major order.
class Projection {
 public:
  /// Throws NcgError unless p is a projection within 1e-12.
  static Projection make(std::size_t n, std::vector<AlgebraElement> entries);
  /// The 1 x 1 projection with entry p.
  static Projection scalar(const AlgebraElement& p);

  std::size_t n() const noexcept { return n_; }
  const AlgebraElement& entry(std::size_t i, std::size_t j) const { return entries_.at(i * n_ + j); }
  const FiniteAlgebra& algebra() const { return entries_.front().algebra(); }

 private:
  Projection(std::size_t n, std::vector<AlgebraElement> entries) : n_(n), entries_(std::move(entries)) {}

  std::size_t n_;
  std::vector<AlgebraElement> entries_;
};

/// 1/2 Tr(gamma F [F, pi(p)]) on H (x) C^n.
double chern_pairing(const FredholmModule& m, const Projection& p);

/// (<m, p+>, <m, p->) for modules over C^2 with p+ = (1,0), p- = (0,1).
std::pair<double, double> pairing_vector(const FredholmModule& m);

/// Sum of two modules over the same algebra.
FredholmModule direct_sum(const FredholmModule& a, const FredholmModule& b);

/// D (1 + D^2)^{-1/2}.
ComplexMatrix bounded_transform(const ComplexMatrix& d);

/// Sign of D through its spectral projections; requires D invertible.
/// This is the normalized representative of bounded_transform(D).
ComplexMatrix phase_of(const ComplexMatrix& d);

/// Fredholm module (A, H, sign(D), gamma) of a graded triple with invertible D.
FredholmModule fredholm_module(const SpectralTriple& t);

/// The module viewed as a spectral triple with Dirac operator F.
SpectralTriple as_triple(const FredholmModule& m);

}  // namespace ncg
