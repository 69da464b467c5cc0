#include "ncg/spectral_triple.hpp"

#include "ncg/error.hpp"

namespace ncg {

SpectralTriple SpectralTriple::make(Representation rep, ComplexMatrix dirac, std::optional<ComplexMatrix> grading) {
  const std::size_t n = rep.hilbert_dim();
  if (dirac.rows() != n || dirac.cols() != n) {
    throw NcgError(ErrorKind::kDimensionMismatch, "SpectralTriple: Dirac operator has wrong size");
  }
  HermitianOperator d = HermitianOperator::make(std::move(dirac));
  if (grading) {
    const ComplexMatrix& g = *grading;
    if (g.rows() != n || g.cols() != n) throw NcgError(ErrorKind::kDimensionMismatch, "SpectralTriple: grading has wrong size");
    if (!is_grading(g, kGradingTol)) {
      throw NcgError(ErrorKind::kInvariantViolation, "SpectralTriple: grading must be a self-adjoint involution");
    }
    if (max_abs(anticommutator(g, d.matrix())) > kGradingTol) {
      throw NcgError(ErrorKind::kInvariantViolation, "SpectralTriple: grading does not anticommute with D");
    }
    for (const auto& block : rep.images()) {
      for (const ComplexMatrix& img : block) {
        if (max_abs(commutator(g, img)) > kGradingTol) {
          throw NcgError(ErrorKind::kInvariantViolation, "SpectralTriple: grading does not commute with the algebra");
        }
      }
    }
  }
  const bool unital = rep.is_unital(kStructuralTol);
  return SpectralTriple(std::move(rep), std::move(d), std::move(grading), unital);
}

SpectralTriple SpectralTriple::scaled(double s) const {
  return make(rep_, dirac_.matrix() * Complex(s), grading_);
}

bool is_unital(const SpectralTriple& t) { return t.rep().is_unital(kStructuralTol); }

SpectralTriple product(const SpectralTriple& t1, const SpectralTriple& t2) {
  if (!t1.is_graded()) {
    throw NcgError(ErrorKind::kInvalidInput, "product: the first triple must carry a grading");
  }
  const ComplexMatrix& g1 = *t1.grading();
  const ComplexMatrix id2 = ComplexMatrix::identity(t2.hilbert_dim());
  ComplexMatrix d = tensor(t1.dirac().matrix(), id2) + tensor(g1, t2.dirac().matrix());
  std::optional<ComplexMatrix> grading;
  if (t2.is_graded()) grading = tensor(g1, *t2.grading());
  return SpectralTriple::make(Representation::tensor(t1.rep(), t2.rep()), std::move(d), std::move(grading));
}

SpectralTriple amplify(const SpectralTriple& t) {
  const std::size_t n = t.hilbert_dim();
  const FiniteAlgebra& alg = t.algebra();
  std::vector<std::vector<ComplexMatrix>> images;
  for (const auto& block : t.rep().images()) {
    std::vector<ComplexMatrix> amplified;
    for (const ComplexMatrix& img : block) amplified.push_back(direct_sum(img, ComplexMatrix(n, n)));
    images.push_back(std::move(amplified));
  }
  const ComplexMatrix id = ComplexMatrix::identity(n);
  ComplexMatrix d(2 * n, 2 * n);
  place_block(d, t.dirac().matrix(), 0, 0);
  place_block(d, id, 0, n);
  place_block(d, id, n, 0);
  place_block(d, -t.dirac().matrix(), n, n);
  std::optional<ComplexMatrix> grading;
  if (t.is_graded()) grading = direct_sum(*t.grading(), -*t.grading());
  return SpectralTriple::make(Representation::make(alg, 2 * n, std::move(images)), std::move(d), std::move(grading));
}

ComplexMatrix dirac_commutator(const SpectralTriple& t, const AlgebraElement& a) {
  return commutator(t.dirac().matrix(), t.rep()(a));
}

}  // namespace ncg
