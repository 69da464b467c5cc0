#include "ncg/catalog.hpp"

#include <cmath>
#include <string>

#include "ncg/error.hpp"

namespace ncg {

namespace {

const ComplexMatrix kSigmaX{{0.0, 1.0}, {1.0, 0.0}};
const ComplexMatrix kSigmaZ{{1.0, 0.0}, {0.0, -1.0}};

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw NcgError(ErrorKind::kInvalidInput, std::string(what) + " must be a positive finite number");
  }
}

}  // namespace

SpectralTriple two_point(double lambda) {
  require_positive(lambda, "two_point: lambda");
  const FiniteAlgebra alg = FiniteAlgebra::commutative(2);
  return SpectralTriple::make(Representation::standard(alg), kSigmaX * Complex(1.0 / lambda), kSigmaZ);
}

SpectralTriple amplified_two_point(double mu) {
  require_positive(mu, "amplified_two_point: mu");
  const FiniteAlgebra alg = FiniteAlgebra::commutative(2);
  const SpectralTriple base =
      SpectralTriple::make(Representation::standard(alg), ComplexMatrix(2, 2), ComplexMatrix::identity(2));
  return amplify(base).scaled(2.0 / mu);
}

SpectralTriple point_triple() {
  const FiniteAlgebra alg = FiniteAlgebra::commutative(1);
  return SpectralTriple::make(Representation::standard(alg), ComplexMatrix(1, 1), ComplexMatrix::identity(1));
}

SpectralTriple lattice_line(std::size_t n, double h) {
  if (n < 3) throw NcgError(ErrorKind::kInvalidInput, "lattice_line: need at least 3 grid points");
  require_positive(h, "lattice_line: spacing");
  const FiniteAlgebra alg = FiniteAlgebra::commutative(n);
  ComplexMatrix d(n, n);
  const Complex hop(0.0, 1.0 / (4.0 * h));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    d(k, k + 1) = -hop;
    d(k + 1, k) = hop;
  }
  return SpectralTriple::make(Representation::standard(alg), std::move(d), std::nullopt);
}

SpectralTriple two_sheeted_line(std::size_t n, double h) { return amplify(lattice_line(n, h)).scaled(2.0); }

Character Character::make(FiniteAlgebra algebra, std::vector<Complex> unit_values) {
  if (unit_values.size() != algebra.block_count()) {
    throw NcgError(ErrorKind::kDimensionMismatch, "Character: one value per block required");
  }
  int ones = 0;
  for (std::size_t b = 0; b < unit_values.size(); ++b) {
    const Complex v = unit_values[b];
    const bool is_zero = std::abs(v) <= kStructuralTol;
    const bool is_one = std::abs(v - 1.0) <= kStructuralTol;
    // chi(e_b)^2 = chi(e_b) forces 0 or 1; M_n blocks with n > 1 have no characters.
    if (!is_zero && !is_one) throw NcgError(ErrorKind::kInvalidInput, "Character: not multiplicative");
    if (is_one && algebra.block_size(b) > 1) {
      throw NcgError(ErrorKind::kInvalidInput, "Character: a matrix block cannot map onto C");
    }
    if (is_one) ++ones;
    unit_values[b] = is_one ? 1.0 : 0.0;
  }
  // chi(e_b) chi(e_c) = chi(e_b e_c) = 0 for b != c.
  if (ones > 1) throw NcgError(ErrorKind::kInvalidInput, "Character: not multiplicative");
  if (ones == 0) throw NcgError(ErrorKind::kInvalidInput, "Character: zero map is not a representation");
  return Character(std::move(algebra), std::move(unit_values));
}

Character Character::coordinate(const FiniteAlgebra& algebra, std::size_t index) {
  if (index >= algebra.block_count()) {
    throw NcgError(ErrorKind::kInvalidInput, "Character::coordinate: index out of range");
  }
  std::vector<Complex> values(algebra.block_count(), 0.0);
  values[index] = 1.0;
  return make(algebra, std::move(values));
}

FredholmModule pullback_module(const Character& chi) {
  const FiniteAlgebra& alg = chi.algebra();
  std::vector<std::vector<ComplexMatrix>> images;
  for (std::size_t b = 0; b < alg.block_count(); ++b) {
    const std::size_t n = alg.block_size(b);
    std::vector<ComplexMatrix> block(n * n, ComplexMatrix(2, 2));
    if (n == 1) block[0](0, 0) = chi.unit_values()[b];
    images.push_back(std::move(block));
  }
  return FredholmModule::make(Representation::make(alg, 2, std::move(images)), kSigmaX, kSigmaZ);
}

}  // namespace ncg
