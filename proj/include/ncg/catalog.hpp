#pragma once

#include <vector>

#include "ncg/algebra.hpp"
#include "ncg/khomology.hpp"
#include "ncg/spectral_triple.hpp"

namespace ncg {

/// C^2 on C^2, pi(a,b) = diag(a,b), D = sigma_x / lambda, gamma = diag(1,-1).
SpectralTriple two_point(double lambda);

/// Amplification of (C^2, diag, 0, I_2), with D = 2 F / mu. Non-unital.
SpectralTriple amplified_two_point(double mu);

/// C on C with D = 0 and gamma = 1.
SpectralTriple point_triple();

/// n grid points with spacing h: C^n acting diagonally on C^n, with D half
/// the central-difference discretization of i d/dx (open boundary), so
/// D(k, k+1) = -i/(4h) and D(k+1, k) = +i/(4h).
SpectralTriple lattice_line(std::size_t n, double h);

/// 2 * amplify(lattice_line(n, h)): the sheet-coupled lattice line with the
/// constant off-diagonal coupling 2.
SpectralTriple two_sheeted_line(std::size_t n, double h);

/// One-dimensional *-representation chi: A -> C, given by its values on the
/// block units (blocks of size > 1 must map to 0).
class Character {
 public:
  /// Throws NcgError unless chi is multiplicative and *-preserving: every
  /// value is 0 or 1, at most one is 1, and matrix blocks map to 0.
  static Character make(FiniteAlgebra algebra, std::vector<Complex> unit_values);
  /// The character given by a coordinate evaluation of a commutative algebra.
  static Character coordinate(const FiniteAlgebra& algebra, std::size_t index);

  const FiniteAlgebra& algebra() const noexcept { return algebra_; }
  const std::vector<Complex>& unit_values() const noexcept { return values_; }

 private:
  Character(FiniteAlgebra algebra, std::vector<Complex> values) : algebra_(std::move(algebra)), values_(std::move(values)) {}

  FiniteAlgebra algebra_;
  std::vector<Complex> values_;
};

/// Pullback of the generator module over C along chi:
/// H = C^2, pi(a) = diag(chi(a), 0), F = sigma_x, gamma = diag(1,-1).
FredholmModule pullback_module(const Character& chi);

}  // namespace ncg
