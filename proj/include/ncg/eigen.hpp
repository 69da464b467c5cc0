#pragma once

#include <vector>

#include "ncg/matrix.hpp"

namespace ncg {

/// Spectral decomposition a = V diag(values) V^H with values ascending.
struct HermitianEigen {
  std::vector<double> values;
  /// Columns are orthonormal eigenvectors; empty if vectors were not requested.
  ComplexMatrix vectors;
};

/// Cyclic complex Jacobi diagonalization. `a` must be square; only its
/// Hermitian part is used.
HermitianEigen eigh(const ComplexMatrix& a, bool want_vectors = true);

/// Eigenvalues only, ascending.
std::vector<double> eigvalsh(const ComplexMatrix& a);

}  // namespace ncg
