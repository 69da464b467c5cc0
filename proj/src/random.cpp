#include "ncg/random.hpp"

#include <algorithm>
#include <numeric>

#include "ncg/error.hpp"

namespace ncg {

ComplexMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double re = rng.normal();
      const double im = rng.normal();
      m(i, j) = {re, im};
    }
  }
  return m;
}

ComplexMatrix random_hermitian(Rng& rng, std::size_t n) {
  const ComplexMatrix g = random_matrix(rng, n, n);
  return 0.5 * (g + g.adjoint());
}

SpectralTriple random_triple(Rng& rng, const RandomTripleSpec& spec) {
  if (spec.blocks.size() != spec.multiplicities.size()) {
    throw NcgError(ErrorKind::kDimensionMismatch, "random_triple: one multiplicity per block required");
  }
  const FiniteAlgebra algebra(spec.blocks);
  Representation rep = Representation::block_diagonal(algebra, spec.multiplicities, spec.padding);
  const std::size_t dim = rep.hilbert_dim();

  std::vector<Complex> signs;
  signs.reserve(dim);
  double next = 1.0;
  for (std::size_t b = 0; b < spec.blocks.size(); ++b) {
    const std::size_t m = spec.multiplicities[b];
    std::vector<double> copy_sign(m);
    for (auto& s : copy_sign) {
      s = next;
      next = -next;
    }
    for (std::size_t k = 0; k < spec.blocks[b]; ++k) {
      for (std::size_t r = 0; r < m; ++r) signs.emplace_back(copy_sign[r]);
    }
  }
  for (std::size_t p = 0; p < spec.padding; ++p) {
    signs.emplace_back(next);
    next = -next;
  }
  ComplexMatrix gamma = ComplexMatrix::diagonal(signs);
  const ComplexMatrix d = parity_split(random_hermitian(rng, dim), gamma).odd;
  return SpectralTriple::make(std::move(rep), d, std::move(gamma));
}

SpectralTriple random_triple(std::uint64_t seed, const RandomTripleSpec& spec) {
  Rng rng(seed);
  return random_triple(rng, spec);
}

State random_state(Rng& rng, const FiniteAlgebra& algebra) {
  std::vector<ComplexMatrix> densities;
  double total = 0.0;
  for (std::size_t n : algebra.blocks()) {
    const ComplexMatrix z = random_matrix(rng, n, n);
    densities.push_back(z * z.adjoint());
    total += densities.back().trace().real();
  }
  for (auto& rho : densities) rho *= Complex(1.0 / total);
  // Renormalize to remove rounding in the trace.
  double sum = 0.0;
  for (const auto& rho : densities) sum += rho.trace().real();
  densities.back()(0, 0) += 1.0 - sum;
  return State::make(algebra, std::move(densities));
}

AlgebraElement random_self_adjoint(Rng& rng, const FiniteAlgebra& algebra) {
  std::vector<double> x(algebra.real_dimension());
  for (auto& v : x) v = rng.normal();
  return from_self_adjoint_coordinates(algebra, x);
}

ComplexMatrix random_permutation(Rng& rng, std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng.engine());
  ComplexMatrix p(n, n);
  for (std::size_t i = 0; i < n; ++i) p(perm[i], i) = 1.0;
  return p;
}

}  // namespace ncg
