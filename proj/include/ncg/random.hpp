#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "ncg/algebra.hpp"
#include "ncg/spectral_triple.hpp"

namespace ncg {

/// Identifier of the generator behind every seeded draw, embedded in reports.
inline constexpr std::string_view kRngAlgorithm = "mt19937_64";

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_); }
  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// Shape of a random triple: algebra blocks, the multiplicity of each block
/// in the Hilbert space, and extra dimensions on which the algebra acts as 0.
struct RandomTripleSpec {
  std::vector<std::size_t> blocks;
  std::vector<std::size_t> multiplicities;
  std::size_t padding = 0;
};

/// Graded triple on Representation::block_diagonal. Copies of the blocks
/// (and padding dimensions) receive alternating grading signs; D is a
/// Hermitian matrix with standard normal entries projected to its odd part.
/// Unital iff padding == 0.
SpectralTriple random_triple(std::uint64_t seed, const RandomTripleSpec& spec);
SpectralTriple random_triple(Rng& rng, const RandomTripleSpec& spec);

/// Hermitian matrix with independent normal real and imaginary parts.
ComplexMatrix random_hermitian(Rng& rng, std::size_t n);
ComplexMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols);

/// Faithful state with Wishart-distributed block densities.
State random_state(Rng& rng, const FiniteAlgebra& algebra);
AlgebraElement random_self_adjoint(Rng& rng, const FiniteAlgebra& algebra);
/// Permutation matrix of a uniform random permutation.
ComplexMatrix random_permutation(Rng& rng, std::size_t n);

}  // namespace ncg
