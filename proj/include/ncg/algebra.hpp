#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "ncg/matrix.hpp"

namespace ncg {

/// Finite-dimensional C*-algebra M_{n_1}(C) + ... + M_{n_k}(C).
///
/// Tensor-product algebras remember their two factors. The block of a
/// product algebra with index i * (factor-2 block count) + j is
/// M_{n_i} (x) M_{m_j}, with matrix units ordered by Kronecker convention.
class FiniteAlgebra {
 public:
  explicit FiniteAlgebra(std::vector<std::size_t> blocks);

  /// C^k: k one-dimensional blocks.
  static FiniteAlgebra commutative(std::size_t k);
  static FiniteAlgebra tensor(const FiniteAlgebra& first, const FiniteAlgebra& second);

  const std::vector<std::size_t>& blocks() const noexcept { return blocks_; }
  std::size_t block_count() const noexcept { return blocks_.size(); }
  std::size_t block_size(std::size_t b) const { return blocks_.at(b); }
  /// Real dimension of the self-adjoint part, sum of n_i^2.
  std::size_t real_dimension() const noexcept;
  bool is_commutative() const noexcept;

  bool has_factorization() const noexcept { return factors_ != nullptr; }
  const FiniteAlgebra& first_factor() const;
  const FiniteAlgebra& second_factor() const;

  friend bool operator==(const FiniteAlgebra& a, const FiniteAlgebra& b);

 private:
  std::vector<std::size_t> blocks_;
  std::shared_ptr<const std::pair<FiniteAlgebra, FiniteAlgebra>> factors_;
};

/// Element of a FiniteAlgebra, one square matrix per block.
class AlgebraElement {
 public:
  AlgebraElement(FiniteAlgebra algebra, std::vector<ComplexMatrix> blocks);

  static AlgebraElement zero(const FiniteAlgebra& algebra);
  static AlgebraElement unit(const FiniteAlgebra& algebra);
  /// Element of a commutative algebra from its coordinate values.
  static AlgebraElement from_values(const FiniteAlgebra& algebra, std::span<const Complex> values);
  static AlgebraElement from_values(const FiniteAlgebra& algebra, std::initializer_list<double> values);
  /// Matrix unit E_kl of block b.
  static AlgebraElement matrix_unit(const FiniteAlgebra& algebra, std::size_t b, std::size_t k, std::size_t l);

  const FiniteAlgebra& algebra() const noexcept { return algebra_; }
  const std::vector<ComplexMatrix>& blocks() const noexcept { return blocks_; }
  const ComplexMatrix& block(std::size_t b) const { return blocks_.at(b); }

  AlgebraElement adjoint() const;
  bool is_self_adjoint(double tol = kStructuralTol) const;
  double max_abs_diff(const AlgebraElement& other) const;

  AlgebraElement& operator+=(const AlgebraElement& other);
  AlgebraElement& operator*=(Complex s);
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator*(Complex s, AlgebraElement a) { return a *= s; }
  /// Blockwise product.
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);

 private:
  FiniteAlgebra algebra_;
  std::vector<ComplexMatrix> blocks_;
};

/// Elementary tensor a1 (x) a2 in the tensor-product algebra.
AlgebraElement tensor(const AlgebraElement& a1, const AlgebraElement& a2);

/// Canonical real basis of the self-adjoint part: per block, the diagonal
/// units E_kk, then for each k < l the pair E_kl + E_lk, i(E_kl - E_lk).
std::vector<AlgebraElement> self_adjoint_basis(const FiniteAlgebra& algebra);
/// Inverse of the coordinate map for self_adjoint_basis.
AlgebraElement from_self_adjoint_coordinates(const FiniteAlgebra& algebra, std::span<const double> x);

/// *-representation given by the images of the matrix units.
class Representation {
 public:
  /// images[b][k * n_b + l] = pi(E^b_kl). Throws NcgError unless pi is a
  /// *-homomorphism within 1e-12.
  static Representation make(FiniteAlgebra algebra, std::size_t hilbert_dim,
                             std::vector<std::vector<ComplexMatrix>> images);

  /// Block b acts as M_{n_b} (x) 1_{multiplicity[b]}, stacked in block order,
  /// followed by `padding` dimensions on which everything acts as zero.
  static Representation block_diagonal(const FiniteAlgebra& algebra, std::span<const std::size_t> multiplicity,
                                       std::size_t padding = 0);
  /// Each block once, no padding (the defining representation).
  static Representation standard(const FiniteAlgebra& algebra);

  static Representation tensor(const Representation& first, const Representation& second);

  const FiniteAlgebra& algebra() const noexcept { return algebra_; }
  std::size_t hilbert_dim() const noexcept { return hilbert_dim_; }
  const std::vector<std::vector<ComplexMatrix>>& images() const noexcept { return images_; }
  const ComplexMatrix& image(std::size_t b, std::size_t k, std::size_t l) const;

  ComplexMatrix operator()(const AlgebraElement& a) const;
  ComplexMatrix unit_image() const;
  /// pi(e) equals the identity within tol.
  bool is_unital(double tol = kStructuralTol) const;
  /// No block is sent to zero.
  bool is_faithful(double tol = kStructuralTol) const;

  /// u pi(.) u^H for a unitary u.
  Representation conjugated(const ComplexMatrix& u) const;

 private:
  Representation(FiniteAlgebra algebra, std::size_t hilbert_dim, std::vector<std::vector<ComplexMatrix>> images)
      : algebra_(std::move(algebra)), hilbert_dim_(hilbert_dim), images_(std::move(images)) {}

  FiniteAlgebra algebra_;
  std::size_t hilbert_dim_;
  std::vector<std::vector<ComplexMatrix>> images_;
};

/// State phi(a) = sum_i Tr(rho_i a_i) with positive densities of total trace 1.
class State {
 public:
  /// Throws NcgError unless every density is Hermitian with eigenvalues
  /// >= -1e-12 and the traces sum to 1 within 1e-12.
  static State make(FiniteAlgebra algebra, std::vector<ComplexMatrix> densities);

  /// Pure state of a commutative algebra picking coordinate `index`.
  static State coordinate(const FiniteAlgebra& algebra, std::size_t index);
  /// Normalized trace: every density is 1/(sum n_i) times the identity.
  static State tracial(const FiniteAlgebra& algebra);
  /// (1 - t) a + t b.
  static State mix(const State& a, const State& b, double t);

  const FiniteAlgebra& algebra() const noexcept { return algebra_; }
  const std::vector<ComplexMatrix>& densities() const noexcept { return densities_; }

  friend bool operator==(const State& a, const State& b) = default;

 private:
  State(FiniteAlgebra algebra, std::vector<ComplexMatrix> densities)
      : algebra_(std::move(algebra)), densities_(std::move(densities)) {}

  FiniteAlgebra algebra_;
  std::vector<ComplexMatrix> densities_;
};

Complex eval(const State& phi, const AlgebraElement& a);

/// phi1 (x) phi2 on the tensor-product algebra, densities rho_i (x) rho_j.
State product_state(const State& phi1, const State& phi2);

/// Which tensor factor a slice map integrates out.
enum class Factor { kFirst, kSecond };

/// (id (x) phi)(a) when `traced` is kSecond, (phi (x) id)(a) when kFirst.
/// `a` must live on a tensor-product algebra; phi on the traced factor.
AlgebraElement slice_map(const AlgebraElement& a, const State& phi, Factor traced);

/// Coordinate evaluations of a commutative algebra.
std::vector<State> pure_states(const FiniteAlgebra& algebra);

}  // namespace ncg
