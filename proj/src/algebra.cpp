#include "ncg/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ncg/eigen.hpp"
#include "ncg/error.hpp"

namespace ncg {

// ---------------------------------------------------------------- algebra

FiniteAlgebra::FiniteAlgebra(std::vector<std::size_t> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw NcgError(ErrorKind::kInvalidInput, "FiniteAlgebra: at least one block required");
  if (std::any_of(blocks_.begin(), blocks_.end(), [](std::size_t n) { return n == 0; })) {
    throw NcgError(ErrorKind::kInvalidInput, "FiniteAlgebra: block sizes must be positive");
  }
}

FiniteAlgebra FiniteAlgebra::commutative(std::size_t k) { return FiniteAlgebra(std::vector<std::size_t>(k, 1)); }

FiniteAlgebra FiniteAlgebra::tensor(const FiniteAlgebra& first, const FiniteAlgebra& second) {
  std::vector<std::size_t> blocks;
  blocks.reserve(first.block_count() * second.block_count());
  for (std::size_t n : first.blocks()) {
    for (std::size_t m : second.blocks()) blocks.push_back(n * m);
  }
  FiniteAlgebra out(std::move(blocks));
  out.factors_ = std::make_shared<const std::pair<FiniteAlgebra, FiniteAlgebra>>(first, second);
  return out;
}

std::size_t FiniteAlgebra::real_dimension() const noexcept {
  std::size_t d = 0;
  for (std::size_t n : blocks_) d += n * n;
  return d;
}

bool FiniteAlgebra::is_commutative() const noexcept {
  return std::all_of(blocks_.begin(), blocks_.end(), [](std::size_t n) { return n == 1; });
}

const FiniteAlgebra& FiniteAlgebra::first_factor() const {
  if (!factors_) throw NcgError(ErrorKind::kUnsupported, "FiniteAlgebra: no tensor factorization recorded");
  return factors_->first;
}

const FiniteAlgebra& FiniteAlgebra::second_factor() const {
  if (!factors_) throw NcgError(ErrorKind::kUnsupported, "FiniteAlgebra: no tensor factorization recorded");
  return factors_->second;
}

bool operator==(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  if (a.blocks_ != b.blocks_) return false;
  if (a.has_factorization() != b.has_factorization()) return false;
  if (!a.has_factorization()) return true;
  return a.factors_->first == b.factors_->first && a.factors_->second == b.factors_->second;
}

// ---------------------------------------------------------------- elements

AlgebraElement::AlgebraElement(FiniteAlgebra algebra, std::vector<ComplexMatrix> blocks)
    : algebra_(std::move(algebra)), blocks_(std::move(blocks)) {
  if (blocks_.size() != algebra_.block_count()) {
    throw NcgError(ErrorKind::kDimensionMismatch, "AlgebraElement: wrong number of blocks");
  }
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const std::size_t n = algebra_.block_size(b);
    if (blocks_[b].rows() != n || blocks_[b].cols() != n) {
      throw NcgError(ErrorKind::kDimensionMismatch, "AlgebraElement: block " + std::to_string(b) + " has wrong size");
    }
  }
}

AlgebraElement AlgebraElement::zero(const FiniteAlgebra& algebra) {
  std::vector<ComplexMatrix> blocks;
  for (std::size_t n : algebra.blocks()) blocks.emplace_back(n, n);
  return {algebra, std::move(blocks)};
}

AlgebraElement AlgebraElement::unit(const FiniteAlgebra& algebra) {
  std::vector<ComplexMatrix> blocks;
  for (std::size_t n : algebra.blocks()) blocks.push_back(ComplexMatrix::identity(n));
  return {algebra, std::move(blocks)};
}

AlgebraElement AlgebraElement::from_values(const FiniteAlgebra& algebra, std::span<const Complex> values) {
  if (!algebra.is_commutative()) {
    throw NcgError(ErrorKind::kUnsupported, "from_values: algebra is not commutative");
  }
  if (values.size() != algebra.block_count()) {
    throw NcgError(ErrorKind::kDimensionMismatch, "from_values: wrong number of values");
  }
  std::vector<ComplexMatrix> blocks;
  for (const Complex& v : values) blocks.push_back(ComplexMatrix{{v}});
  return {algebra, std::move(blocks)};
}

AlgebraElement AlgebraElement::from_values(const FiniteAlgebra& algebra, std::initializer_list<double> values) {
  std::vector<Complex> v(values.begin(), values.end());
  return from_values(algebra, std::span<const Complex>(v));
}

AlgebraElement AlgebraElement::matrix_unit(const FiniteAlgebra& algebra, std::size_t b, std::size_t k,
                                           std::size_t l) {
  AlgebraElement e = zero(algebra);
  e.blocks_.at(b)(k, l) = 1.0;
  return e;
}

AlgebraElement AlgebraElement::adjoint() const {
  std::vector<ComplexMatrix> blocks;
  for (const ComplexMatrix& m : blocks_) blocks.push_back(m.adjoint());
  return {algebra_, std::move(blocks)};
}

bool AlgebraElement::is_self_adjoint(double tol) const {
  return std::all_of(blocks_.begin(), blocks_.end(), [tol](const ComplexMatrix& m) { return is_hermitian(m, tol); });
}

double AlgebraElement::max_abs_diff(const AlgebraElement& other) const {
  if (!(algebra_ == other.algebra_)) throw NcgError(ErrorKind::kDimensionMismatch, "max_abs_diff: algebra mismatch");
  double m = 0.0;
  for (std::size_t b = 0; b < blocks_.size(); ++b) m = std::max(m, ncg::max_abs_diff(blocks_[b], other.blocks_[b]));
  return m;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& other) {
  if (!(algebra_ == other.algebra_)) throw NcgError(ErrorKind::kDimensionMismatch, "operator+: algebra mismatch");
  for (std::size_t b = 0; b < blocks_.size(); ++b) blocks_[b] += other.blocks_[b];
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(Complex s) {
  for (ComplexMatrix& m : blocks_) m *= s;
  return *this;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  if (!(a.algebra() == b.algebra())) throw NcgError(ErrorKind::kDimensionMismatch, "operator*: algebra mismatch");
  std::vector<ComplexMatrix> blocks;
  for (std::size_t i = 0; i < a.blocks().size(); ++i) blocks.push_back(a.block(i) * b.block(i));
  return {a.algebra(), std::move(blocks)};
}

AlgebraElement tensor(const AlgebraElement& a1, const AlgebraElement& a2) {
  const FiniteAlgebra alg = FiniteAlgebra::tensor(a1.algebra(), a2.algebra());
  std::vector<ComplexMatrix> blocks;
  for (const ComplexMatrix& x : a1.blocks()) {
    for (const ComplexMatrix& y : a2.blocks()) blocks.push_back(ncg::tensor(x, y));
  }
  return {alg, std::move(blocks)};
}

std::vector<AlgebraElement> self_adjoint_basis(const FiniteAlgebra& algebra) {
  std::vector<AlgebraElement> basis;
  basis.reserve(algebra.real_dimension());
  for (std::size_t b = 0; b < algebra.block_count(); ++b) {
    const std::size_t n = algebra.block_size(b);
    for (std::size_t k = 0; k < n; ++k) basis.push_back(AlgebraElement::matrix_unit(algebra, b, k, k));
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t l = k + 1; l < n; ++l) {
        AlgebraElement sym = AlgebraElement::zero(algebra);
        AlgebraElement asym = AlgebraElement::zero(algebra);
        std::vector<ComplexMatrix> s = sym.blocks();
        std::vector<ComplexMatrix> t = asym.blocks();
        s[b](k, l) = 1.0;
        s[b](l, k) = 1.0;
        t[b](k, l) = Complex(0.0, 1.0);
        t[b](l, k) = Complex(0.0, -1.0);
        basis.emplace_back(algebra, std::move(s));
        basis.emplace_back(algebra, std::move(t));
      }
    }
  }
  return basis;
}

AlgebraElement from_self_adjoint_coordinates(const FiniteAlgebra& algebra, std::span<const double> x) {
  if (x.size() != algebra.real_dimension()) {
    throw NcgError(ErrorKind::kDimensionMismatch, "from_self_adjoint_coordinates: wrong coordinate count");
  }
  AlgebraElement out = AlgebraElement::zero(algebra);
  std::vector<ComplexMatrix> blocks = out.blocks();
  std::size_t idx = 0;
  for (std::size_t b = 0; b < algebra.block_count(); ++b) {
    const std::size_t n = algebra.block_size(b);
    for (std::size_t k = 0; k < n; ++k) blocks[b](k, k) = x[idx++];
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t l = k + 1; l < n; ++l) {
        const Complex z(x[idx], x[idx + 1]);
        idx += 2;
        blocks[b](k, l) = z;
        blocks[b](l, k) = std::conj(z);
      }
    }
  }
  return {algebra, std::move(blocks)};
}

// ---------------------------------------------------------- representation

Representation Representation::make(FiniteAlgebra algebra, std::size_t hilbert_dim,
                                    std::vector<std::vector<ComplexMatrix>> images) {
  if (hilbert_dim == 0) throw NcgError(ErrorKind::kInvalidInput, "Representation: hilbert_dim must be positive");
  if (images.size() != algebra.block_count()) {
    throw NcgError(ErrorKind::kDimensionMismatch, "Representation: one image list per block required");
  }
  for (std::size_t b = 0; b < images.size(); ++b) {
    const std::size_t n = algebra.block_size(b);
    if (images[b].size() != n * n) {
      throw NcgError(ErrorKind::kDimensionMismatch, "Representation: block " + std::to_string(b) +
                                                        " needs " + std::to_string(n * n) + " matrix-unit images");
    }
    for (const ComplexMatrix& m : images[b]) {
      if (m.rows() != hilbert_dim || m.cols() != hilbert_dim) {
        throw NcgError(ErrorKind::kDimensionMismatch, "Representation: image has wrong size");
      }
      if (!m.all_finite()) throw NcgError(ErrorKind::kInvalidInput, "Representation: non-finite image");
    }
  }
  // E^b_kl E^c_mn = delta_bc delta_lm E^b_kn and (E^b_kl)^* = E^b_lk.
  const ComplexMatrix zero(hilbert_dim, hilbert_dim);
  for (std::size_t b = 0; b < images.size(); ++b) {
    const std::size_t n = algebra.block_size(b);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t l = 0; l < n; ++l) {
        const ComplexMatrix& ekl = images[b][k * n + l];
        if (!approx_equal(ekl.adjoint(), images[b][l * n + k], kStructuralTol)) {
          throw NcgError(ErrorKind::kInvariantViolation, "Representation: not *-preserving");
        }
        for (std::size_t c = 0; c < images.size(); ++c) {
          const std::size_t m = algebra.block_size(c);
          for (std::size_t p = 0; p < m; ++p) {
            for (std::size_t q = 0; q < m; ++q) {
              const ComplexMatrix prod = ekl * images[c][p * m + q];
              const ComplexMatrix& expected = (b == c && l == p) ? images[b][k * n + q] : zero;
              if (!approx_equal(prod, expected, kStructuralTol)) {
                throw NcgError(ErrorKind::kInvariantViolation, "Representation: not multiplicative");
              }
            }
          }
        }
      }
    }
  }
  return Representation(std::move(algebra), hilbert_dim, std::move(images));
}

Representation Representation::block_diagonal(const FiniteAlgebra& algebra, std::span<const std::size_t> multiplicity,
                                              std::size_t padding) {
  if (multiplicity.size() != algebra.block_count()) {
    throw NcgError(ErrorKind::kDimensionMismatch, "block_diagonal: one multiplicity per block required");
  }
  std::size_t dim = padding;
  for (std::size_t b = 0; b < algebra.block_count(); ++b) {
    if (multiplicity[b] == 0) throw NcgError(ErrorKind::kInvalidInput, "block_diagonal: multiplicity must be positive");
    dim += algebra.block_size(b) * multiplicity[b];
  }
  std::vector<std::vector<ComplexMatrix>> images(algebra.block_count());
  std::size_t offset = 0;
  for (std::size_t b = 0; b < algebra.block_count(); ++b) {
    const std::size_t n = algebra.block_size(b);
    const ComplexMatrix id = ComplexMatrix::identity(multiplicity[b]);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t l = 0; l < n; ++l) {
        ComplexMatrix unit(n, n);
        unit(k, l) = 1.0;
        ComplexMatrix image(dim, dim);
        place_block(image, ncg::tensor(unit, id), offset, offset);
        images[b].push_back(std::move(image));
      }
    }
    offset += n * multiplicity[b];
  }
  return make(algebra, dim, std::move(images));
}

Representation Representation::standard(const FiniteAlgebra& algebra) {
  const std::vector<std::size_t> ones(algebra.block_count(), 1);
  return block_diagonal(algebra, ones, 0);
}

Representation Representation::tensor(const Representation& first, const Representation& second) {
  const FiniteAlgebra alg = FiniteAlgebra::tensor(first.algebra(), second.algebra());
  std::vector<std::vector<ComplexMatrix>> images;
  for (std::size_t i = 0; i < first.algebra().block_count(); ++i) {
    const std::size_t n = first.algebra().block_size(i);
    for (std::size_t j = 0; j < second.algebra().block_count(); ++j) {
      const std::size_t m = second.algebra().block_size(j);
      const std::size_t nm = n * m;
      std::vector<ComplexMatrix> block(nm * nm);
      // Unit ((k1,k2),(l1,l2)) of M_n (x) M_m is E_k1l1 (x) E_k2l2.
      for (std::size_t k1 = 0; k1 < n; ++k1) {
        for (std::size_t k2 = 0; k2 < m; ++k2) {
          for (std::size_t l1 = 0; l1 < n; ++l1) {
            for (std::size_t l2 = 0; l2 < m; ++l2) {
              const std::size_t row = k1 * m + k2;
              const std::size_t col = l1 * m + l2;
              block[row * nm + col] = ncg::tensor(first.image(i, k1, l1), second.image(j, k2, l2));
            }
          }
        }
      }
      images.push_back(std::move(block));
    }
  }
  return Representation(alg, first.hilbert_dim() * second.hilbert_dim(), std::move(images));
}

const ComplexMatrix& Representation::image(std::size_t b, std::size_t k, std::size_t l) const {
  const std::size_t n = algebra_.block_size(b);
  return images_.at(b).at(k * n + l);
}

ComplexMatrix Representation::operator()(const AlgebraElement& a) const {
  if (!(a.algebra() == algebra_)) {
    if (a.algebra().blocks() != algebra_.blocks()) {
      throw NcgError(ErrorKind::kDimensionMismatch, "Representation: element of a different algebra");
    }
  }
  ComplexMatrix out(hilbert_dim_, hilbert_dim_);
  for (std::size_t b = 0; b < algebra_.block_count(); ++b) {
    const std::size_t n = algebra_.block_size(b);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t l = 0; l < n; ++l) {
        const Complex c = a.block(b)(k, l);
        if (c == Complex{}) continue;
        const ComplexMatrix& img = images_[b][k * n + l];
        for (std::size_t e = 0; e < out.entries().size(); ++e) out.entries()[e] += c * img.entries()[e];
      }
    }
  }
  return out;
}

ComplexMatrix Representation::unit_image() const { return (*this)(AlgebraElement::unit(algebra_)); }

bool Representation::is_unital(double tol) const {
  return approx_equal(unit_image(), ComplexMatrix::identity(hilbert_dim_), tol);
}

bool Representation::is_faithful(double tol) const {
  for (std::size_t b = 0; b < algebra_.block_count(); ++b) {
    if (max_abs(image(b, 0, 0)) <= tol) return false;
  }
  return true;
}

Representation Representation::conjugated(const ComplexMatrix& u) const {
  if (u.rows() != hilbert_dim_ || u.cols() != hilbert_dim_) {
    throw NcgError(ErrorKind::kDimensionMismatch, "conjugated: unitary has wrong size");
  }
  const ComplexMatrix uh = u.adjoint();
  std::vector<std::vector<ComplexMatrix>> images = images_;
  for (auto& block : images) {
    for (ComplexMatrix& m : block) m = u * m * uh;
  }
  return Representation(algebra_, hilbert_dim_, std::move(images));
}

// ------------------------------------------------------------------ states

State State::make(FiniteAlgebra algebra, std::vector<ComplexMatrix> densities) {
  if (densities.size() != algebra.block_count()) {
    throw NcgError(ErrorKind::kDimensionMismatch, "State: one density per block required");
  }
  double total = 0.0;
  for (std::size_t b = 0; b < densities.size(); ++b) {
    const ComplexMatrix& rho = densities[b];
    const std::size_t n = algebra.block_size(b);
    if (rho.rows() != n || rho.cols() != n) throw NcgError(ErrorKind::kDimensionMismatch, "State: density has wrong size");
    if (!rho.all_finite()) throw NcgError(ErrorKind::kInvalidInput, "State: non-finite density");
    if (!is_hermitian(rho, kStructuralTol)) throw NcgError(ErrorKind::kInvariantViolation, "State: density not Hermitian");
    const std::vector<double> ev = eigvalsh(rho);
    if (ev.front() < -kStructuralTol) {
      throw NcgError(ErrorKind::kInvariantViolation, "State: density is not positive semidefinite");
    }
    total += rho.trace().real();
  }
  if (std::abs(total - 1.0) > kStructuralTol) {
    throw NcgError(ErrorKind::kInvariantViolation, "State: densities must have total trace 1");
  }
  return State(std::move(algebra), std::move(densities));
}

State State::coordinate(const FiniteAlgebra& algebra, std::size_t index) {
  if (!algebra.is_commutative()) {
    throw NcgError(ErrorKind::kUnsupported, "State::coordinate: algebra is not commutative");
  }
  if (index >= algebra.block_count()) throw NcgError(ErrorKind::kInvalidInput, "State::coordinate: index out of range");
  std::vector<ComplexMatrix> densities(algebra.block_count(), ComplexMatrix(1, 1));
  densities[index](0, 0) = 1.0;
  return State(algebra, std::move(densities));
}

State State::tracial(const FiniteAlgebra& algebra) {
  std::size_t total = 0;
  for (std::size_t n : algebra.blocks()) total += n;
  std::vector<ComplexMatrix> densities;
  for (std::size_t n : algebra.blocks()) {
    densities.push_back(ComplexMatrix::identity(n) * Complex(1.0 / static_cast<double>(total)));
  }
  return make(algebra, std::move(densities));
}

State State::mix(const State& a, const State& b, double t) {
  if (!(a.algebra() == b.algebra())) throw NcgError(ErrorKind::kDimensionMismatch, "State::mix: algebra mismatch");
  if (!(t >= 0.0 && t <= 1.0)) throw NcgError(ErrorKind::kInvalidInput, "State::mix: weight must lie in [0,1]");
  std::vector<ComplexMatrix> densities;
  for (std::size_t i = 0; i < a.densities().size(); ++i) {
    densities.push_back(Complex(1.0 - t) * a.densities()[i] + Complex(t) * b.densities()[i]);
  }
  return make(a.algebra(), std::move(densities));
}

Complex eval(const State& phi, const AlgebraElement& a) {
  if (phi.algebra().blocks() != a.algebra().blocks()) {
    throw NcgError(ErrorKind::kDimensionMismatch, "eval: state and element live on different algebras");
  }
  Complex s = 0.0;
  for (std::size_t b = 0; b < a.blocks().size(); ++b) {
    const ComplexMatrix& rho = phi.densities()[b];
    const ComplexMatrix& x = a.block(b);
    const std::size_t n = x.rows();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) s += rho(i, j) * x(j, i);
    }
  }
  return s;
}

State product_state(const State& phi1, const State& phi2) {
  const FiniteAlgebra alg = FiniteAlgebra::tensor(phi1.algebra(), phi2.algebra());
  std::vector<ComplexMatrix> densities;
  for (const ComplexMatrix& r1 : phi1.densities()) {
    for (const ComplexMatrix& r2 : phi2.densities()) densities.push_back(ncg::tensor(r1, r2));
  }
  return State::make(alg, std::move(densities));
}

AlgebraElement slice_map(const AlgebraElement& a, const State& phi, Factor traced) {
  const FiniteAlgebra& alg = a.algebra();
  if (!alg.has_factorization()) {
    throw NcgError(ErrorKind::kUnsupported, "slice_map: element carries no tensor factorization");
  }
  const FiniteAlgebra& first = alg.first_factor();
  const FiniteAlgebra& second = alg.second_factor();
  const FiniteAlgebra& traced_alg = traced == Factor::kSecond ? second : first;
  const FiniteAlgebra& kept_alg = traced == Factor::kSecond ? first : second;
  if (phi.algebra().blocks() != traced_alg.blocks()) {
    throw NcgError(ErrorKind::kDimensionMismatch, "slice_map: state lives on the wrong factor");
  }
  AlgebraElement out = AlgebraElement::zero(kept_alg);
  std::vector<ComplexMatrix> blocks = out.blocks();
  const std::size_t n2 = second.block_count();
  for (std::size_t i = 0; i < first.block_count(); ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      const ComplexMatrix& x = a.block(i * n2 + j);
      const std::size_t n = first.block_size(i);
      const std::size_t m = second.block_size(j);
      // phi(E_kl) = rho(l, k).
      if (traced == Factor::kSecond) {
        const ComplexMatrix& rho = phi.densities()[j];
        for (std::size_t k1 = 0; k1 < n; ++k1) {
          for (std::size_t l1 = 0; l1 < n; ++l1) {
            Complex s = 0.0;
            for (std::size_t k2 = 0; k2 < m; ++k2) {
              for (std::size_t l2 = 0; l2 < m; ++l2) s += x(k1 * m + k2, l1 * m + l2) * rho(l2, k2);
            }
            blocks[i](k1, l1) += s;
          }
        }
      } else {
        const ComplexMatrix& rho = phi.densities()[i];
        for (std::size_t k2 = 0; k2 < m; ++k2) {
          for (std::size_t l2 = 0; l2 < m; ++l2) {
            Complex s = 0.0;
            for (std::size_t k1 = 0; k1 < n; ++k1) {
              for (std::size_t l1 = 0; l1 < n; ++l1) s += x(k1 * m + k2, l1 * m + l2) * rho(l1, k1);
            }
            blocks[j](k2, l2) += s;
          }
        }
      }
    }
  }
  return {kept_alg, std::move(blocks)};
}

std::vector<State> pure_states(const FiniteAlgebra& algebra) {
  if (!algebra.is_commutative()) {
    throw NcgError(ErrorKind::kUnsupported, "pure_states: enumeration is only supported for commutative algebras");
  }
  std::vector<State> out;
  for (std::size_t k = 0; k < algebra.block_count(); ++k) out.push_back(State::coordinate(algebra, k));
  return out;
}

}  // namespace ncg
