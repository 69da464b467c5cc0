#include "ncg/distance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "ncg/eigen.hpp"
#include "ncg/error.hpp"
#include "ncg/linalg.hpp"

namespace ncg {

std::string_view to_string(DistanceStatus s) {
  switch (s) {
    case DistanceStatus::kFinite:
      return "finite";
    case DistanceStatus::kInfinite:
      return "infinite";
    case DistanceStatus::kBracket:
      return "bracket";
  }
  return "unknown";
}

namespace {

// Relative size below which a Gram eigenvalue counts as kernel.
constexpr double kKernelRelTol = 1e-14;

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

/// sup c.x subject to ||sum_j x_j L_j|| <= 1, written in an orthonormal basis
/// of the complement of the kernel of x -> [D, pi(x)].
struct ReducedProblem {
  std::size_t hilbert_dim = 0;
  FiniteAlgebra algebra{std::vector<std::size_t>{1}};
  /// Columns of the change of basis, in canonical self-adjoint coordinates.
  std::vector<std::vector<double>> directions;
  /// Gram eigenvalue ||L_j||_F^2 of each reduced direction.
  std::vector<double> gram;
  std::vector<ComplexMatrix> generators;
  std::vector<double> objective;
  /// Set when the objective does not vanish on the kernel.
  std::optional<std::vector<double>> unbounded_direction;
  bool trivial_objective = false;

  std::size_t size() const { return generators.size(); }

  ComplexMatrix combine(std::span<const double> x) const {
    ComplexMatrix out(hilbert_dim, hilbert_dim);
    for (std::size_t j = 0; j < generators.size(); ++j) {
      if (x[j] == 0.0) continue;
      const auto src = generators[j].entries();
      auto dst = out.entries();
      for (std::size_t e = 0; e < dst.size(); ++e) dst[e] += x[j] * src[e];
    }
    return out;
  }

  AlgebraElement element(std::span<const double> x) const {
    std::vector<double> full(algebra.real_dimension(), 0.0);
    for (std::size_t j = 0; j < directions.size(); ++j) {
      for (std::size_t k = 0; k < full.size(); ++k) full[k] += x[j] * directions[j][k];
    }
    return from_self_adjoint_coordinates(algebra, full);
  }
};

void check_states(const SpectralTriple& t, const State& phi, const State& phi_prime) {
  if (phi.algebra().blocks() != t.algebra().blocks() || phi_prime.algebra().blocks() != t.algebra().blocks()) {
    throw NcgError(ErrorKind::kDimensionMismatch, "spectral_distance: states do not live on the triple's algebra");
  }
}

ReducedProblem reduce(const SpectralTriple& t, const State& phi, const State& phi_prime, double infinity_threshold) {
  check_states(t, phi, phi_prime);
  ReducedProblem p;
  p.hilbert_dim = t.hilbert_dim();
  p.algebra = t.algebra();

  const std::vector<AlgebraElement> basis = self_adjoint_basis(t.algebra());
  const std::size_t dim = basis.size();
  std::vector<ComplexMatrix> gens;
  std::vector<double> c(dim);
  gens.reserve(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    gens.push_back(dirac_commutator(t, basis[k]));
    c[k] = (eval(phi, basis[k]) - eval(phi_prime, basis[k])).real();
  }
  if (std::all_of(c.begin(), c.end(), [](double v) { return v == 0.0; })) {
    p.trivial_objective = true;
    return p;
  }

  ComplexMatrix gram(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i; j < dim; ++j) {
      const double g = real_inner(gens[i], gens[j]);
      gram(i, j) = g;
      gram(j, i) = g;
    }
  }
  const HermitianEigen eig = eigh(gram);
  const double top = std::max(eig.values.back(), 0.0);
  const double cutoff = kKernelRelTol * top;

  std::vector<double> kernel_part(dim, 0.0);
  for (std::size_t col = 0; col < dim; ++col) {
    std::vector<double> v(dim);
    for (std::size_t k = 0; k < dim; ++k) v[k] = eig.vectors(k, col).real();
    const double nv = norm2(v);
    for (double& vk : v) vk /= nv;
    const double proj = dot(c, v);
    if (top == 0.0 || eig.values[col] <= cutoff) {
      for (std::size_t k = 0; k < dim; ++k) kernel_part[k] += proj * v[k];
      continue;
    }
    ComplexMatrix gen(p.hilbert_dim, p.hilbert_dim);
    for (std::size_t k = 0; k < dim; ++k) {
      if (v[k] == 0.0) continue;
      const auto src = gens[k].entries();
      auto dst = gen.entries();
      for (std::size_t e = 0; e < dst.size(); ++e) dst[e] += v[k] * src[e];
    }
    p.gram.push_back(real_inner(gen, gen));
    p.generators.push_back(std::move(gen));
    p.objective.push_back(proj);
    p.directions.push_back(std::move(v));
  }
  const double leak = norm2(kernel_part);
  if (leak > infinity_threshold) {
    for (double& v : kernel_part) v /= leak;
    p.unbounded_direction = std::move(kernel_part);
  }
  if (norm2(p.objective) == 0.0) p.trivial_objective = true;
  return p;
}

/// f(x) = -log det(I - L(x)^H L(x)) with derivatives.
struct BarrierEval {
  bool feasible = false;
  double value = 0.0;
  ComplexMatrix q_inv;
  ComplexMatrix l;
};

BarrierEval barrier(const ReducedProblem& p, std::span<const double> x) {
  BarrierEval out;
  out.l = p.combine(x);
  ComplexMatrix q = ComplexMatrix::identity(p.hilbert_dim) - out.l.adjoint() * out.l;
  const auto chol = Cholesky::factor(q);
  if (!chol) return out;
  out.feasible = true;
  out.value = -chol->log_det();
  out.q_inv = chol->inverse();
  return out;
}

void barrier_derivatives(const ReducedProblem& p, const BarrierEval& b, std::vector<double>& grad, RealMatrix& hess) {
  const std::size_t m = p.size();
  std::vector<ComplexMatrix> r(m);    // L_j Q^{-1}
  std::vector<ComplexMatrix> pw(m);   // Q^{-1} (L_j^H L + L^H L_j)
  std::vector<ComplexMatrix> pwh(m);  // its adjoint
  for (std::size_t j = 0; j < m; ++j) {
    const ComplexMatrix& lj = p.generators[j];
    // Generators are sparse, so keep them on the left of every product.
    r[j] = lj * b.q_inv;
    const ComplexMatrix ljh_l = lj.adjoint() * b.l;
    pw[j] = b.q_inv * (ljh_l + ljh_l.adjoint());
    pwh[j] = pw[j].adjoint();
  }
  grad.assign(m, 0.0);
  hess = RealMatrix(m);
  for (std::size_t j = 0; j < m; ++j) {
    // Tr(Q^{-1} W_j) = 2 Re Tr(L_j Q^{-1} L^H) = 2 Re <L, L_j Q^{-1}>
    grad[j] = 2.0 * real_inner(b.l, r[j]);
    for (std::size_t k = j; k < m; ++k) {
      // Tr(P_j P_k) is real because both factors are Q^{-1}-self-adjoint.
      const double h = real_inner(pwh[j], pw[k]) + 2.0 * real_inner(p.generators[k], r[j]);
      hess(j, k) = h;
      hess(k, j) = h;
    }
  }
}

/// Dual bound from the central point: Y = (2/tau) L Q^{-1}, corrected by the
/// least-norm update so that Re Tr(Y^H L_j) = c_j exactly. Then for every x
/// c.x = Re Tr(Y^H L(x)) <= ||Y||_1 ||L(x)||.
double dual_bound(const ReducedProblem& p, const BarrierEval& b, double tau) {
  ComplexMatrix y = b.l * b.q_inv;
  y *= Complex(2.0 / tau);
  const std::size_t m = p.size();
  std::vector<double> residual(m);
  for (std::size_t j = 0; j < m; ++j) residual[j] = p.objective[j] - real_inner(y, p.generators[j]);
  for (std::size_t j = 0; j < m; ++j) {
    const double w = residual[j] / p.gram[j];
    const auto src = p.generators[j].entries();
    auto dst = y.entries();
    for (std::size_t e = 0; e < dst.size(); ++e) dst[e] += w * src[e];
  }
  return trace_norm(y);
}

DistanceResult zero_result(const SpectralTriple& t) {
  return {0.0, 0.0, AlgebraElement::zero(t.algebra()), DistanceStatus::kFinite};
}

DistanceResult infinite_result(const ReducedProblem& p) {
  return {kInfinity, kInfinity, from_self_adjoint_coordinates(p.algebra, *p.unbounded_direction),
          DistanceStatus::kInfinite};
}

}  // namespace

DistanceResult spectral_distance(const SpectralTriple& t, const State& phi, const State& phi_prime,
                                 const DistanceOptions& options) {
  if (!(options.tol > 0.0)) throw NcgError(ErrorKind::kInvalidInput, "spectral_distance: tol must be positive");
  const ReducedProblem p = reduce(t, phi, phi_prime, options.infinity_threshold);
  if (p.unbounded_direction) return infinite_result(p);
  if (p.trivial_objective || p.size() == 0) return zero_result(t);

  const std::size_t m = p.size();
  const double nu = 2.0 * static_cast<double>(p.hilbert_dim);

  DistanceResult best{0.0, kInfinity, AlgebraElement::zero(t.algebra()), DistanceStatus::kBracket};

  auto record_feasible = [&](std::span<const double> x) {
    const double g = op_norm(p.combine(x));
    if (!(g > 0.0)) return;
    const double value = dot(p.objective, x) / g;
    if (value > best.lower) {
      std::vector<double> scaled(x.begin(), x.end());
      for (double& v : scaled) v /= g;
      best.lower = value;
      best.optimizer = p.element(scaled);
    }
  };

  // Start direction along the objective gives the first lower bound and the
  // initial barrier weight.
  std::vector<double> x(m, 0.0);
  record_feasible(p.objective);
  double tau = 1.0 / std::max(best.lower, 1e-12);

  std::vector<double> grad;
  RealMatrix hess;
  BarrierEval cur = barrier(p, x);
  auto finished = [&] { return best.upper - best.lower <= options.tol * std::max(1.0, best.lower); };

  for (int outer = 0; outer < options.max_outer_iterations && !finished(); ++outer) {
    // Newton centering on F(x) = -tau c.x + f(x).
    for (int step = 0; step < options.max_newton_steps; ++step) {
      barrier_derivatives(p, cur, grad, hess);
      for (std::size_t j = 0; j < m; ++j) grad[j] -= tau * p.objective[j];
      std::vector<double> dir = solve_spd(hess, grad);
      for (double& v : dir) v = -v;
      const double decrement2 = -dot(grad, dir);
      if (!(decrement2 > 1e-18)) break;
      const double f0 = cur.value - tau * dot(p.objective, x);
      double s = 1.0;
      bool moved = false;
      for (int ls = 0; ls < 60; ++ls, s *= 0.5) {
        std::vector<double> trial(m);
        for (std::size_t j = 0; j < m; ++j) trial[j] = x[j] + s * dir[j];
        BarrierEval b = barrier(p, trial);
        if (!b.feasible) continue;
        const double f1 = b.value - tau * dot(p.objective, trial);
        if (f1 <= f0 - 0.25 * s * decrement2) {
          x = std::move(trial);
          cur = std::move(b);
          moved = true;
          break;
        }
      }
      if (!moved || decrement2 < 1e-8) break;
    }
    record_feasible(x);
    if (nu / tau <= 0.5 * options.tol * std::max(1.0, best.lower)) {
      best.upper = std::min(best.upper, dual_bound(p, cur, tau));
    }
    tau *= 8.0;
  }
  if (best.upper < best.lower) {
    // Both sides are certified up to roundoff; collapse the bracket.
    best.upper = best.lower;
  }
  best.status = finished() ? DistanceStatus::kFinite : DistanceStatus::kBracket;
  return best;
}

std::vector<std::vector<double>> distance_matrix(const SpectralTriple& t, const std::vector<State>& states,
                                                 const DistanceOptions& options) {
  if (states.size() < 2) throw NcgError(ErrorKind::kInvalidInput, "distance_matrix: need at least two states");
  const std::size_t n = states.size();
  std::vector<std::vector<double>> out(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const DistanceResult r = spectral_distance(t, states[i], states[j], options);
      out[i][j] = r.lower;
      out[j][i] = r.lower;
    }
  }
  return out;
}

std::optional<double> ascent_lower_bound(const SpectralTriple& t, const State& phi, const State& phi_prime,
                                         const AscentOptions& options) {
  const ReducedProblem p = reduce(t, phi, phi_prime, DistanceOptions{}.infinity_threshold);
  if (p.unbounded_direction) return std::nullopt;
  if (p.trivial_objective || p.size() == 0) return 0.0;
  const std::size_t m = p.size();

  // Value and supergradient of h(x) = c.x / ||L(x)||.
  auto evaluate = [&](std::span<const double> x, std::vector<double>* sup_grad) {
    const ComplexMatrix l = p.combine(x);
    const HermitianEigen eig = eigh(l.adjoint() * l);
    const std::size_t n = p.hilbert_dim;
    const double top = eig.values.back();
    // Top singular pair; ties go to the lowest eigenvector index.
    std::size_t pick = n - 1;
    for (std::size_t k = 0; k < n; ++k) {
      if (eig.values[k] >= top - 1e-12 * std::max(top, 1.0)) {
        pick = k;
        break;
      }
    }
    const double g = std::sqrt(std::max(top, 0.0));
    if (!(g > 0.0)) return -kInfinity;
    const double cx = dot(p.objective, x);
    if (sup_grad) {
      ComplexMatrix v(n, 1);
      for (std::size_t i = 0; i < n; ++i) v(i, 0) = eig.vectors(i, pick);
      ComplexMatrix u = l * v;
      u *= Complex(1.0 / g);
      sup_grad->assign(m, 0.0);
      for (std::size_t j = 0; j < m; ++j) {
        const Complex uhlv = (u.adjoint() * p.generators[j] * v)(0, 0);
        (*sup_grad)[j] = p.objective[j] / g - cx * uhlv.real() / (g * g);
      }
    }
    return cx / g;
  };

  std::vector<std::vector<double>> starts;
  starts.push_back(p.objective);
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<double> e(m, 0.0);
    e[j] = 1.0;
    starts.push_back(e);
    e[j] = -1.0;
    starts.push_back(e);
  }
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t s = 0; s < options.random_starts; ++s) {
    std::vector<double> v(m);
    for (double& vi : v) vi = normal(rng);
    starts.push_back(std::move(v));
  }

  double best = 0.0;
  std::vector<double> sg;
  for (std::vector<double> x : starts) {
    double nx = norm2(x);
    if (!(nx > 0.0)) continue;
    for (double& v : x) v /= nx;
    double current = evaluate(x, &sg);
    best = std::max(best, current);
    for (int it = 0; it < options.iterations; ++it) {
      const double ng = norm2(sg);
      if (!(ng > 1e-14)) break;
      const double step = 0.5 / std::sqrt(1.0 + it);
      std::vector<double> trial(m);
      for (std::size_t j = 0; j < m; ++j) trial[j] = x[j] + step * sg[j] / ng;
      nx = norm2(trial);
      for (double& v : trial) v /= nx;
      std::vector<double> trial_grad;
      const double value = evaluate(trial, &trial_grad);
      x = std::move(trial);
      sg = std::move(trial_grad);
      current = value;
      best = std::max(best, current);
    }
  }
  return best;
}

double quarter_disk_sup(double x, double y) {
  if (x < 0.0 || y < 0.0) throw NcgError(ErrorKind::kInvalidInput, "quarter_disk_sup: arguments must be nonnegative");
  // alpha x + beta y on the boundary arc is concave in the angle; golden-section search.
  auto f = [&](double theta) { return std::cos(theta) * x + std::sin(theta) * y; };
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = 0.0;
  double hi = 0.5 * std::acos(-1.0);
  double a = hi - phi * (hi - lo);
  double b = lo + phi * (hi - lo);
  double fa = f(a);
  double fb = f(b);
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    if (fa < fb) {
      lo = a;
      a = b;
      fa = fb;
      b = lo + phi * (hi - lo);
      fb = f(b);
    } else {
      hi = b;
      b = a;
      fb = fa;
      a = hi - phi * (hi - lo);
      fa = f(a);
    }
  }
  return std::max({f(0.5 * (lo + hi)), f(0.0), f(0.5 * std::acos(-1.0))});
}

}  // namespace ncg
