#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "ncg/algebra.hpp"
#include "ncg/spectral_triple.hpp"

namespace ncg {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class DistanceStatus { kFinite, kInfinite, kBracket };

std::string_view to_string(DistanceStatus s);

/// Certified bracket lower <= d(phi, phi') <= upper.
///
/// `optimizer` is a self-adjoint element with ||[D, pi(optimizer)]|| <= 1
/// and phi(optimizer) - phi'(optimizer) = lower. For infinite distances it
/// is a direction in the kernel of a -> [D, pi(a)] along which the
/// objective grows, and lower = upper = +inf.
struct DistanceResult {
  double lower;
  double upper;
  AlgebraElement optimizer;
  DistanceStatus status;
};

struct DistanceOptions {
  /// Relative gap target: upper - lower <= tol * max(1, lower).
  double tol = 1e-6;
  /// |c . n| above this for a unit kernel vector n means infinite distance.
  double infinity_threshold = 1e-10;
  /// Outer barrier-parameter increases before giving up with a bracket.
  int max_outer_iterations = 60;
  int max_newton_steps = 200;
};

/// Connes distance sup { phi(a) - phi'(a) : a = a^*, ||[D, pi(a)]|| <= 1 }.
DistanceResult spectral_distance(const SpectralTriple& t, const State& phi, const State& phi_prime,
                                 const DistanceOptions& options = {});

/// Pairwise distances: entry (i, j) is the achieved lower bound of
/// d(states[i], states[j]), +inf when infinite. Symmetric, zero diagonal.
std::vector<std::vector<double>> distance_matrix(const SpectralTriple& t, const std::vector<State>& states,
                                                 const DistanceOptions& options = {});

struct AscentOptions {
  std::size_t random_starts = 32;
  std::uint64_t seed = 0;
  int iterations = 400;
};

/// Lower bound by multi-start projected supergradient ascent of
/// (phi - phi')(a) / ||[D, pi(a)]|| over the unit sphere orthogonal to the
/// kernel. Returns std::nullopt when the distance is infinite. Independent
/// of the interior-point route; the returned value is always achieved by a
/// feasible element.
std::optional<double> ascent_lower_bound(const SpectralTriple& t, const State& phi, const State& phi_prime,
                                         const AscentOptions& options = {});

/// sup { alpha x + beta y : alpha, beta >= 0, alpha^2 + beta^2 <= 1 } for
/// x, y >= 0, evaluated by maximizing over the quarter circle.
double quarter_disk_sup(double x, double y);

}  // namespace ncg
