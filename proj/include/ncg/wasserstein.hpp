#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace ncg {

/// Finite metric space: labelled points, optional coordinates, and a
/// validated distance matrix.
class FiniteMetricSpace {
 public:
  /// Throws NcgError unless dist is square, symmetric, nonnegative, has zero
  /// diagonal and satisfies the triangle inequality within 1e-12.
  static FiniteMetricSpace make(std::vector<std::string> labels, std::vector<std::vector<double>> coords,
                                std::vector<std::vector<double>> dist);
  /// Points of R^k with the Euclidean distance. Labels are "0", "1", ...
  static FiniteMetricSpace euclidean(std::vector<std::vector<double>> points);

  std::size_t size() const noexcept { return dist_.size(); }
  double dist(std::size_t i, std::size_t j) const { return dist_[i][j]; }
  const std::vector<std::vector<double>>& distances() const noexcept { return dist_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<std::vector<double>>& coords() const noexcept { return coords_; }

 private:
  FiniteMetricSpace(std::vector<std::string> labels, std::vector<std::vector<double>> coords,
                    std::vector<std::vector<double>> dist)
      : labels_(std::move(labels)), coords_(std::move(coords)), dist_(std::move(dist)) {}

  std::vector<std::string> labels_;
  std::vector<std::vector<double>> coords_;
  std::vector<std::vector<double>> dist_;
};

/// Cartesian product with d((x1,x2),(y1,y2)) = sqrt(d1^2 + d2^2). Point
/// (i, j) gets index i * |s2| + j, matching the tensor-algebra block order.
FiniteMetricSpace product_space(const FiniteMetricSpace& s1, const FiniteMetricSpace& s2);

/// Probability measure on a finite space.
class Measure {
 public:
  /// Throws NcgError on negative weights or a total differing from 1 by
  /// more than 1e-12.
  static Measure make(std::vector<double> weights);
  static Measure dirac(std::size_t n, std::size_t i);

  std::size_t size() const noexcept { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  const std::vector<double>& weights() const noexcept { return weights_; }

 private:
  explicit Measure(std::vector<double> weights) : weights_(std::move(weights)) {}

  std::vector<double> weights_;
};

Measure product_measure(const Measure& m1, const Measure& m2);

struct W1Result {
  double value;
  double primal_value;
  double dual_value;
  /// 1-Lipschitz potential with potential[0] = 0 attaining the dual value.
  std::vector<double> potential;
  /// Optimal coupling, plan[i][j] mass moved from i to j.
  std::vector<std::vector<double>> plan;
};

/// Wasserstein-1 distance, with the transport LP and the Lipschitz-potential
/// LP solved separately. Throws NcgError if the two values differ by more
/// than 1e-9.
W1Result w1(const FiniteMetricSpace& space, const Measure& mu, const Measure& nu);

/// The measure lambda * delta_1 + (1 - lambda) * delta_0 on {0, 1}.
Measure segment_measure(double lambda);

struct SquareSweepRow {
  double lambda;
  double w_first;
  double w_second;
  double w_product;
  double ratio;
};

/// W on {0,1}^2 between segment_measure(l)^2 and delta_0^2 compared with
/// the factor distances, for each lambda in `lambdas`.
std::vector<SquareSweepRow> square_sweep(const std::vector<double>& lambdas);

/// lambda + sqrt(2) (1 - lambda).
double k_lambda(double lambda);

}  // namespace ncg
