#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ncg/serialize.hpp"

namespace ncg {

/// Knobs shared by all experiments. Unset values fall back to each
/// experiment's own default.
struct ExperimentParams {
  std::optional<double> lambda;
  std::optional<double> mu;
  std::optional<double> tol;
  std::optional<std::size_t> trials;
  std::optional<std::size_t> n;
  std::optional<std::size_t> lambda_steps;
  std::uint64_t seed = 0;
};

/// Outcome of one named reproduction. `claimed` is a number, "inf", or a
/// relation string; `computed` holds whatever the check measured.
struct ExperimentReport {
  std::string experiment_id;
  Json inputs;
  Json claimed;
  Json computed;
  bool pass = false;
  double tolerance = 0.0;
  double runtime = 0.0;
};

/// Runtime is wall-clock and so is left out when comparing reports.
Json to_json(const ExperimentReport& r, bool with_runtime = true);

/// Sorted list of known experiment ids.
const std::vector<std::string>& experiment_ids();
bool is_experiment(std::string_view id);

/// Throws NcgError(kInvalidInput) for an unknown id.
ExperimentReport run_experiment(std::string_view id, const ExperimentParams& params);

struct SweepOutput {
  ExperimentReport report;
  std::string csv;
};

/// Sweeps emitting CSV. Only "wasserstein-rsquare" is defined: lambda = k/N
/// for k = 1..N with columns lambda,W1,W2,W,ratio,k_lambda.
SweepOutput run_sweep(std::string_view id, const ExperimentParams& params);

}  // namespace ncg
