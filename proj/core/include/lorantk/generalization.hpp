// Copyright (C) 2026 The lorantk Authors
// SPDX-License-Identifier: Apache-2.0
//
// Excess-risk bound for the nuclear-norm regularized estimator, the matching
// regularization weight and perturbation budget, synthetic tasks with a
// planted update, and a Monte-Carlo check of the bound.

#pragma once

#include <cstdint>
#include <numbers>
#include <vector>

#include "lorantk/factored_optim.hpp"
#include "lorantk/model.hpp"

namespace lorantk {

/// sup ||grad of cross-entropy w.r.t. logits||_2 = sqrt 2.
inline constexpr double kCrossEntropyLipschitz = std::numbers::sqrt2;

struct BoundSpec {
  int output_dim = 1;          // K
  double feature_bound = 1.0;  // R >= sup ||G^(j)(X)||_F
  std::size_t num_samples = 1;
  double eta = 0.1;            // failure probability
  double slack = 0.1;          // epsilon
  double lipschitz = kCrossEntropyLipschitz;
  double true_nuclear = 1.0;   // ||delta_true||_*

  void validate() const;
};

/// (2 + eps) sqrt(2K) G R / sqrt(N) (2 + sqrt(log 1/eta)).
double lambda_from_bound(const BoundSpec& spec);

/// ||delta_true||_* (2 + eps)^2 sqrt(2K) G R / sqrt(N) (2 + sqrt(log 1/eta)).
double excess_risk_bound(const BoundSpec& spec);

/// eps lambda ||delta_true||_* / (2 ||delta_lambda||_*); +infinity when the
/// regularized solution is zero (any perturbation size is admissible then).
double perturbation_budget(const BoundSpec& spec, double lambda, double lambda_nuclear);

/// Lipschitz constant of the squared error over predictors with
/// ||delta||_* <= reach when labels are f0 + <G, delta_true> + N(0, sigma^2):
/// 2 (sqrt(K) R (reach + ||delta_true||_*) + 5 sqrt(K) sigma).
double squared_error_lipschitz(int output_dim, double feature_bound, double reach,
                               double true_nuclear, double label_noise);

struct SyntheticTaskConfig {
  LossKind loss = LossKind::CrossEntropy;
  int rows = 3;
  int cols = 3;
  int output_dim = 2;
  double feature_bound = 1.0;
  double true_nuclear = 4.0;
  int true_rank = 1;
  /// Std of the additive label noise (squared error only).
  double label_noise = 0.1;
  /// Std of the entries of f0.
  double base_scale = 0.0;
  std::size_t n_pop = 10000;
  std::uint64_t seed = 0;

  void validate() const;
};

struct RiskEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// Single-block task with Gaussian features rescaled to ||G^(j)||_F = R and
/// a planted rank-k update. Population risks are averages over a fixed
/// holdout of feature draws of the loss in expectation over the label.
class SyntheticTask {
 public:
  explicit SyntheticTask(SyntheticTaskConfig config);

  const SyntheticTaskConfig& config() const { return config_; }
  const BlockShape& shape() const { return shape_; }
  const Matrix& delta_true() const { return delta_true_; }

  /// N training samples drawn with the given seed.
  LinearizedDataset draw(std::size_t n, std::uint64_t seed) const;

  RiskEstimate population_risk(const Matrix& delta) const;
  /// L(delta) - L(delta_true), paired over the holdout.
  RiskEstimate excess_risk(const Matrix& delta) const;

 private:
  Vector expected_losses(const Matrix& delta) const;

  SyntheticTaskConfig config_;
  BlockShape shape_;
  Matrix delta_true_;
  Matrix pop_features_;  // E x (n_pop * K)
  Matrix pop_base_;      // K x n_pop
  Matrix pop_true_;      // K x n_pop, true outputs
};

struct MonteCarloConfig {
  std::vector<std::size_t> sample_sizes{25, 100, 400};
  int trials = 100;
  double eta = 0.1;
  double slack = 0.1;
  /// Factored training; rank 0 selects rank_threshold(K, N). perturb_eps is
  /// ignored and replaced by min(perturbation_budget, perturb_cap).
  TrainConfig train;
  double perturb_cap = 1e-3;
  double prox_tolerance = 1e-10;
  std::uint64_t seed = 0;
  unsigned threads = 0;

  void validate() const;
};

struct TrialResult {
  std::size_t num_samples = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  double lambda = 0.0;
  double bound = 0.0;
  double lambda_nuclear = 0.0;  // ||delta_lambda||_* from the convex solve
  double budget = 0.0;
  double perturb_radius = 0.0;
  int rank = 0;
  TrainStatus status = TrainStatus::BudgetExhausted;
  double excess = 0.0;
  double excess_std_error = 0.0;
  bool violated = false;
};

struct SizeSummary {
  std::size_t num_samples = 0;
  double lambda = 0.0;
  double bound = 0.0;
  int used = 0;
  int excluded = 0;  // non-converged or diverged trials
  int violations = 0;
  /// Trials whose regularized convex solution is exactly zero.
  int zero_solutions = 0;
  double violation_rate = 0.0;
  double mean_excess = 0.0;
  double std_error = 0.0;
};

struct MonteCarloReport {
  std::vector<TrialResult> trials;
  std::vector<SizeSummary> sizes;
  double lipschitz = 0.0;
  double true_risk = 0.0;
  double zero_excess = 0.0;  // L(0) - L(delta_true)
  /// Least squares fit of log(mean excess) against log N.
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double max_violation_rate = 0.0;
};

MonteCarloReport monte_carlo_gap(const SyntheticTask& task, const MonteCarloConfig& config);

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares of log y on log x; NaN slope if any y <= 0.
LogLogFit fit_log_log(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace lorantk
