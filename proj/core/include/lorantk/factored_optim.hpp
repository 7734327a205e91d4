// Copyright (C) 2026 The lorantk Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lorantk/model.hpp"

namespace lorantk {

enum class InitScheme {
  LoraStandard,  // u = 0, v ~ N(0, sigma_init^2)
  BothGaussian,  // u, v ~ N(0, sigma_init^2)
};

const char* to_string(InitScheme scheme);

struct TrainConfig {
  int rank = 1;
  double lambda = 0.01;
  double step_size = 1e-3;
  int epochs = 100;
  /// 0 means full batch.
  std::size_t batch_size = 0;
  InitScheme init = InitScheme::LoraStandard;
  double sigma_init = 1e-2;
  /// Std of isotropic Gaussian noise added to every stochastic gradient.
  double noise_std = 0.0;
  std::uint64_t seed = 0;
  /// Radius of the random PSD perturbation; 0 trains the unperturbed objective.
  double perturb_eps = 0.0;
  /// Early stop once the full-batch gradient norm drops below this.
  double tol_grad = 1e-6;
  /// Full-batch, noise-free runs halve the step whenever it would increase
  /// the objective (beyond roundoff).
  bool backtrack = true;
  /// Record every k-th epoch (the first and last epochs are always kept).
  int record_every = 1;

  void validate(std::size_t num_samples) const;
};

struct EpochRecord {
  int epoch = 0;
  double factored_risk = 0.0;
  double regularized_risk = 0.0;  // L(uv^T) + lambda ||uv^T||_*
  double grad_norm = 0.0;
  double step_size = 0.0;
};

enum class TrainStatus { Converged, BudgetExhausted, Diverged };

const char* to_string(TrainStatus status);

struct TrainTrace {
  std::vector<EpochRecord> records;
  LoraFactors factors;
  PsdPerturbation perturbation;
  std::uint64_t seed = 0;
  TrainStatus status = TrainStatus::BudgetExhausted;
  int epochs_run = 0;
  std::string message;

  const EpochRecord& final_record() const { return records.back(); }
};

/// Wishart direction A A^T rescaled to Frobenius norm eps * theta, theta ~ U(0, 1).
PsdPerturbation sample_psd_perturbation(int dim, double eps, std::uint64_t seed);

LoraFactors init_factors(const TrainConfig& config, const BlockShape& shape);

/// Plain (S)GD on factored_risk. Divergence is reported in the trace, not thrown.
TrainTrace train(const LinearizedDataset& data, const TrainConfig& config);

/// Same as train() but with a caller-supplied perturbation (dimension m + n).
TrainTrace train(const LinearizedDataset& data, const TrainConfig& config,
                 const PsdPerturbation& perturbation);

/// Smallest r with r(r+1)/2 > K*N.
int rank_threshold(long output_dim, long num_samples);

}  // namespace lorantk
