// Copyright (C) 2026 The lorantk Authors
// SPDX-License-Identifier: Apache-2.0
//
// Proximal gradient on L(delta) + lambda ||delta||_*, the convex reference
// used to certify every factored run.

#pragma once

#include <optional>
#include <vector>

#include "lorantk/model.hpp"

namespace lorantk {

struct ProxConfig {
  double lambda = 0.0;
  double initial_step = 1.0;
  double backtrack_factor = 0.5;
  int max_iterations = 20000;
  /// Stop when ||delta_{t+1} - delta_t||_F / alpha falls below this.
  double tolerance = 1e-10;

  void validate() const;
};

struct ProxResult {
  Matrix delta;
  std::vector<double> objective;  // L_lambda per accepted iterate, starting at delta_0
  double final_step = 0.0;
  double residual = 0.0;          // last ||delta_{t+1} - delta_t||_F / alpha
  int iterations = 0;
  bool converged = false;
};

/// Singular value soft-thresholding: U max(S - tau, 0) V^T.
Matrix svt(const Matrix& delta, double tau);

/// Gradient of the smooth part, grad L(delta) = S(dual_weights(delta)).
Matrix smooth_gradient(const Matrix& delta, const LinearizedDataset& data);

ProxResult prox_gradient(const LinearizedDataset& data, const ProxConfig& config,
                         std::optional<Matrix> start = std::nullopt);

struct GlobalMin {
  double value = 0.0;
  Matrix minimizer;
  double nuclear_norm = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

/// min_delta L_lambda(delta) by a tight prox solve; throws NumericalError
/// when the solver hits its iteration cap.
GlobalMin global_min_value(const LinearizedDataset& data, double lambda,
                           double tolerance = 1e-10, int max_iterations = 200000);

}  // namespace lorantk
