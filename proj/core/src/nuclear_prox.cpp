// Copyright (C) 2026 The lorantk Authors
// SPDX-License-Identifier: Apache-2.0

#include "lorantk/nuclear_prox.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace lorantk {

namespace {

struct Thresholded {
  Matrix value;
  double nuclear = 0.0;
};

Thresholded svt_with_norm(const Matrix& delta, double tau) {
  if (!delta.allFinite()) throw NumericalError("svt: non-finite input");
  Eigen::JacobiSVD<Matrix> svd(delta, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector s = (svd.singularValues().array() - tau).max(0.0).matrix();
  if (tau == 0.0) return {delta, s.sum()};
  return {svd.matrixU() * s.asDiagonal() * svd.matrixV().transpose(), s.sum()};
}

}  // namespace

void ProxConfig::validate() const {
  if (!(lambda >= 0.0)) throw std::invalid_argument("ProxConfig: lambda must be >= 0");
  if (!(initial_step > 0.0)) throw std::invalid_argument("ProxConfig: initial step must be > 0");
  if (!(backtrack_factor > 0.0 && backtrack_factor < 1.0))
    throw std::invalid_argument("ProxConfig: backtracking factor must be in (0, 1)");
  if (max_iterations < 1) throw std::invalid_argument("ProxConfig: max_iterations must be >= 1");
  if (!(tolerance > 0.0)) throw std::invalid_argument("ProxConfig: tolerance must be > 0");
}

Matrix svt(const Matrix& delta, double tau) {
  if (!(tau >= 0.0)) throw std::invalid_argument("svt: tau must be >= 0");
  return svt_with_norm(delta, tau).value;
}

Matrix smooth_gradient(const Matrix& delta, const LinearizedDataset& data) {
  return assemble_S(dual_weights(delta, data), data);
}

ProxResult prox_gradient(const LinearizedDataset& data, const ProxConfig& config,
                         std::optional<Matrix> start) {
  config.validate();
  const auto& shape = data.shape();
  Matrix delta = start ? std::move(*start) : Matrix::Zero(shape.rows(), shape.cols());
  require_shape(delta, shape.rows(), shape.cols(), "prox_gradient start");

  const double lambda = config.lambda;
  double alpha = config.initial_step;
  double loss = empirical_risk(delta, data);
  Matrix grad = smooth_gradient(delta, data);

  ProxResult out;
  out.objective.push_back(loss + (lambda > 0.0 ? lambda * nuclear_norm(delta) : 0.0));

  for (int it = 1; it <= config.max_iterations; ++it) {
    Thresholded cand;
    double cand_loss = 0.0;
    Matrix step;
    const double slack = 8.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(loss));
    for (int halvings = 0;; ++halvings) {
      cand = svt_with_norm(delta - alpha * grad, alpha * lambda);
      step = cand.value - delta;
      cand_loss = empirical_risk(cand.value, data);
      const double model = loss + frobenius_dot(grad, step) + step.squaredNorm() / (2.0 * alpha);
      if (cand_loss <= model + slack) break;
      if (halvings > 200) throw NumericalError("prox_gradient: backtracking failed");
      alpha *= config.backtrack_factor;
    }
    out.residual = step.norm() / alpha;
    delta = std::move(cand.value);
    loss = cand_loss;
    out.objective.push_back(loss + lambda * cand.nuclear);
    out.iterations = it;
    if (out.residual < config.tolerance) {
      out.converged = true;
      break;
    }
    grad = smooth_gradient(delta, data);
  }
  out.delta = std::move(delta);
  out.final_step = alpha;
  return out;
}

GlobalMin global_min_value(const LinearizedDataset& data, double lambda, double tolerance,
                           int max_iterations) {
  ProxConfig cfg;
  cfg.lambda = lambda;
  cfg.tolerance = tolerance;
  cfg.max_iterations = max_iterations;
  ProxResult res = prox_gradient(data, cfg);
  if (!res.converged) {
    throw NumericalError("global_min_value: prox gradient did not converge (residual " +
                         std::to_string(res.residual) + " after " +
                         std::to_string(res.iterations) + " iterations)");
  }
  GlobalMin out;
  out.nuclear_norm = nuclear_norm(res.delta);
  out.value = empirical_risk(res.delta, data) + lambda * out.nuclear_norm;
  out.minimizer = std::move(res.delta);
  out.residual = res.residual;
  out.iterations = res.iterations;
  return out;
}

}  // namespace lorantk
