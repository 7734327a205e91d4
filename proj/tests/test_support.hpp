// Copyright (C) 2026 The lorantk Authors
// SPDX-License-Identifier: Apache-2.0
//
// Random instances and finite-difference oracles shared by the tests.

#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "lorantk/model.hpp"

namespace lorantk::testing {

inline Matrix gaussian(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols,
                       double scale = 1.0) {
  std::normal_distribution<double> nd(0.0, scale);
  Matrix a(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) a(i, j) = nd(rng);
  return a;
}

/// Random blocks summing to m x n: one block or two when both sides allow.
inline BlockShape random_shape(std::mt19937_64& rng, int m, int n) {
  if (m >= 2 && n >= 2 && std::uniform_int_distribution<int>(0, 1)(rng) == 1) {
    const int m1 = std::uniform_int_distribution<int>(1, m - 1)(rng);
    const int n1 = std::uniform_int_distribution<int>(1, n - 1)(rng);
    return BlockShape({{m1, n1}, {m - m1, n - n1}});
  }
  return BlockShape::single(m, n);
}

inline LinearizedDataset random_dataset(std::mt19937_64& rng, LossKind loss, const BlockShape& shape,
                                        int k, int n_samples, double feature_scale = 0.5) {
  const Eigen::Index e = shape.block_entries();
  Matrix features = gaussian(rng, e, static_cast<Eigen::Index>(n_samples) * k, feature_scale);
  Matrix base = gaussian(rng, k, n_samples, 0.3);
  std::vector<std::size_t> classes;
  Matrix targets;
  if (loss == LossKind::CrossEntropy) {
    std::uniform_int_distribution<std::size_t> cls(0, static_cast<std::size_t>(k) - 1);
    for (int i = 0; i < n_samples; ++i) classes.push_back(cls(rng));
  } else {
    targets = gaussian(rng, k, n_samples);
  }
  return LinearizedDataset(loss, shape, k, std::move(features), std::move(base), std::move(classes),
                           std::move(targets));
}

/// Central differences of a scalar function of a matrix argument.
inline Matrix fd_gradient(const std::function<double(const Matrix&)>& fn, const Matrix& x,
                          double h = 1e-5) {
  Matrix g(x.rows(), x.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      Matrix xp = x, xm = x;
      xp(i, j) += h;
      xm(i, j) -= h;
      g(i, j) = (fn(xp) - fn(xm)) / (2.0 * h);
    }
  }
  return g;
}

inline double rel_err(const Matrix& got, const Matrix& want) {
  return (got - want).norm() / std::max(1.0, want.norm());
}

/// Plain nested-loop evaluation of L(delta), independent of the packed storage.
inline double scalar_risk(const Matrix& delta, const LinearizedDataset& data) {
  double total = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const LinearizedSample s = data.sample(i);
    const int k = data.output_dim();
    std::vector<double> yhat(k);
    for (int j = 0; j < k; ++j) {
      const Matrix g = s.features.dense(j);
      double acc = s.base_output(j);
      for (Eigen::Index r = 0; r < g.rows(); ++r)
        for (Eigen::Index c = 0; c < g.cols(); ++c) acc += g(r, c) * delta(r, c);
      yhat[j] = acc;
    }
    if (data.loss() == LossKind::CrossEntropy) {
      double mx = yhat[0];
      for (double y : yhat) mx = std::max(mx, y);
      double z = 0.0;
      for (double y : yhat) z += std::exp(y - mx);
      total += mx + std::log(z) - yhat[std::get<std::size_t>(s.label)];
    } else {
      const Vector& y = std::get<Vector>(s.label);
      for (int j = 0; j < k; ++j) total += (yhat[j] - y(j)) * (yhat[j] - y(j));
    }
  }
  return total / static_cast<double>(data.size());
}

}  // namespace lorantk::testing
