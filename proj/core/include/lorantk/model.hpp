// Copyright (C) 2026 The lorantk Authors
// SPDX-License-Identifier: Apache-2.0
//
// Linearized (first-order Taylor) fine-tuning model: domain types, the
// prediction map, empirical / nuclear-regularized / factored objectives and
// their exact first and second derivatives.

#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "lorantk/linalg.hpp"

namespace lorantk {

enum class LossKind { SquaredError, CrossEntropy };

const char* to_string(LossKind kind);

/// Row/column sizes of the T tuned layers. Block i sits on the diagonal of
/// the stacked m x n update at (row_offset(i), col_offset(i)).
class BlockShape {
 public:
  struct Block {
    int rows = 0;
    int cols = 0;
    bool operator==(const Block&) const = default;
  };

  explicit BlockShape(std::vector<Block> blocks);
  static BlockShape single(int rows, int cols) { return BlockShape({{rows, cols}}); }

  const std::vector<Block>& blocks() const { return blocks_; }
  int num_blocks() const { return static_cast<int>(blocks_.size()); }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  /// Number of entries that live inside diagonal blocks.
  int block_entries() const { return entries_; }

  int row_offset(int b) const { return row_off_[b]; }
  int col_offset(int b) const { return col_off_[b]; }
  int entry_offset(int b) const { return entry_off_[b]; }

  /// Block entries of an m x n matrix, block by block, row-major in a block.
  Vector gather(const Matrix& delta) const;
  /// Inverse of gather: block-diagonal m x n matrix, zero off the blocks.
  Matrix scatter(const Eigen::Ref<const Vector>& entries) const;

  bool operator==(const BlockShape& other) const { return blocks_ == other.blocks_; }

 private:
  std::vector<Block> blocks_;
  std::vector<int> row_off_, col_off_, entry_off_;
  int rows_ = 0, cols_ = 0, entries_ = 0;
};

/// K block-diagonal m x n matrices G^(j)(X), stored as their block entries.
class FeatureMap {
 public:
  /// `entries` is E x K: column j holds the gathered blocks of G^(j).
  FeatureMap(BlockShape shape, Matrix entries);
  /// blocks[j][b] is block b of G^(j).
  static FeatureMap from_blocks(BlockShape shape, const std::vector<std::vector<Matrix>>& blocks);

  const BlockShape& shape() const { return shape_; }
  int output_dim() const { return static_cast<int>(entries_.cols()); }
  const Matrix& entries() const { return entries_; }

  Matrix block(int j, int b) const;
  /// G^(j) as a dense m x n matrix.
  Matrix dense(int j) const { return shape_.scatter(entries_.col(j)); }
  /// <G^(j), delta>, summed over diagonal blocks only.
  double inner(int j, const Matrix& delta) const;

 private:
  BlockShape shape_;
  Matrix entries_;
};

/// Class index in [0, K) for cross-entropy, real K-vector for squared error.
using Label = std::variant<std::size_t, Vector>;

struct LinearizedSample {
  FeatureMap features;
  Vector base_output;
  Label label;
};

/// N linearized samples sharing one block shape and output dimension.
/// Features are kept as one E x (N*K) matrix; column i*K + j is G^(j)(X_i).
class LinearizedDataset {
 public:
  LinearizedDataset(LossKind loss, BlockShape shape, int output_dim,
                    const std::vector<LinearizedSample>& samples);
  /// Direct constructor from packed storage. `classes` is used for
  /// cross-entropy, `targets` (K x N) for squared error.
  LinearizedDataset(LossKind loss, BlockShape shape, int output_dim, Matrix features,
                    Matrix base_outputs, std::vector<std::size_t> classes, Matrix targets);

  LossKind loss() const { return loss_; }
  const BlockShape& shape() const { return shape_; }
  int output_dim() const { return k_; }
  std::size_t size() const { return n_; }

  LinearizedSample sample(std::size_t i) const;

  const Matrix& features() const { return features_; }
  const Matrix& base_outputs() const { return base_; }          // K x N
  const std::vector<std::size_t>& classes() const { return classes_; }
  const Matrix& targets() const { return targets_; }            // K x N
  Label label(std::size_t i) const;

  /// K x N matrix of predictions f0 + <G, delta>.
  Matrix predictions(const Matrix& delta) const;
  /// Predictions for the samples in `batch` (K x |batch|).
  Matrix predictions(const Matrix& delta, std::span<const std::size_t> batch) const;

 private:
  void validate() const;

  LossKind loss_;
  BlockShape shape_;
  int k_ = 0;
  std::size_t n_ = 0;
  Matrix features_;
  Matrix base_;
  std::vector<std::size_t> classes_;
  Matrix targets_;
};

/// Factored update delta = u v^T with u: m x r, v: n x r.
class LoraFactors {
 public:
  LoraFactors(Matrix u, Matrix v);
  /// Splits a stacked (m+n) x r matrix Q = [u; v].
  static LoraFactors from_stacked(const Matrix& q, int m);
  /// u = U sqrt(S), v = V sqrt(S) from the SVD of delta, zero-padded to
  /// `rank` columns. Requires rank >= numerical rank of delta.
  static LoraFactors balanced(const Matrix& delta, int rank, double rel_tol = 1e-12);

  const Matrix& u() const { return u_; }
  const Matrix& v() const { return v_; }
  int rank_budget() const { return static_cast<int>(u_.cols()); }
  Matrix stacked() const;
  Matrix product() const { return u_ * v_.transpose(); }

 private:
  Matrix u_, v_;
};

/// Symmetric PSD perturbation P with ||P||_F < bound (bound == 0 encodes P = 0).
class PsdPerturbation {
 public:
  PsdPerturbation(Matrix p, double bound);
  static PsdPerturbation zero(int dim);

  const Matrix& matrix() const { return p_; }
  double bound() const { return bound_; }
  int dim() const { return static_cast<int>(p_.rows()); }
  bool is_zero() const { return bound_ == 0.0; }

 private:
  Matrix p_;
  double bound_;
};

/// values(i, j) = (1/N) d loss / d yhat_i^(j) at the current prediction.
struct DualWeights {
  Matrix values;  // N x K
};

// Per-sample losses on a single K-vector prediction.
double loss_value(LossKind kind, const Vector& yhat, const Label& label);
Vector loss_gradient(LossKind kind, const Vector& yhat, const Label& label);
Matrix loss_hessian(LossKind kind, const Vector& yhat, const Label& label);

Vector predict(const LinearizedSample& sample, const Matrix& delta);

double empirical_risk(const Matrix& delta, const LinearizedDataset& data);
double empirical_risk(const Matrix& delta, const LinearizedDataset& data,
                      std::span<const std::size_t> batch);

/// L(delta) + lambda * ||delta||_*.
double regularized_risk(const Matrix& delta, const LinearizedDataset& data, double lambda);

/// L(u v^T) + lambda/2 (||u||^2 + ||v||^2) + <P, Q Q^T>.
double factored_risk(const LoraFactors& f, const LinearizedDataset& data, double lambda,
                     const PsdPerturbation& p);
double factored_risk(const LoraFactors& f, const LinearizedDataset& data, double lambda,
                     const PsdPerturbation& p, std::span<const std::size_t> batch);

DualWeights dual_weights(const Matrix& delta, const LinearizedDataset& data);
DualWeights dual_weights(const LoraFactors& f, const LinearizedDataset& data);

/// S(v) = sum_ij v_i^(j) G^(j)(X_i); block-diagonal m x n.
Matrix assemble_S(const DualWeights& w, const LinearizedDataset& data);

struct FactorGradient {
  Matrix u;  // m x r
  Matrix v;  // n x r
  Matrix stacked() const;
  double norm() const { return std::sqrt(u.squaredNorm() + v.squaredNorm()); }
};

FactorGradient grad_factored(const LoraFactors& f, const LinearizedDataset& data, double lambda,
                             const PsdPerturbation& p);
FactorGradient grad_factored(const LoraFactors& f, const LinearizedDataset& data, double lambda,
                             const PsdPerturbation& p, std::span<const std::size_t> batch);

/// Objective value and gradient from one forward/backward pass.
struct FactoredEvaluation {
  double value = 0.0;
  FactorGradient gradient;
};

FactoredEvaluation evaluate_factored(const LoraFactors& f, const LinearizedDataset& data,
                                     double lambda, const PsdPerturbation& p,
                                     std::span<const std::size_t> batch);

/// Largest Hessian side assembled densely; beyond it use hessian_vector_product.
inline constexpr int kMaxDenseHessianSide = 4096;

/// Exact Hessian of factored_risk in the coordinates vec(Q), Q = [u; v]
/// column-major, i.e. index = col * (m + n) + row.
Matrix hessian_factored(const LoraFactors& f, const LinearizedDataset& data, double lambda,
                        const PsdPerturbation& p);

/// Hessian applied to a direction shaped like Q; returns a Q-shaped matrix.
Matrix hessian_vector_product(const LoraFactors& f, const LinearizedDataset& data, double lambda,
                              const PsdPerturbation& p, const Matrix& direction);

}  // namespace lorantk
