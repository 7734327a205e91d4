// Copyright (C) 2026 The lorantk Authors
// SPDX-License-Identifier: Apache-2.0
//
// Constructive rank reduction of a nuclear-norm-regularized minimizer.
//
// delta is lifted to Z = [u; v][u; v]^T (balanced factors), and Z is moved
// along symmetric directions D with range(D) in range(Z) and A(D) = 0 until
// it hits the PSD boundary. Each step keeps the objective and drops the rank,
// so the loop ends at rank r with r(r+1)/2 <= K*N.

#pragma once

#include <optional>
#include <vector>

#include "lorantk/model.hpp"

namespace lorantk {

/// Input is not (close enough to) a minimizer: a null direction with nonzero
/// trace would decrease the lifted objective.
class OptimalityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Z = basis * core * basis^T, with orthonormal basis columns spanning range(Z).
struct PsdLift {
  Matrix z;
  Matrix basis;  // (m+n) x r'
  Matrix core;   // r' x r', positive definite
  int m = 0;     // rows of the tracked update
  double rank_tol = 1e-8;

  int rank() const { return static_cast<int>(basis.cols()); }
  double trace() const { return core.trace(); }
};

/// A(Z)_{i*K+j} = <G^(j)(X_i), Zbar>, with Zbar the upper-right m x n block.
class FeatureOperator {
 public:
  explicit FeatureOperator(const LinearizedDataset& data) : data_(&data) {}

  Vector apply(const Matrix& z) const;
  /// A applied to a block that is already the m x n off-diagonal part.
  Vector apply_offdiag(const Matrix& zbar) const;
  int output_size() const {
    return static_cast<int>(data_->size()) * data_->output_dim();
  }
  const LinearizedDataset& data() const { return *data_; }

 private:
  const LinearizedDataset* data_;
};

PsdLift lift_to_psd(const Matrix& delta, double rank_tol = 1e-8);

/// Lift of an arbitrary PSD matrix whose upper-left block is m x m.
PsdLift psd_lift_from(const Matrix& z, int m, double rank_tol = 1e-8);

Matrix extract_offdiag(const PsdLift& lift);

/// Column-stacked matrix of W -> A(B W B^T) over the orthonormal symmetric
/// basis {e_i e_i^T} u {(e_i e_j^T + e_j e_i^T)/sqrt 2}; KN x r'(r'+1)/2.
Matrix lifted_constraint_matrix(const PsdLift& lift, const FeatureOperator& op);

/// Maps coordinates in the symmetric basis above back to an r' x r' matrix.
Matrix symmetric_from_coords(const Vector& coords, int side);

/// A unit-Frobenius direction in S(Z) intersected with the null space of A,
/// or nullopt if that intersection is numerically trivial.
std::optional<Matrix> null_direction(const PsdLift& lift, const FeatureOperator& op,
                                     double null_tol = 1e-8);

struct BoundaryStep {
  double t = 0.0;
  PsdLift next;
};

/// Step Z + t D to the PSD boundary, t = -1/mu with mu the generalized
/// eigenvalue (W x = mu R x) of largest magnitude.
BoundaryStep boundary_step(const PsdLift& lift, const Matrix& direction);

struct RankReduceConfig {
  double rank_tol = 1e-8;
  double null_tol = 1e-8;
  /// Allowed |tr(D)| / ||D||_F when lambda > 0.
  double trace_tol = 1e-8;
};

struct RankReduceResult {
  Matrix delta;
  int input_rank = 0;
  int lifted_rank = 0;   // rank of the final Z
  int output_rank = 0;   // numerical rank of the returned delta
  int steps = 0;
  double max_trace_ratio = 0.0;
  double objective_before = 0.0;
  double objective_after = 0.0;
  std::vector<int> rank_history;
};

RankReduceResult rank_reduce(const Matrix& delta, const LinearizedDataset& data, double lambda,
                             const RankReduceConfig& config = {});

}  // namespace lorantk
