// Copyright (C) 2026 The lorantk Authors
// SPDX-License-Identifier: Apache-2.0

#include "lorantk/rank_reduction.hpp"

#include <cmath>
#include <algorithm>
#include <sstream>
#include <vector>

namespace lorantk {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

PsdLift make_lift(Matrix basis, Matrix core, int m, double rank_tol) {
  PsdLift out;
  out.z = basis * core * basis.transpose();
  out.z = 0.5 * (out.z + out.z.transpose()).eval();
  out.basis = std::move(basis);
  out.core = std::move(core);
  out.m = m;
  out.rank_tol = rank_tol;
  return out;
}

// Largest-magnitude generalized eigenvalue of W x = mu R x (R positive definite).
double dominant_generalized_eigenvalue(const Matrix& w, const Matrix& r) {
  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> ges(w, r, Eigen::EigenvaluesOnly);
  if (ges.info() != Eigen::Success) throw NumericalError("generalized eigensolver failed");
  const Vector& mu = ges.eigenvalues();
  return std::abs(mu(0)) > std::abs(mu(mu.size() - 1)) ? mu(0) : mu(mu.size() - 1);
}

}  // namespace

Vector FeatureOperator::apply(const Matrix& z) const {
  const int m = data_->shape().rows();
  const int n = data_->shape().cols();
  require_shape(z, m + n, m + n, "FeatureOperator::apply");
  return apply_offdiag(z.topRightCorner(m, n));
}

Vector FeatureOperator::apply_offdiag(const Matrix& zbar) const {
  return data_->features().transpose() * data_->shape().gather(zbar);
}

PsdLift lift_to_psd(const Matrix& delta, double rank_tol) {
  if (!delta.allFinite()) throw NumericalError("lift_to_psd: non-finite update");
  const auto m = delta.rows();
  const auto n = delta.cols();
  Eigen::JacobiSVD<Matrix> svd(delta, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  int r = 0;
  if (s.size() > 0 && s(0) > 0.0) {
    while (r < s.size() && s(r) > rank_tol * s(0)) ++r;
  }
  // Columns of [U; V] / sqrt 2 are orthonormal, and Z = B (2 Sigma) B^T.
  Matrix basis(m + n, r);
  basis.topRows(m) = svd.matrixU().leftCols(r) * kInvSqrt2;
  basis.bottomRows(n) = svd.matrixV().leftCols(r) * kInvSqrt2;
  Matrix core = (2.0 * s.head(r)).asDiagonal();
  return make_lift(std::move(basis), std::move(core), static_cast<int>(m), rank_tol);
}

PsdLift psd_lift_from(const Matrix& z, int m, double rank_tol) {
  if (z.rows() != z.cols() || m < 0 || m > z.rows())
    throw DimensionError("psd_lift_from: need a square matrix and 0 <= m <= side");
  if (!z.allFinite()) throw NumericalError("psd_lift_from: non-finite matrix");
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (z + z.transpose()));
  if (es.info() != Eigen::Success) throw NumericalError("psd_lift_from: eigensolver failed");
  const Vector& ev = es.eigenvalues();
  const double top = ev.size() > 0 ? ev(ev.size() - 1) : 0.0;
  if (ev.size() > 0 && ev(0) < -rank_tol * std::max(top, 1.0))
    throw NumericalError("psd_lift_from: matrix is not PSD");
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (top > 0.0 && ev(i) > rank_tol * top) keep.push_back(i);
  Matrix basis(z.rows(), static_cast<Eigen::Index>(keep.size()));
  Vector core(static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    basis.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(keep[c]);
    core(static_cast<Eigen::Index>(c)) = ev(keep[c]);
  }
  return make_lift(std::move(basis), core.asDiagonal(), m, rank_tol);
}

Matrix extract_offdiag(const PsdLift& lift) {
  const auto side = lift.z.rows();
  return lift.z.topRightCorner(lift.m, side - lift.m);
}

Matrix symmetric_from_coords(const Vector& coords, int side) {
  Matrix w = Matrix::Zero(side, side);
  Eigen::Index k = 0;
  for (int i = 0; i < side; ++i) {
    for (int j = i; j < side; ++j, ++k) {
      if (i == j) {
        w(i, i) = coords(k);
      } else {
        w(i, j) = w(j, i) = coords(k) * kInvSqrt2;
      }
    }
  }
  return w;
}

Matrix lifted_constraint_matrix(const PsdLift& lift, const FeatureOperator& op) {
  const int r = lift.rank();
  const int m = lift.m;
  const auto n = lift.basis.rows() - m;
  const Matrix bu = lift.basis.topRows(m);
  const Matrix bv = lift.basis.bottomRows(n);
  Matrix out(op.output_size(), r * (r + 1) / 2);
  Eigen::Index k = 0;
  for (int i = 0; i < r; ++i) {
    for (int j = i; j < r; ++j, ++k) {
      // Upper-right block of B E B^T.
      Matrix zbar;
      if (i == j) {
        zbar = bu.col(i) * bv.col(i).transpose();
      } else {
        zbar = (bu.col(i) * bv.col(j).transpose() + bu.col(j) * bv.col(i).transpose()) * kInvSqrt2;
      }
      out.col(k) = op.apply_offdiag(zbar);
    }
  }
  return out;
}

std::optional<Matrix> null_direction(const PsdLift& lift, const FeatureOperator& op,
                                     double null_tol) {
  const int r = lift.rank();
  if (r == 0) return std::nullopt;
  const Matrix a = lifted_constraint_matrix(lift, op);
  const auto dim = a.cols();

  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const Vector& s = svd.singularValues();
  Eigen::Index significant = 0;
  if (s.size() > 0 && s(0) > 0.0) {
    while (significant < s.size() && s(significant) > null_tol * s(0)) ++significant;
  }
  if (significant >= dim) return std::nullopt;

  // Among the null basis vectors pick the one needing the shortest step.
  Matrix best_w;
  double best_mu = -1.0;
  for (Eigen::Index c = significant; c < dim; ++c) {
    Matrix w = symmetric_from_coords(svd.matrixV().col(c), r);
    const double mu = std::abs(dominant_generalized_eigenvalue(w, lift.core));
    if (mu > best_mu) {
      best_mu = mu;
      best_w = std::move(w);
    }
  }
  return Matrix(lift.basis * best_w * lift.basis.transpose());
}

BoundaryStep boundary_step(const PsdLift& lift, const Matrix& direction) {
  const auto side = lift.z.rows();
  require_shape(direction, side, side, "boundary_step direction");
  if (lift.rank() == 0) throw NumericalError("boundary_step: Z has rank 0");
  const double dnorm = direction.norm();
  if (dnorm == 0.0) throw std::invalid_argument("boundary_step: direction must be nonzero");

  const Matrix w = lift.basis.transpose() * direction * lift.basis;
  const Matrix w_sym = 0.5 * (w + w.transpose());
  const double outside = (direction - lift.basis * w_sym * lift.basis.transpose()).norm();
  if (outside > 1e-8 * dnorm)
    throw std::invalid_argument("boundary_step: range(D) is not contained in range(Z)");

  const double mu = dominant_generalized_eigenvalue(w_sym, lift.core);
  const double core_scale = lift.core.norm();
  if (std::abs(mu) * core_scale <= 1e-14 * w_sym.norm())
    throw NumericalError("boundary_step: degenerate direction (all generalized eigenvalues vanish)");
  const double t = -1.0 / mu;

  Matrix next_core = lift.core + t * w_sym;
  next_core = 0.5 * (next_core + next_core.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> es(next_core);
  if (es.info() != Eigen::Success) throw NumericalError("boundary_step: eigensolver failed");
  const Vector& ev = es.eigenvalues();
  const double top = ev.size() > 0 ? ev(ev.size() - 1) : 0.0;
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) > lift.rank_tol * top) keep.push_back(i);

  Matrix vecs(ev.size(), static_cast<Eigen::Index>(keep.size()));
  Vector vals(static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    vecs.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(keep[c]);
    vals(static_cast<Eigen::Index>(c)) = ev(keep[c]);
  }
  Matrix basis = lift.basis * vecs;
  Matrix core = vals.asDiagonal();
  return BoundaryStep{t, make_lift(std::move(basis), std::move(core), lift.m, lift.rank_tol)};
}

RankReduceResult rank_reduce(const Matrix& delta, const LinearizedDataset& data, double lambda,
                             const RankReduceConfig& config) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("rank_reduce: lambda must be >= 0");
  require_shape(delta, data.shape().rows(), data.shape().cols(), "rank_reduce input");
  const FeatureOperator op(data);
  PsdLift lift = lift_to_psd(delta, config.rank_tol);

  RankReduceResult out;
  out.input_rank = lift.rank();
  out.objective_before = regularized_risk(delta, data, lambda);
  out.rank_history.push_back(lift.rank());

  const int max_steps = lift.rank();
  for (int step = 0; step < max_steps; ++step) {
    auto d = null_direction(lift, op, config.null_tol);
    if (!d) break;
    const double ratio = std::abs(d->trace()) / d->norm();
    if (lambda > 0.0) {
      out.max_trace_ratio = std::max(out.max_trace_ratio, ratio);
      if (ratio > config.trace_tol) {
        std::ostringstream msg;
        msg << "rank_reduce: optimality certificate tr(D) = 0 violated: |tr(D)|/||D||_F = "
            << ratio << " > " << config.trace_tol << " at rank " << lift.rank()
            << "; the input is not a minimizer of L + lambda ||.||_*";
        throw OptimalityError(msg.str());
      }
    }
    const int before = lift.rank();
    lift = boundary_step(lift, *d).next;
    if (lift.rank() >= before) throw NumericalError("rank_reduce: boundary step did not drop the rank");
    out.rank_history.push_back(lift.rank());
    ++out.steps;
  }

  out.delta = extract_offdiag(lift);
  out.lifted_rank = lift.rank();
  out.output_rank = numerical_rank(out.delta, config.rank_tol);
  out.objective_after = regularized_risk(out.delta, data, lambda);
  return out;
}

}  // namespace lorantk
