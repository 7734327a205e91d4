// Copyright (C) 2026 The lorantk Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "lorantk/factored_optim.hpp"
#include "lorantk/landscape.hpp"
#include "lorantk/model.hpp"
#include "test_support.hpp"

namespace lorantk {
namespace {

using testing::gaussian;
using testing::random_dataset;
using testing::rel_err;

Matrix mat2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

TEST(BlockShape, RejectsEmptyAndNonPositive) {
  EXPECT_THROW(BlockShape({}), DimensionError);
  EXPECT_THROW(BlockShape({{0, 2}}), DimensionError);
  const BlockShape s({{2, 3}, {1, 2}});
  EXPECT_EQ(s.rows(), 3);
  EXPECT_EQ(s.cols(), 5);
  EXPECT_EQ(s.block_entries(), 8);
}

TEST(BlockShape, GatherScatterRoundTripKeepsOnlyBlocks) {
  std::mt19937_64 rng(1);
  const BlockShape s({{2, 3}, {2, 1}});
  const Matrix d = gaussian(rng, 4, 4);
  const Matrix back = s.scatter(s.gather(d));
  EXPECT_EQ(back.block(0, 0, 2, 3), d.block(0, 0, 2, 3));
  EXPECT_EQ(back.block(2, 3, 2, 1), d.block(2, 3, 2, 1));
  EXPECT_EQ(back.block(0, 3, 2, 1).norm(), 0.0);
  EXPECT_EQ(back.block(2, 0, 2, 3).norm(), 0.0);
}

TEST(Predict, ZeroUpdateReturnsBaseOutput) {
  std::mt19937_64 rng(2);
  const auto data = random_dataset(rng, LossKind::SquaredError, BlockShape::single(3, 2), 2, 4);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto s = data.sample(i);
    EXPECT_EQ(predict(s, Matrix::Zero(3, 2)), s.base_output);
  }
}

TEST(Predict, ToyAIsXPlusY) {
  const auto data = toy_instance('a');
  const Vector y = predict(data.sample(0), mat2(0.3, 1.5, -0.25, 7.0));
  EXPECT_DOUBLE_EQ(y(0), 1.25);
}

TEST(Predict, BlockLocality) {
  std::mt19937_64 rng(3);
  const BlockShape shape({{2, 2}, {3, 1}});
  const auto data = random_dataset(rng, LossKind::CrossEntropy, shape, 3, 5);
  const Matrix d = gaussian(rng, 5, 3);
  Matrix d2 = d;
  d2.block(0, 2, 2, 1) = gaussian(rng, 2, 1, 10.0);
  d2.block(2, 0, 3, 2) = gaussian(rng, 3, 2, 10.0);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto s = data.sample(i);
    const Vector a = predict(s, d);
    EXPECT_LT((a - predict(s, d2)).norm(), 1e-12);
    // Dense full-matrix inner product oracle.
    for (int j = 0; j < 3; ++j)
      EXPECT_NEAR(a(j), s.base_output(j) + s.features.dense(j).cwiseProduct(d).sum(), 1e-12);
  }
}

TEST(Predict, DimensionMismatchThrows) {
  const auto data = toy_instance('a');
  EXPECT_THROW(predict(data.sample(0), Matrix::Zero(3, 2)), DimensionError);
}

TEST(EmpiricalRisk, ToyValues) {
  EXPECT_DOUBLE_EQ(empirical_risk(Matrix::Zero(2, 2), toy_instance('a')), 0.0);
  EXPECT_DOUBLE_EQ(empirical_risk(Matrix::Zero(2, 2), toy_instance('b')), 8.0);
  EXPECT_NEAR(empirical_risk(mat2(1, 0, 0, 4), toy_instance('c')), 0.0, 1e-15);
}

TEST(EmpiricalRisk, MatchesScalarOracle) {
  std::mt19937_64 rng(4);
  for (int rep = 0; rep < 10; ++rep) {
    const LossKind loss = rep % 2 ? LossKind::CrossEntropy : LossKind::SquaredError;
    const auto shape = testing::random_shape(rng, 4, 3);
    const auto data = random_dataset(rng, loss, shape, 3, 5);
    const Matrix d = gaussian(rng, 4, 3);
    EXPECT_NEAR(empirical_risk(d, data), testing::scalar_risk(d, data), 1e-12);
  }
}

TEST(EmpiricalRisk, CrossEntropyStableForHugeLogits) {
  Matrix base(2, 1);
  base << 1000.0, -1000.0;
  LinearizedDataset data(LossKind::CrossEntropy, BlockShape::single(1, 1), 2, Matrix::Zero(1, 2),
                         base, {1}, Matrix());
  EXPECT_NEAR(empirical_risk(Matrix::Zero(1, 1), data), 2000.0, 1e-9);
}

TEST(EmpiricalRisk, ConvexAlongRandomChords) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int rep = 0; rep < 40; ++rep) {
    const LossKind loss = rep % 2 ? LossKind::CrossEntropy : LossKind::SquaredError;
    const auto data = random_dataset(rng, loss, BlockShape::single(3, 3), 3, 4);
    const Matrix a = gaussian(rng, 3, 3), b = gaussian(rng, 3, 3);
    const double t = unif(rng);
    EXPECT_LE(empirical_risk(t * a + (1 - t) * b, data),
              t * empirical_risk(a, data) + (1 - t) * empirical_risk(b, data) + 1e-12);
  }
}

TEST(RegularizedRisk, Values) {
  const auto data = toy_instance('a');
  const Matrix swap = mat2(0, 1, 1, 0);
  // (x + y)^2 = 4 plus lambda * 2.
  EXPECT_DOUBLE_EQ(regularized_risk(swap, data, 0.0), empirical_risk(swap, data));
  EXPECT_NEAR(regularized_risk(swap, data, 1.0) - empirical_risk(swap, data), 2.0, 1e-14);
  std::mt19937_64 rng(6);
  const Matrix d = gaussian(rng, 2, 2);
  Eigen::JacobiSVD<Matrix> svd(d);
  EXPECT_NEAR(regularized_risk(d, data, 0.7) - empirical_risk(d, data),
              0.7 * svd.singularValues().sum(), 1e-13);
}

TEST(FactoredRisk, BalancedFactorsMatchRegularizedRisk) {
  std::mt19937_64 rng(7);
  const auto data = random_dataset(rng, LossKind::SquaredError, BlockShape::single(4, 3), 2, 3);
  const Matrix d = gaussian(rng, 4, 2) * gaussian(rng, 2, 3);
  for (int r = 2; r <= 4; ++r) {
    const auto f = LoraFactors::balanced(d, r);
    EXPECT_NEAR(factored_risk(f, data, 0.3, PsdPerturbation::zero(7)),
                regularized_risk(d, data, 0.3), 1e-11);
  }
  EXPECT_THROW(LoraFactors::balanced(d, 1), DimensionError);
}

TEST(FactoredRisk, ZeroFactorsIgnorePerturbation) {
  std::mt19937_64 rng(8);
  const auto data = random_dataset(rng, LossKind::CrossEntropy, BlockShape::single(2, 3), 2, 3);
  const LoraFactors f(Matrix::Zero(2, 2), Matrix::Zero(3, 2));
  const auto p = sample_psd_perturbation(5, 0.5, 3);
  EXPECT_DOUBLE_EQ(factored_risk(f, data, 2.0, p), empirical_risk(Matrix::Zero(2, 3), data));
}

TEST(FactoredRisk, MatchesScalarOracle) {
  std::mt19937_64 rng(9);
  const auto data = random_dataset(rng, LossKind::CrossEntropy, BlockShape({{2, 2}, {1, 2}}), 3, 4);
  const LoraFactors f(gaussian(rng, 3, 2), gaussian(rng, 4, 2));
  const auto p = sample_psd_perturbation(7, 0.2, 11);
  const Matrix q = f.stacked();
  double penalty = 0.0;
  for (Eigen::Index i = 0; i < q.rows(); ++i)
    for (Eigen::Index c = 0; c < q.cols(); ++c) penalty += q(i, c) * q(i, c);
  double pert = 0.0;
  for (Eigen::Index i = 0; i < 7; ++i)
    for (Eigen::Index j = 0; j < 7; ++j) pert += p.matrix()(i, j) * q.row(i).dot(q.row(j));
  EXPECT_NEAR(factored_risk(f, data, 0.4, p),
              testing::scalar_risk(f.product(), data) + 0.2 * penalty + pert, 1e-12);
}

TEST(FactoredRisk, DominatesRegularizedRisk) {
  std::mt19937_64 rng(10);
  const auto data = random_dataset(rng, LossKind::SquaredError, BlockShape::single(3, 4), 1, 3);
  for (int rep = 0; rep < 30; ++rep) {
    const LoraFactors f(gaussian(rng, 3, 3), gaussian(rng, 4, 3));
    EXPECT_GE(factored_risk(f, data, 0.5, PsdPerturbation::zero(7)) + 1e-12,
              regularized_risk(f.product(), data, 0.5));
  }
}

TEST(DualWeights, Properties) {
  std::mt19937_64 rng(11);
  const auto ce = random_dataset(rng, LossKind::CrossEntropy, BlockShape::single(3, 3), 4, 6);
  const DualWeights w = dual_weights(gaussian(rng, 3, 3, 3.0), ce);
  EXPECT_LT(w.values.rowwise().sum().cwiseAbs().maxCoeff(), 1e-12);

  // Squared error at an exact fit.
  const Matrix d = gaussian(rng, 3, 3);
  const auto se = random_dataset(rng, LossKind::SquaredError, BlockShape::single(3, 3), 2, 4);
  LinearizedDataset fit(LossKind::SquaredError, se.shape(), 2, se.features(), se.base_outputs(), {},
                        se.predictions(d));
  EXPECT_EQ(dual_weights(d, fit).values.norm(), 0.0);

  // Saturated softmax on the true class.
  Matrix base(3, 1);
  base << 0.0, 800.0, 0.0;
  LinearizedDataset sat(LossKind::CrossEntropy, BlockShape::single(1, 1), 3, Matrix::Zero(1, 3), base,
                        {1}, Matrix());
  EXPECT_LT(dual_weights(Matrix::Zero(1, 1), sat).values.norm(), 1e-300);
}

TEST(AssembleS, Examples) {
  const auto c = toy_instance('c');
  const DualWeights w = dual_weights(Matrix::Zero(2, 2), c);
  EXPECT_LT((assemble_S(w, c) - (2.0 / 3.0) * mat2(-1, 0, 0, -4)).norm(), 1e-15);
  DualWeights zero{Matrix::Zero(3, 1)};
  EXPECT_EQ(assemble_S(zero, c).norm(), 0.0);

  std::mt19937_64 rng(12);
  const auto one = random_dataset(rng, LossKind::SquaredError, BlockShape({{2, 1}, {1, 2}}), 1, 1);
  DualWeights cw{Matrix::Constant(1, 1, -1.7)};
  EXPECT_LT((assemble_S(cw, one) - (-1.7) * one.sample(0).features.dense(0)).norm(), 1e-15);
}

TEST(GradFactored, MatchesFiniteDifferences) {
  std::mt19937_64 rng(13);
  for (int rep = 0; rep < 12; ++rep) {
    const LossKind loss = rep % 2 ? LossKind::CrossEntropy : LossKind::SquaredError;
    const int k = loss == LossKind::CrossEntropy ? 2 + rep % 2 : 1 + rep % 3;
    const auto shape = testing::random_shape(rng, 3 + rep % 3, 2 + rep % 4);
    const int m = shape.rows(), n = shape.cols(), r = 1 + rep % 3;
    const auto data = random_dataset(rng, loss, shape, k, 1 + rep % 5);
    const auto p = sample_psd_perturbation(m + n, 0.3, 100 + rep);
    const LoraFactors f(gaussian(rng, m, r, 0.5), gaussian(rng, n, r, 0.5));
    const double lambda = 0.1 * rep;
    const Matrix g = grad_factored(f, data, lambda, p).stacked();
    const Matrix fd = testing::fd_gradient(
        [&](const Matrix& q) { return factored_risk(LoraFactors::from_stacked(q, m), data, lambda, p); },
        f.stacked());
    EXPECT_LT(rel_err(g, fd), 1e-6) << "rep " << rep;
  }
}

TEST(GradFactored, ZeroCases) {
  const auto a = toy_instance('a');
  const LoraFactors stationary(mat2(1, 0, 0, 0), mat2(0, 0, 0, 0));  // uv^T = 0, loss 0
  EXPECT_LT(grad_factored(stationary, a, 0.0, PsdPerturbation::zero(4)).norm(), 1e-15);
  const LoraFactors zero(Matrix::Zero(2, 2), Matrix::Zero(2, 2));
  EXPECT_EQ(grad_factored(zero, a, 0.5, sample_psd_perturbation(4, 1.0, 9)).norm(), 0.0);
}

TEST(HessianFactored, MatchesFiniteDifferencesAndIsSymmetric) {
  std::mt19937_64 rng(14);
  for (int rep = 0; rep < 8; ++rep) {
    const LossKind loss = rep % 2 ? LossKind::CrossEntropy : LossKind::SquaredError;
    const auto shape = testing::random_shape(rng, 3, 3);
    const int m = shape.rows(), n = shape.cols(), r = 1 + rep % 2;
    const auto data = random_dataset(rng, loss, shape, 2, 3);
    const auto p = sample_psd_perturbation(m + n, 0.2, 7 + rep);
    const LoraFactors f(gaussian(rng, m, r, 0.7), gaussian(rng, n, r, 0.7));
    const Matrix h = hessian_factored(f, data, 0.2, p);
    const Matrix q = f.stacked();
    const auto side = q.size();
    Matrix fd(side, side);
    const double step = 1e-5;
    for (Eigen::Index c = 0; c < side; ++c) {
      Matrix qp = q, qm = q;
      qp.reshaped()(c) += step;
      qm.reshaped()(c) -= step;
      const Matrix gp = grad_factored(LoraFactors::from_stacked(qp, m), data, 0.2, p).stacked();
      const Matrix gm = grad_factored(LoraFactors::from_stacked(qm, m), data, 0.2, p).stacked();
      fd.col(c) = (gp - gm).reshaped() / (2 * step);
    }
    EXPECT_LT(rel_err(h, fd), 1e-5) << "rep " << rep;
    EXPECT_LT((h - h.transpose()).norm(), 1e-12);

    const Matrix dir = gaussian(rng, m + n, r);
    const Matrix hv = hessian_vector_product(f, data, 0.2, p, dir);
    EXPECT_LT(((h * dir.reshaped()) - hv.reshaped()).norm(), 1e-11);
  }
}

TEST(HessianFactored, ZeroFeaturesGiveLambdaPlusPerturbation) {
  const int m = 2, n = 3, r = 2;
  LinearizedDataset data(LossKind::SquaredError, BlockShape::single(m, n), 1, Matrix::Zero(6, 2),
                         Matrix::Zero(1, 2), {}, Matrix::Ones(1, 2));
  const auto p = sample_psd_perturbation(m + n, 0.5, 4);
  std::mt19937_64 rng(15);
  const LoraFactors f(gaussian(rng, m, r), gaussian(rng, n, r));
  const Matrix h = hessian_factored(f, data, 0.3, p);
  // vec(P Q) = (I_r kron P) vec(Q).
  Matrix expected = 0.3 * Matrix::Identity(10, 10);
  for (int c = 0; c < r; ++c) expected.block(c * 5, c * 5, 5, 5) += 2.0 * p.matrix();
  EXPECT_LT((h - expected).norm(), 1e-13);
}

}  // namespace
}  // namespace lorantk
