// Copyright (C) 2026 The lorantk Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "lorantk/factored_optim.hpp"
#include "lorantk/landscape.hpp"
#include "test_support.hpp"

namespace lorantk {
namespace {

TEST(PsdPerturbation, BoundAndPsd) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto p = sample_psd_perturbation(6, 1e-3, seed);
    EXPECT_LT(p.matrix().norm(), 1e-3);
    EXPECT_GE(min_eigenvalue(p.matrix()), -1e-10 * p.matrix().norm());
    EXPECT_LT((p.matrix() - p.matrix().transpose()).norm(), 1e-18);
  }
  EXPECT_THROW(sample_psd_perturbation(4, 0.0, 1), std::invalid_argument);
  EXPECT_THROW(sample_psd_perturbation(4, -1.0, 1), std::invalid_argument);
}

TEST(PsdPerturbation, Deterministic) {
  EXPECT_EQ(sample_psd_perturbation(5, 0.1, 42).matrix(), sample_psd_perturbation(5, 0.1, 42).matrix());
  EXPECT_NE(sample_psd_perturbation(5, 0.1, 42).matrix(), sample_psd_perturbation(5, 0.1, 43).matrix());
}

TEST(PsdPerturbation, AlmostSurelyFullRank) {
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    const auto p = sample_psd_perturbation(6, 1.0, seed);
    ASSERT_EQ(numerical_rank(p.matrix(), 1e-14), 6) << "seed " << seed;
  }
}

TEST(InitFactors, Schemes) {
  const BlockShape shape = BlockShape::single(3, 4);
  TrainConfig c;
  c.rank = 2;
  c.seed = 5;
  const auto lora = init_factors(c, shape);
  EXPECT_EQ(lora.u().norm(), 0.0);
  EXPECT_GT(lora.v().norm(), 0.0);
  EXPECT_EQ(lora.product().norm(), 0.0);
  EXPECT_EQ(init_factors(c, shape).v(), lora.v());

  c.init = InitScheme::BothGaussian;
  c.sigma_init = 0.0;
  const auto zero = init_factors(c, shape);
  EXPECT_EQ(zero.stacked().norm(), 0.0);
  c.sigma_init = 0.1;
  const auto both = init_factors(c, shape);
  EXPECT_GT(both.u().norm(), 0.0);
  EXPECT_GT(both.v().norm(), 0.0);
}

TEST(RankThreshold, Values) {
  EXPECT_EQ(rank_threshold(2, 32), 11);
  EXPECT_EQ(rank_threshold(1, 1), 2);
  EXPECT_EQ(rank_threshold(1, 3), 3);
  for (long kn = 1; kn < 500; ++kn) {
    const long r = rank_threshold(1, kn);
    EXPECT_GT(r * (r + 1) / 2, kn);
    EXPECT_LE((r - 1) * r / 2, kn);
  }
}

TEST(TrainConfig, Validation) {
  TrainConfig c;
  EXPECT_NO_THROW(c.validate(4));
  c.rank = 0;
  EXPECT_THROW(c.validate(4), std::invalid_argument);
  c = {};
  c.step_size = 0.0;
  EXPECT_THROW(c.validate(4), std::invalid_argument);
  c = {};
  c.batch_size = 5;
  EXPECT_THROW(c.validate(4), std::invalid_argument);
}

TEST(Train, ToyAReachesZero) {
  TrainConfig c;
  c.rank = 1;
  c.lambda = 0.0;
  c.step_size = 0.1;
  c.epochs = 5000;
  c.init = InitScheme::BothGaussian;
  c.sigma_init = 0.5;
  c.tol_grad = 1e-10;
  const auto data = toy_instance('a');
  const auto trace = train(data, c);
  EXPECT_LT(empirical_risk(trace.factors.product(), data), 1e-8);
  EXPECT_NE(trace.status, TrainStatus::Diverged);
}

TEST(Train, MonotoneFullBatchDescent) {
  std::mt19937_64 rng(3);
  const auto data = testing::random_dataset(rng, LossKind::CrossEntropy, BlockShape::single(3, 3), 2, 4);
  TrainConfig c;
  c.rank = 2;
  c.lambda = 0.05;
  c.step_size = 2.0;  // large on purpose; backtracking must keep descent monotone
  c.epochs = 300;
  c.init = InitScheme::BothGaussian;
  c.sigma_init = 0.3;
  c.perturb_eps = 1e-3;
  const auto trace = train(data, c);
  for (std::size_t i = 1; i < trace.records.size(); ++i)
    EXPECT_LE(trace.records[i].factored_risk, trace.records[i - 1].factored_risk + 1e-12);
}

TEST(Train, DeterministicForFixedSeed) {
  std::mt19937_64 rng(4);
  const auto data = testing::random_dataset(rng, LossKind::SquaredError, BlockShape::single(3, 2), 2, 6);
  TrainConfig c;
  c.rank = 2;
  c.batch_size = 2;
  c.noise_std = 0.01;
  c.perturb_eps = 1e-2;
  c.epochs = 50;
  c.seed = 77;
  const auto a = train(data, c);
  const auto b = train(data, c);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i)
    EXPECT_EQ(a.records[i].factored_risk, b.records[i].factored_risk);
  EXPECT_EQ(a.factors.stacked(), b.factors.stacked());
  EXPECT_EQ(a.perturbation.matrix(), b.perturbation.matrix());
}

TEST(Train, DivergenceIsReported) {
  LinearizedDataset data(LossKind::SquaredError, BlockShape::single(1, 1), 1, Matrix::Constant(1, 1, 100.0),
                         Matrix::Zero(1, 1), {}, Matrix::Constant(1, 1, 1.0));
  TrainConfig c;
  c.rank = 1;
  c.step_size = 10.0;
  c.backtrack = false;
  c.init = InitScheme::BothGaussian;
  c.sigma_init = 1.0;
  c.epochs = 100;
  const auto trace = train(data, c);
  EXPECT_EQ(trace.status, TrainStatus::Diverged);
  EXPECT_FALSE(trace.message.empty());
}

TEST(Train, WeightDecayEquivalenceOnTrainedFactors) {
  std::mt19937_64 rng(5);
  const auto data = testing::random_dataset(rng, LossKind::SquaredError, BlockShape::single(3, 3), 1, 4);
  TrainConfig c;
  c.rank = 3;
  c.lambda = 0.2;
  c.step_size = 0.2;
  c.epochs = 200;
  c.init = InitScheme::BothGaussian;
  c.sigma_init = 0.4;
  const auto trace = train(data, c);
  EXPECT_LE(regularized_risk(trace.factors.product(), data, c.lambda),
            factored_risk(trace.factors, data, c.lambda, PsdPerturbation::zero(6)) + 1e-12);
}

}  // namespace
}  // namespace lorantk
