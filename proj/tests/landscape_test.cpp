// Copyright (C) 2026 The lorantk Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <numbers>

#include "lorantk/generalization.hpp"
#include "lorantk/landscape.hpp"
#include "test_support.hpp"

namespace lorantk {
namespace {

using testing::gaussian;

TEST(ToyInstance, ClosedForms) {
  std::mt19937_64 rng(1);
  const auto a = toy_instance('a'), b = toy_instance('b'), c = toy_instance('c');
  const double s3 = std::numbers::sqrt3;
  for (int rep = 0; rep < 100; ++rep) {
    const Matrix d = gaussian(rng, 2, 2, 3.0);
    const double w = d(0, 0), x = d(0, 1), y = d(1, 0), z = d(1, 1);
    EXPECT_NEAR(empirical_risk(d, a), (x + y) * (x + y), 1e-12);
    EXPECT_NEAR(empirical_risk(d, b), 0.5 * (z + 4) * (z + 4) + 0.5 * (x + y) * (x + y), 1e-12);
    EXPECT_NEAR(empirical_risk(d, c),
                ((w - 1) * (w - 1) + (z - 4) * (z - 4) + (s3 * x + s3 * y) * (s3 * x + s3 * y)) / 3.0,
                1e-12);
  }
  EXPECT_THROW(toy_instance('d'), std::invalid_argument);
}

TEST(RankOfFactors, Examples) {
  EXPECT_EQ(rank_of_factors(LoraFactors(Matrix::Zero(2, 2), Matrix::Zero(3, 2))), 0);
  std::mt19937_64 rng(2);
  const Eigen::HouseholderQR<Matrix> qr(gaussian(rng, 5, 3));
  const Matrix q = qr.householderQ() * Matrix::Identity(5, 3);
  EXPECT_EQ(rank_of_factors(LoraFactors::from_stacked(q, 2)), 3);
  Matrix dup = q;
  dup.col(2) = dup.col(1);
  EXPECT_EQ(rank_of_factors(LoraFactors::from_stacked(dup, 2)), 2);
}

TEST(SospCertificate, ConvergedToyAIsSosp) {
  TrainConfig c;
  c.rank = 2;
  c.lambda = 0.0;
  c.step_size = 0.1;
  c.epochs = 20000;
  c.init = InitScheme::BothGaussian;
  c.sigma_init = 0.5;
  c.tol_grad = 1e-10;
  const auto data = toy_instance('a');
  const auto trace = train(data, c);
  const auto cert = sosp_certificate(trace.factors, data, 0.0, trace.perturbation);
  EXPECT_EQ(cert.verdict, Verdict::Sosp);
  EXPECT_LT(empirical_risk(trace.factors.product(), data), 1e-12);
}

// At u = v = 0 with lambda = 0 the Hessian is [[0, S], [S^T, 0]] in (u, v)
// coordinates, S = (2/3) diag(-1, -4); its smallest eigenvalue is -8/3.
TEST(SospCertificate, ToyCSaddleAtOrigin) {
  const auto data = toy_instance('c');
  const LoraFactors origin(Matrix::Zero(2, 1), Matrix::Zero(2, 1));
  const auto p = PsdPerturbation::zero(4);
  const auto cert = sosp_certificate(origin, data, 0.0, p);
  EXPECT_EQ(cert.verdict, Verdict::FirstOrderOnly);
  EXPECT_NEAR(cert.min_eig, -8.0 / 3.0, 1e-12);

  Matrix oracle = Matrix::Zero(4, 4);
  oracle(0, 2) = oracle(2, 0) = -2.0 / 3.0;
  oracle(1, 3) = oracle(3, 1) = -8.0 / 3.0;
  EXPECT_LT((hessian_factored(origin, data, 0.0, p) - oracle).norm(), 1e-13);

  // Witness curvature by directional finite differences of the risk.
  const Matrix& v = cert.witness;
  const double h = 1e-4;
  const auto risk = [&](double t) {
    return factored_risk(LoraFactors::from_stacked(t * v, 2), data, 0.0, p);
  };
  const double curv = (risk(h) - 2 * risk(0) + risk(-h)) / (h * h);
  EXPECT_LT(curv, -cert.tol.hess * v.squaredNorm());
  EXPECT_NEAR(curv, cert.min_eig * v.squaredNorm(), 1e-6);
}

TEST(SospCertificate, NotStationary) {
  const auto data = toy_instance('b');
  const LoraFactors f(Matrix::Ones(2, 1), Matrix::Ones(2, 1));
  EXPECT_EQ(sosp_certificate(f, data, 0.0, PsdPerturbation::zero(4)).verdict, Verdict::NotStationary);
  EXPECT_STREQ(to_string(Verdict::FirstOrderOnly), "first_order_only");
}

TEST(RankOneFloor, ToyC) {
  const auto data = toy_instance('c');
  const double floor = rank_one_floor_2x2(data);
  EXPECT_GT(floor, 0.1);
  // Every rank-one probe lies above the floor.
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 2000; ++rep) {
    const Matrix u = gaussian(rng, 2, 1, 2.0), v = gaussian(rng, 2, 1, 2.0);
    EXPECT_GE(empirical_risk(u * v.transpose(), data), floor - 1e-9);
  }
  // Toys a and b reach zero at rank one.
  EXPECT_LT(rank_one_floor_2x2(toy_instance('a')), 1e-12);
  EXPECT_LT(rank_one_floor_2x2(toy_instance('b')), 1e-12);
}

MultistartConfig toy_multistart(int rank) {
  MultistartConfig mc;
  mc.train.rank = rank;
  mc.train.lambda = 0.0;
  mc.train.step_size = 0.1;
  mc.train.epochs = 20000;
  mc.train.init = InitScheme::BothGaussian;
  mc.train.sigma_init = 0.5;
  mc.train.tol_grad = 1e-10;
  mc.runs = 20;
  mc.threads = 1;
  return mc;
}

TEST(Multistart, ToyCRankTwoAllAtZero) {
  const auto rep = multistart(toy_instance('c'), toy_multistart(2));
  EXPECT_LT(rep.spread, 1e-6);
  for (const auto& run : rep.runs) EXPECT_LT(run.empirical_risk, 1e-8);
  EXPECT_TRUE(rep.all_within_bound);
}

TEST(Multistart, ToyCRankOneAboveFloor) {
  const auto data = toy_instance('c');
  const double floor = rank_one_floor_2x2(data);
  const auto rep = multistart(data, toy_multistart(1));
  for (const auto& run : rep.runs) EXPECT_GE(run.empirical_risk, floor - 1e-6);
}

TEST(Multistart, SyntheticPerturbedAboveThresholdWithinBound) {
  SyntheticTaskConfig tc;
  tc.output_dim = 2;
  tc.true_nuclear = 3.0;
  tc.base_scale = 0.5;
  tc.n_pop = 1;
  tc.seed = 4;
  const SyntheticTask task(tc);
  const auto data = task.draw(2, 9);
  MultistartConfig mc;
  mc.train.rank = rank_threshold(2, 2);
  mc.train.lambda = 0.1;
  mc.train.step_size = 1.0;
  mc.train.epochs = 50000;
  mc.train.init = InitScheme::BothGaussian;
  mc.train.sigma_init = 0.1;
  mc.train.perturb_eps = 1e-3;
  mc.runs = 10;
  const auto rep = multistart(data, mc);
  EXPECT_EQ(rep.diverged, 0);
  EXPECT_GE(rep.spread, 0.0);
  for (const auto& run : rep.runs) {
    if (run.status != TrainStatus::Converged) continue;
    ASSERT_TRUE(run.certificate.has_value());
    EXPECT_TRUE(run.certificate->is_sosp());
    EXPECT_TRUE(run.certificate->rank_deficient());
    EXPECT_TRUE(run.within_bound);
  }
  EXPECT_GE(rep.converged, 9);
}

TEST(Multistart, SeedsAreDistinctAndReproducible) {
  auto mc = toy_multistart(1);
  mc.runs = 4;
  mc.train.epochs = 200;
  const auto a = multistart(toy_instance('b'), mc);
  mc.threads = 3;
  const auto b = multistart(toy_instance('b'), mc);
  ASSERT_EQ(a.runs.size(), 4u);
  for (std::size_t i = 0; i < a.runs.size(); ++i) {
    EXPECT_EQ(a.runs[i].seed, run_seed(mc.train.seed, static_cast<int>(i)));
    EXPECT_EQ(a.runs[i].regularized_risk, b.runs[i].regularized_risk);
  }
  EXPECT_NE(a.runs[0].seed, a.runs[1].seed);
  mc.runs = 1;
  EXPECT_THROW(multistart(toy_instance('b'), mc), std::invalid_argument);
}

}  // namespace
}  // namespace lorantk
