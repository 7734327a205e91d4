// Copyright (C) 2026 The lorantk Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "lorantk/experiment_config.hpp"

namespace lorantk {
namespace {

TEST(ExperimentConfig, ParsesKeysCommentsAndBlankLines) {
  const auto c = parse_config(
      "# comment\n"
      "task = b\n"
      "\n"
      "seed=17\n"
      "rank = 3\r\n"
      "lambda=0.25\n"
      "init=gaussian\n"
      "out_dir = /tmp/x\n");
  EXPECT_EQ(c.task, "b");
  EXPECT_EQ(c.seed, 17u);
  EXPECT_EQ(c.rank, 3);
  EXPECT_EQ(c.lambda, 0.25);
  EXPECT_EQ(c.init, InitScheme::BothGaussian);
  EXPECT_EQ(c.out_dir, "/tmp/x");
  EXPECT_EQ(c.epochs, ExperimentConfig{}.epochs);
}

TEST(ExperimentConfig, Rejections) {
  EXPECT_THROW(parse_config("colour=red\n"), ConfigError);
  EXPECT_THROW(parse_config("rank\n"), ConfigError);
  EXPECT_THROW(parse_config("rank=2\nrank=3\n"), ConfigError);
  EXPECT_THROW(parse_config("rank=0\n"), ConfigError);
  EXPECT_THROW(parse_config("rank=two\n"), ConfigError);
  EXPECT_THROW(parse_config("lambda=-1\n"), ConfigError);
  EXPECT_THROW(parse_config("lambda=nan\n"), ConfigError);
  EXPECT_THROW(parse_config("step_size=0\n"), ConfigError);
  EXPECT_THROW(parse_config("eta=1\n"), ConfigError);
  EXPECT_THROW(parse_config("init=adam\n"), ConfigError);
  EXPECT_THROW(parse_config("seed=-4\n"), ConfigError);
  EXPECT_THROW(parse_config("epochs=1.5\n"), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/lorantk.cfg"), ConfigError);
}

TEST(ExperimentConfig, TextRoundTripIsExact) {
  ExperimentConfig c;
  c.lambda = 0.1 + 0.2;
  c.step_size = 1.0 / 3.0;
  c.sigma_init = 1e-300;
  c.seed = 18446744073709551615ULL;
  const auto back = parse_config(c.to_text());
  for (const auto& k : ExperimentConfig::keys()) EXPECT_EQ(back.get(k), c.get(k)) << k;
  EXPECT_EQ(back.lambda, c.lambda);
  EXPECT_EQ(back.step_size, c.step_size);
}

TEST(ExperimentConfig, BaseIsOverridden) {
  ExperimentConfig base;
  base.rank = 4;
  base.lambda = 2.0;
  const auto c = parse_config("lambda=3\n", base);
  EXPECT_EQ(c.rank, 4);
  EXPECT_EQ(c.lambda, 3.0);
}

TEST(ExperimentConfig, TrainConfigMapping) {
  const auto c = parse_config("rank=2\nbatch_size=0\nperturb_eps=0.01\ntol_grad=1e-7\nseed=9\n");
  const TrainConfig t = c.train_config();
  EXPECT_EQ(t.rank, 2);
  EXPECT_EQ(t.batch_size, 0u);
  EXPECT_EQ(t.perturb_eps, 0.01);
  EXPECT_EQ(t.tol_grad, 1e-7);
  EXPECT_EQ(t.seed, 9u);
  EXPECT_EQ(c.tolerances().hess, 1e-6);
}

}  // namespace
}  // namespace lorantk
