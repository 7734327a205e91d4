// Copyright (C) 2026 The lorantk Authors
// SPDX-License-Identifier: Apache-2.0
//
// Landscape certification: second-order stationarity checks, multistart
// statistics against the convex reference, and the three 2x2 toy problems.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lorantk/factored_optim.hpp"
#include "lorantk/model.hpp"

namespace lorantk {

struct SospTolerances {
  double grad = 1e-6;
  double hess = 1e-6;
  /// Relative singular-value cutoff for rank(Q).
  double rank = 1e-8;
};

enum class Verdict { Sosp, FirstOrderOnly, NotStationary };

const char* to_string(Verdict verdict);

struct SospCertificate {
  double grad_norm = 0.0;
  double min_eig = 0.0;
  int rank_q = 0;
  int rank_budget = 0;
  SospTolerances tol;
  Verdict verdict = Verdict::NotStationary;
  /// Unit-norm Q-shaped negative-curvature direction (FirstOrderOnly only).
  Matrix witness;

  bool is_sosp() const { return verdict == Verdict::Sosp; }
  bool rank_deficient() const { return rank_q < rank_budget; }
};

SospCertificate sosp_certificate(const LoraFactors& f, const LinearizedDataset& data,
                                 double lambda, const PsdPerturbation& p,
                                 const SospTolerances& tol = {});

/// Numerical rank of Q = [u; v].
int rank_of_factors(const LoraFactors& f, double rel_tol = 1e-8);

/// Toy problems on a single 2x2 block, K = 1, f0 = 0, squared error.
/// which is 'a', 'b' or 'c'.
LinearizedDataset toy_instance(char which);

/// min over rank-1 delta of the empirical risk for a 2x2 single-block
/// squared-error dataset: scan delta = s a b^T over unit a, b on a grid of
/// angles, then refine the best cell by golden-section passes.
double rank_one_floor_2x2(const LinearizedDataset& data, int grid = 720);

struct MultistartConfig {
  TrainConfig train;  // seed is the master seed
  int runs = 20;
  SospTolerances tol;
  /// Added to global_min + 2 eps ||delta*||_* when judging a run.
  double slack = 1e-5;
  bool certify = true;
  double prox_tolerance = 1e-11;
  /// 0 means hardware concurrency; 1 runs sequentially.
  unsigned threads = 0;
};

struct RunSummary {
  int index = 0;
  std::uint64_t seed = 0;
  TrainStatus status = TrainStatus::BudgetExhausted;
  int epochs_run = 0;
  double factored_risk = 0.0;
  double regularized_risk = 0.0;  // L(uv^T) + lambda ||uv^T||_*
  double empirical_risk = 0.0;
  std::optional<SospCertificate> certificate;
  bool within_bound = false;
  std::string message;
};

struct MultistartReport {
  std::vector<RunSummary> runs;
  double spread = 0.0;
  double best = 0.0;
  double worst = 0.0;
  double global_value = 0.0;
  double global_nuclear = 0.0;
  /// global_value + 2 eps ||delta*||_* + slack.
  double bound = 0.0;
  int converged = 0;
  int diverged = 0;
  bool all_within_bound = false;
};

/// Seed of run i derived from the master seed.
std::uint64_t run_seed(std::uint64_t master, int index);

MultistartReport multistart(const LinearizedDataset& data, const MultistartConfig& config);

}  // namespace lorantk
