// Copyright (C) 2026 The lorantk Authors
// SPDX-License-Identifier: Apache-2.0

#include "lorantk/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "lorantk/nuclear_prox.hpp"
#include "lorantk/parallel.hpp"

namespace lorantk {

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Sosp: return "SOSP";
    case Verdict::FirstOrderOnly: return "first_order_only";
    case Verdict::NotStationary: return "not_stationary";
  }
  return "unknown";
}

int rank_of_factors(const LoraFactors& f, double rel_tol) {
  return numerical_rank(f.stacked(), rel_tol);
}

SospCertificate sosp_certificate(const LoraFactors& f, const LinearizedDataset& data,
                                 double lambda, const PsdPerturbation& p,
                                 const SospTolerances& tol) {
  SospCertificate cert;
  cert.tol = tol;
  cert.rank_budget = f.rank_budget();
  cert.rank_q = rank_of_factors(f, tol.rank);
  cert.grad_norm = grad_factored(f, data, lambda, p).norm();

  const Matrix h = hessian_factored(f, data, lambda, p);
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.info() != Eigen::Success) throw NumericalError("sosp_certificate: eigensolver failed");
  cert.min_eig = es.eigenvalues()(0);

  if (cert.grad_norm > tol.grad) {
    cert.verdict = Verdict::NotStationary;
  } else if (cert.min_eig < -tol.hess) {
    cert.verdict = Verdict::FirstOrderOnly;
    const auto rows = f.u().rows() + f.v().rows();
    cert.witness = es.eigenvectors().col(0).reshaped(rows, f.rank_budget());
  } else {
    cert.verdict = Verdict::Sosp;
  }
  return cert;
}

LinearizedDataset toy_instance(char which) {
  const BlockShape shape = BlockShape::single(2, 2);
  auto g = [](double a, double b, double c, double d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
  };
  std::vector<Matrix> feats;
  std::vector<double> targets;
  switch (which) {
    case 'a':
      feats = {g(0, 1, 1, 0)};
      targets = {0.0};
      break;
    case 'b':
      feats = {g(0, 0, 0, 1), g(0, 1, 1, 0)};
      targets = {-4.0, 0.0};
      break;
    case 'c': {
      const double s3 = std::sqrt(3.0);
      feats = {g(1, 0, 0, 0), g(0, 0, 0, 1), g(0, s3, s3, 0)};
      targets = {1.0, 4.0, 0.0};
      break;
    }
    default:
      throw std::invalid_argument(std::string("toy_instance: unknown instance '") + which + "'");
  }
  std::vector<LinearizedSample> samples;
  for (std::size_t i = 0; i < feats.size(); ++i) {
    samples.push_back({FeatureMap::from_blocks(shape, {{feats[i]}}), Vector::Zero(1),
                       Label(Vector::Constant(1, targets[i]))});
  }
  return LinearizedDataset(LossKind::SquaredError, shape, 1, samples);
}

double rank_one_floor_2x2(const LinearizedDataset& data, int grid) {
  if (data.loss() != LossKind::SquaredError)
    throw std::invalid_argument("rank_one_floor_2x2: squared-error data required");
  if (data.shape().rows() != 2 || data.shape().cols() != 2)
    throw DimensionError("rank_one_floor_2x2: 2x2 update required");
  if (grid < 8) throw std::invalid_argument("rank_one_floor_2x2: grid must be >= 8");

  const Matrix base = data.predictions(Matrix::Zero(2, 2)) - data.targets();
  const double n = static_cast<double>(data.size());
  // For fixed directions the loss is a quadratic in the scale s.
  auto best_over_scale = [&](double alpha, double beta) {
    Vector a(2), b(2);
    a << std::cos(alpha), std::sin(alpha);
    b << std::cos(beta), std::sin(beta);
    const Matrix c = data.predictions(a * b.transpose()) - data.predictions(Matrix::Zero(2, 2));
    const double cc = c.squaredNorm();
    const double s = cc > 0.0 ? -frobenius_dot(c, base) / cc : 0.0;
    return (base + s * c).squaredNorm() / n;
  };

  const double pi = std::numbers::pi;
  double best = std::numeric_limits<double>::infinity();
  double best_a = 0.0, best_b = 0.0;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      const double al = pi * i / grid, be = pi * j / grid;
      const double val = best_over_scale(al, be);
      if (val < best) {
        best = val;
        best_a = al;
        best_b = be;
      }
    }
  }
  double h = pi / grid;
  for (int pass = 0; pass < 60; ++pass) {
    const double ca = best_a, cb = best_b;
    for (int i = -10; i <= 10; ++i) {
      for (int j = -10; j <= 10; ++j) {
        const double al = ca + h * i / 10.0, be = cb + h * j / 10.0;
        const double val = best_over_scale(al, be);
        if (val < best) {
          best = val;
          best_a = al;
          best_b = be;
        }
      }
    }
    h *= 0.5;
  }
  return best;
}

std::uint64_t run_seed(std::uint64_t master, int index) {
  return derive_seed(master, static_cast<std::uint64_t>(index));
}

MultistartReport multistart(const LinearizedDataset& data, const MultistartConfig& config) {
  if (config.runs < 2) throw std::invalid_argument("multistart: runs must be >= 2");
  config.train.validate(data.size());
  const double lambda = config.train.lambda;
  const double eps = config.train.perturb_eps;

  MultistartReport report;
  const GlobalMin global = global_min_value(data, lambda, config.prox_tolerance);
  report.global_value = global.value;
  report.global_nuclear = global.nuclear_norm;
  report.bound = global.value + 2.0 * eps * global.nuclear_norm + config.slack;

  report.runs.resize(static_cast<std::size_t>(config.runs));
  detail::parallel_for(report.runs.size(), config.threads, [&](std::size_t i) {
    TrainConfig cfg = config.train;
    cfg.seed = run_seed(config.train.seed, static_cast<int>(i));
    const TrainTrace trace = train(data, cfg);
    RunSummary& run = report.runs[i];
    run.index = static_cast<int>(i);
    run.seed = cfg.seed;
    run.status = trace.status;
    run.epochs_run = trace.epochs_run;
    run.message = trace.message;
    const Matrix delta = trace.factors.product();
    run.factored_risk = factored_risk(trace.factors, data, lambda, trace.perturbation);
    run.empirical_risk = empirical_risk(delta, data);
    run.regularized_risk = regularized_risk(delta, data, lambda);
    if (config.certify && trace.status != TrainStatus::Diverged)
      run.certificate = sosp_certificate(trace.factors, data, lambda, trace.perturbation, config.tol);
    run.within_bound = trace.status != TrainStatus::Diverged && run.regularized_risk <= report.bound;
  });

  report.best = std::numeric_limits<double>::infinity();
  report.worst = -std::numeric_limits<double>::infinity();
  report.all_within_bound = true;
  for (const auto& run : report.runs) {
    if (run.status == TrainStatus::Diverged) {
      ++report.diverged;
      report.all_within_bound = false;
      continue;
    }
    if (run.status == TrainStatus::Converged) ++report.converged;
    report.best = std::min(report.best, run.regularized_risk);
    report.worst = std::max(report.worst, run.regularized_risk);
    report.all_within_bound = report.all_within_bound && run.within_bound;
  }
  report.spread = report.diverged == config.runs ? 0.0 : report.worst - report.best;
  return report;
}

}  // namespace lorantk
