// Copyright (C) 2026 The lorantk Authors
// SPDX-License-Identifier: Apache-2.0

#include "lorantk/generalization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "lorantk/nuclear_prox.hpp"
#include "lorantk/parallel.hpp"

namespace lorantk {

namespace {

double confidence_factor(double eta) { return 2.0 + std::sqrt(std::log(1.0 / eta)); }

Matrix gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Matrix out(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) out(r, c) = dist(rng);
  return out;
}

Matrix orthonormal_columns(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  Eigen::HouseholderQR<Matrix> qr(gaussian(rows, cols, rng));
  return qr.householderQ() * Matrix::Identity(rows, cols);
}

// Each G^(j) gets i.i.d. Gaussian block entries rescaled to Frobenius norm R.
Matrix draw_features(std::size_t n, int k, int entries, double r, std::mt19937_64& rng) {
  Matrix f = gaussian(entries, static_cast<Eigen::Index>(n) * k, rng);
  for (Eigen::Index c = 0; c < f.cols(); ++c) {
    double norm = f.col(c).norm();
    while (norm == 0.0) {
      f.col(c) = gaussian(entries, 1, rng);
      norm = f.col(c).norm();
    }
    f.col(c) *= r / norm;
  }
  return f;
}

Vector softmax(const Vector& z) {
  const Vector e = (z.array() - z.maxCoeff()).exp().matrix();
  return e / e.sum();
}

double log_sum_exp(const Vector& z) {
  const double mx = z.maxCoeff();
  return mx + std::log((z.array() - mx).exp().sum());
}

Matrix outputs(const Matrix& features, const Matrix& base, const BlockShape& shape,
               const Matrix& delta) {
  const Vector flat = features.transpose() * shape.gather(delta);
  return base + flat.reshaped(base.rows(), base.cols());
}

RiskEstimate mean_and_error(const Vector& x) {
  const double n = static_cast<double>(x.size());
  const double mean = x.mean();
  const double var = n > 1 ? (x.array() - mean).square().sum() / (n - 1.0) : 0.0;
  return {mean, std::sqrt(var / n)};
}

}  // namespace

void BoundSpec::validate() const {
  if (output_dim < 1) throw std::invalid_argument("BoundSpec: K must be >= 1");
  if (!(feature_bound > 0.0)) throw std::invalid_argument("BoundSpec: R must be > 0");
  if (num_samples < 1) throw std::invalid_argument("BoundSpec: N must be >= 1");
  if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("BoundSpec: eta must be in (0, 1)");
  if (!(slack >= 0.0)) throw std::invalid_argument("BoundSpec: slack must be >= 0");
  if (!(lipschitz > 0.0)) throw std::invalid_argument("BoundSpec: Lipschitz constant must be > 0");
  if (!(true_nuclear >= 0.0)) throw std::invalid_argument("BoundSpec: ||delta_true||_* must be >= 0");
}

double lambda_from_bound(const BoundSpec& spec) {
  spec.validate();
  return (2.0 + spec.slack) * std::sqrt(2.0 * spec.output_dim) * spec.lipschitz *
         spec.feature_bound / std::sqrt(static_cast<double>(spec.num_samples)) *
         confidence_factor(spec.eta);
}

double excess_risk_bound(const BoundSpec& spec) {
  return spec.true_nuclear * (2.0 + spec.slack) * lambda_from_bound(spec);
}

double perturbation_budget(const BoundSpec& spec, double lambda, double lambda_nuclear) {
  spec.validate();
  if (!(lambda >= 0.0)) throw std::invalid_argument("perturbation_budget: lambda must be >= 0");
  if (!(lambda_nuclear >= 0.0))
    throw std::invalid_argument("perturbation_budget: ||delta_lambda||_* must be >= 0");
  const double num = spec.slack * lambda * spec.true_nuclear;
  if (num == 0.0) return 0.0;
  if (lambda_nuclear == 0.0) return std::numeric_limits<double>::infinity();
  return num / (2.0 * lambda_nuclear);
}

double squared_error_lipschitz(int output_dim, double feature_bound, double reach,
                               double true_nuclear, double label_noise) {
  const double sk = std::sqrt(static_cast<double>(output_dim));
  return 2.0 * (sk * feature_bound * (reach + true_nuclear) + 5.0 * sk * label_noise);
}

void SyntheticTaskConfig::validate() const {
  if (rows < 1 || cols < 1) throw std::invalid_argument("SyntheticTask: block sizes must be >= 1");
  if (output_dim < 1) throw std::invalid_argument("SyntheticTask: K must be >= 1");
  if (loss == LossKind::CrossEntropy && output_dim < 2)
    throw std::invalid_argument("SyntheticTask: cross-entropy needs K >= 2");
  if (!(feature_bound > 0.0)) throw std::invalid_argument("SyntheticTask: R must be > 0");
  if (!(true_nuclear > 0.0)) throw std::invalid_argument("SyntheticTask: delta_true must be nonzero");
  if (true_rank < 1 || true_rank > std::min(rows, cols))
    throw std::invalid_argument("SyntheticTask: true rank must be in [1, min(m, n)]");
  if (!(label_noise >= 0.0)) throw std::invalid_argument("SyntheticTask: label noise must be >= 0");
  if (!(base_scale >= 0.0)) throw std::invalid_argument("SyntheticTask: base scale must be >= 0");
  if (n_pop < 1) throw std::invalid_argument("SyntheticTask: n_pop must be >= 1");
}

SyntheticTask::SyntheticTask(SyntheticTaskConfig config)
    : config_(std::move(config)), shape_(BlockShape::single(config_.rows, config_.cols)) {
  config_.validate();
  std::mt19937_64 rng(derive_seed(config_.seed, 0));
  const Matrix u = orthonormal_columns(config_.rows, config_.true_rank, rng);
  const Matrix v = orthonormal_columns(config_.cols, config_.true_rank, rng);
  std::uniform_real_distribution<double> unif(0.5, 1.5);
  Vector s(config_.true_rank);
  for (Eigen::Index i = 0; i < s.size(); ++i) s(i) = unif(rng);
  s *= config_.true_nuclear / s.sum();
  delta_true_ = u * s.asDiagonal() * v.transpose();

  std::mt19937_64 pop_rng(derive_seed(config_.seed, 1));
  const int k = config_.output_dim;
  pop_features_ = draw_features(config_.n_pop, k, shape_.block_entries(), config_.feature_bound, pop_rng);
  pop_base_ = config_.base_scale * gaussian(k, static_cast<Eigen::Index>(config_.n_pop), pop_rng);
  pop_true_ = outputs(pop_features_, pop_base_, shape_, delta_true_);
}

LinearizedDataset SyntheticTask::draw(std::size_t n, std::uint64_t seed) const {
  if (n < 1) throw std::invalid_argument("SyntheticTask::draw: n must be >= 1");
  std::mt19937_64 rng(seed);
  const int k = config_.output_dim;
  const auto nn = static_cast<Eigen::Index>(n);
  Matrix features = draw_features(n, k, shape_.block_entries(), config_.feature_bound, rng);
  Matrix base = config_.base_scale * gaussian(k, nn, rng);
  const Matrix truth = outputs(features, base, shape_, delta_true_);

  std::vector<std::size_t> classes;
  Matrix targets;
  if (config_.loss == LossKind::CrossEntropy) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    classes.reserve(n);
    for (Eigen::Index i = 0; i < nn; ++i) {
      const Vector p = softmax(truth.col(i));
      const double x = unif(rng);
      std::size_t c = 0;
      double acc = p(0);
      while (x >= acc && c + 1 < static_cast<std::size_t>(k)) acc += p(static_cast<Eigen::Index>(++c));
      classes.push_back(c);
    }
  } else {
    targets = truth + config_.label_noise * gaussian(k, nn, rng);
  }
  return LinearizedDataset(config_.loss, shape_, k, std::move(features), std::move(base),
                           std::move(classes), std::move(targets));
}

Vector SyntheticTask::expected_losses(const Matrix& delta) const {
  require_shape(delta, shape_.rows(), shape_.cols(), "SyntheticTask delta");
  const Matrix yhat = outputs(pop_features_, pop_base_, shape_, delta);
  Vector out(yhat.cols());
  for (Eigen::Index i = 0; i < yhat.cols(); ++i) {
    if (config_.loss == LossKind::CrossEntropy) {
      out(i) = log_sum_exp(yhat.col(i)) - softmax(pop_true_.col(i)).dot(yhat.col(i));
    } else {
      out(i) = (yhat.col(i) - pop_true_.col(i)).squaredNorm() +
               config_.output_dim * config_.label_noise * config_.label_noise;
    }
  }
  return out;
}

RiskEstimate SyntheticTask::population_risk(const Matrix& delta) const {
  return mean_and_error(expected_losses(delta));
}

RiskEstimate SyntheticTask::excess_risk(const Matrix& delta) const {
  return mean_and_error(expected_losses(delta) - expected_losses(delta_true_));
}

void MonteCarloConfig::validate() const {
  if (sample_sizes.empty()) throw std::invalid_argument("MonteCarloConfig: no sample sizes");
  for (auto n : sample_sizes)
    if (n < 1) throw std::invalid_argument("MonteCarloConfig: sample sizes must be >= 1");
  if (trials < 20) throw std::invalid_argument("MonteCarloConfig: trials must be >= 20");
  if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("MonteCarloConfig: eta must be in (0, 1)");
  if (!(slack > 0.0)) throw std::invalid_argument("MonteCarloConfig: slack must be > 0");
  if (!(perturb_cap >= 0.0)) throw std::invalid_argument("MonteCarloConfig: perturb_cap must be >= 0");
}

LogLogFit fit_log_log(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_log_log: need two or more paired points");
  LogLogFit fit;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) return {nan, nan, nan};
  }
  const auto n = static_cast<Eigen::Index>(x.size());
  Vector lx(n), ly(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    lx(i) = std::log(x[static_cast<std::size_t>(i)]);
    ly(i) = std::log(y[static_cast<std::size_t>(i)]);
  }
  const double mx = lx.mean(), my = ly.mean();
  const double sxx = (lx.array() - mx).square().sum();
  const double sxy = ((lx.array() - mx) * (ly.array() - my)).sum();
  const double syy = (ly.array() - my).square().sum();
  if (sxx == 0.0) return {nan, nan, nan};
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

MonteCarloReport monte_carlo_gap(const SyntheticTask& task, const MonteCarloConfig& config) {
  config.validate();
  const auto& tc = task.config();

  BoundSpec base_spec;
  base_spec.output_dim = tc.output_dim;
  base_spec.feature_bound = tc.feature_bound;
  base_spec.eta = config.eta;
  base_spec.slack = config.slack;
  base_spec.true_nuclear = nuclear_norm(task.delta_true());
  base_spec.lipschitz =
      tc.loss == LossKind::CrossEntropy
          ? kCrossEntropyLipschitz
          : squared_error_lipschitz(tc.output_dim, tc.feature_bound,
                                    (2.0 + config.slack) * base_spec.true_nuclear,
                                    base_spec.true_nuclear, tc.label_noise);

  MonteCarloReport report;
  report.lipschitz = base_spec.lipschitz;
  report.true_risk = task.population_risk(task.delta_true()).value;
  report.zero_excess = task.excess_risk(Matrix::Zero(tc.rows, tc.cols)).value;

  const std::size_t per_size = static_cast<std::size_t>(config.trials);
  report.trials.resize(config.sample_sizes.size() * per_size);
  detail::parallel_for(report.trials.size(), config.threads, [&](std::size_t idx) {
    const std::size_t size_index = idx / per_size;
    const int trial = static_cast<int>(idx % per_size);
    TrialResult& res = report.trials[idx];
    res.num_samples = config.sample_sizes[size_index];
    res.trial = trial;
    res.seed = derive_seed(derive_seed(config.seed, size_index), static_cast<std::uint64_t>(trial));

    BoundSpec spec = base_spec;
    spec.num_samples = res.num_samples;
    res.lambda = lambda_from_bound(spec);
    res.bound = excess_risk_bound(spec);

    const LinearizedDataset data = task.draw(res.num_samples, res.seed);
    res.lambda_nuclear = global_min_value(data, res.lambda, config.prox_tolerance).nuclear_norm;
    res.budget = perturbation_budget(spec, res.lambda, res.lambda_nuclear);
    res.perturb_radius = std::min(res.budget, config.perturb_cap);

    TrainConfig cfg = config.train;
    cfg.lambda = res.lambda;
    cfg.seed = res.seed;
    cfg.perturb_eps = res.perturb_radius;
    if (cfg.rank == 0)
      cfg.rank = rank_threshold(tc.output_dim, static_cast<long>(res.num_samples));
    if (cfg.batch_size > res.num_samples) cfg.batch_size = 0;
    res.rank = cfg.rank;
    const TrainTrace trace = train(data, cfg);
    res.status = trace.status;
    const RiskEstimate excess = task.excess_risk(trace.factors.product());
    res.excess = excess.value;
    res.excess_std_error = excess.std_error;
    res.violated = res.excess > res.bound;
  });

  std::vector<double> ns, means;
  for (std::size_t s = 0; s < config.sample_sizes.size(); ++s) {
    SizeSummary sum;
    sum.num_samples = config.sample_sizes[s];
    std::vector<double> kept;
    for (std::size_t t = 0; t < per_size; ++t) {
      const TrialResult& res = report.trials[s * per_size + t];
      sum.lambda = res.lambda;
      sum.bound = res.bound;
      if (res.lambda_nuclear == 0.0) ++sum.zero_solutions;
      if (res.status != TrainStatus::Converged) {
        ++sum.excluded;
        continue;
      }
      kept.push_back(res.excess);
      if (res.violated) ++sum.violations;
    }
    sum.used = static_cast<int>(kept.size());
    if (!kept.empty()) {
      const RiskEstimate est =
          mean_and_error(Eigen::Map<const Vector>(kept.data(), static_cast<Eigen::Index>(kept.size())));
      sum.mean_excess = est.value;
      sum.std_error = est.std_error;
      sum.violation_rate = static_cast<double>(sum.violations) / sum.used;
      ns.push_back(static_cast<double>(sum.num_samples));
      means.push_back(sum.mean_excess);
    }
    report.max_violation_rate = std::max(report.max_violation_rate, sum.violation_rate);
    report.sizes.push_back(sum);
  }
  if (ns.size() >= 2) {
    const LogLogFit fit = fit_log_log(ns, means);
    report.slope = fit.slope;
    report.intercept = fit.intercept;
    report.r_squared = fit.r_squared;
  } else {
    report.slope = report.intercept = report.r_squared = std::numeric_limits<double>::quiet_NaN();
  }
  return report;
}

}  // namespace lorantk
