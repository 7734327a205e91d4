// Copyright (C) 2026 The lorantk Authors
// SPDX-License-Identifier: Apache-2.0

#include "lorantk/factored_optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace lorantk {

namespace {

constexpr double kDivergenceThreshold = 1e12;
constexpr int kMaxHalvings = 60;

Matrix gaussian(int rows, int cols, double sigma, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Matrix out(rows, cols);
  // Fixed fill order (column-major) keeps draws reproducible.
  for (Eigen::Index c = 0; c < out.cols(); ++c)
    for (Eigen::Index r = 0; r < out.rows(); ++r) out(r, c) = sigma * dist(rng);
  return out;
}

EpochRecord make_record(int epoch, const LoraFactors& f, const LinearizedDataset& data,
                        double lambda, double value, double grad_norm, double step) {
  return EpochRecord{epoch, value, regularized_risk(f.product(), data, lambda), grad_norm, step};
}

bool diverged(double value) {
  return !std::isfinite(value) || value > kDivergenceThreshold;
}

}  // namespace

const char* to_string(InitScheme scheme) {
  return scheme == InitScheme::LoraStandard ? "lora" : "gaussian";
}

const char* to_string(TrainStatus status) {
  switch (status) {
    case TrainStatus::Converged: return "converged";
    case TrainStatus::BudgetExhausted: return "budget_exhausted";
    case TrainStatus::Diverged: return "diverged";
  }
  return "unknown";
}

void TrainConfig::validate(std::size_t num_samples) const {
  if (rank < 1) throw std::invalid_argument("TrainConfig: rank must be >= 1");
  if (!(lambda >= 0.0)) throw std::invalid_argument("TrainConfig: lambda must be >= 0");
  if (!(step_size > 0.0)) throw std::invalid_argument("TrainConfig: step size must be > 0");
  if (epochs < 0) throw std::invalid_argument("TrainConfig: epochs must be >= 0");
  if (batch_size > num_samples)
    throw std::invalid_argument("TrainConfig: batch size must be in [1, N]");
  if (!(sigma_init >= 0.0)) throw std::invalid_argument("TrainConfig: sigma_init must be >= 0");
  if (!(noise_std >= 0.0)) throw std::invalid_argument("TrainConfig: noise_std must be >= 0");
  if (!(perturb_eps >= 0.0)) throw std::invalid_argument("TrainConfig: perturb_eps must be >= 0");
  if (!(tol_grad >= 0.0)) throw std::invalid_argument("TrainConfig: tol_grad must be >= 0");
  if (record_every < 1) throw std::invalid_argument("TrainConfig: record_every must be >= 1");
}

PsdPerturbation sample_psd_perturbation(int dim, double eps, std::uint64_t seed) {
  if (dim < 1) throw DimensionError("sample_psd_perturbation: dim must be >= 1");
  if (!(eps > 0.0)) throw std::invalid_argument("sample_psd_perturbation: eps must be > 0");
  std::mt19937_64 rng(seed);
  const Matrix a = gaussian(dim, dim, 1.0, rng);
  Matrix p = a * a.transpose();
  p = 0.5 * (p + p.transpose()).eval();
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double theta = 0.0;
  while (theta == 0.0) theta = unif(rng);
  p *= eps * theta / p.norm();
  // Roundoff can leave ||P||_F a hair above eps * theta; never at or above eps.
  const double fro = p.norm();
  if (!(fro < eps)) p *= std::nextafter(eps, 0.0) / fro;
  return PsdPerturbation(std::move(p), eps);
}

LoraFactors init_factors(const TrainConfig& config, const BlockShape& shape) {
  std::mt19937_64 rng(derive_seed(config.seed, 0));
  const int m = shape.rows();
  const int n = shape.cols();
  const int r = config.rank;
  if (config.init == InitScheme::LoraStandard) {
    Matrix v = gaussian(n, r, config.sigma_init, rng);
    return LoraFactors(Matrix::Zero(m, r), std::move(v));
  }
  Matrix u = gaussian(m, r, config.sigma_init, rng);
  Matrix v = gaussian(n, r, config.sigma_init, rng);
  return LoraFactors(std::move(u), std::move(v));
}

TrainTrace train(const LinearizedDataset& data, const TrainConfig& config) {
  const int dim = data.shape().rows() + data.shape().cols();
  if (config.perturb_eps > 0.0)
    return train(data, config,
                 sample_psd_perturbation(dim, config.perturb_eps, derive_seed(config.seed, 1)));
  return train(data, config, PsdPerturbation::zero(dim));
}

TrainTrace train(const LinearizedDataset& data, const TrainConfig& config,
                 const PsdPerturbation& perturbation) {
  config.validate(data.size());
  const int m = data.shape().rows();
  const double lambda = config.lambda;
  const std::size_t n = data.size();
  const std::size_t batch = config.batch_size == 0 ? n : config.batch_size;
  const bool full_batch = batch == n;
  const bool noisy = config.noise_std > 0.0;

  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  std::vector<std::size_t> order = all;
  std::mt19937_64 rng(derive_seed(config.seed, 2));
  std::normal_distribution<double> noise(0.0, config.noise_std > 0.0 ? config.noise_std : 1.0);

  TrainTrace trace{{}, init_factors(config, data.shape()), perturbation, config.seed,
                   TrainStatus::BudgetExhausted, 0, {}};
  Matrix q = trace.factors.stacked();
  double alpha = config.step_size;

  auto evaluate = [&](const Matrix& qq, std::span<const std::size_t> idx) {
    return evaluate_factored(LoraFactors::from_stacked(qq, m), data, lambda, perturbation, idx);
  };

  FactoredEvaluation cur = evaluate(q, all);
  trace.records.push_back(make_record(0, trace.factors, data, lambda, cur.value,
                                      cur.gradient.norm(), alpha));
  if (cur.gradient.norm() < config.tol_grad) {
    trace.status = TrainStatus::Converged;
    trace.message = "initial point already stationary";
    return trace;
  }

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    try {
      if (full_batch) {
        Matrix g = cur.gradient.stacked();
        if (noisy) g += gaussian(static_cast<int>(g.rows()), static_cast<int>(g.cols()), 1.0, rng) * config.noise_std;
        if (config.backtrack && !noisy) {
          const double slack = 4.0 * std::numeric_limits<double>::epsilon() * std::abs(cur.value);
          int halvings = 0;
          for (;;) {
            Matrix cand = q - alpha * g;
            FactoredEvaluation next = evaluate(cand, all);
            if (next.value <= cur.value + slack) {
              q = std::move(cand);
              cur = std::move(next);
              break;
            }
            if (++halvings > kMaxHalvings) {
              trace.message = "step size underflow in backtracking";
              break;
            }
            alpha *= 0.5;
          }
          if (halvings > kMaxHalvings) {
            trace.epochs_run = epoch;
            break;
          }
        } else {
          q -= alpha * g;
          cur = evaluate(q, all);
        }
      } else {
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t start = 0; start < n; start += batch) {
          const std::size_t len = std::min(batch, n - start);
          std::span<const std::size_t> idx(order.data() + start, len);
          Matrix g = evaluate(q, idx).gradient.stacked();
          if (noisy) {
            for (Eigen::Index c = 0; c < g.cols(); ++c)
              for (Eigen::Index r = 0; r < g.rows(); ++r) g(r, c) += noise(rng);
          }
          q -= alpha * g;
        }
        cur = evaluate(q, all);
      }
    } catch (const NumericalError& e) {
      trace.status = TrainStatus::Diverged;
      trace.message = e.what();
      trace.epochs_run = epoch;
      break;
    }

    trace.epochs_run = epoch;
    trace.factors = LoraFactors::from_stacked(q, m);
    const double gnorm = cur.gradient.norm();
    if (diverged(cur.value) || !std::isfinite(gnorm)) {
      trace.status = TrainStatus::Diverged;
      trace.message = "objective exceeded divergence threshold";
      trace.records.push_back(EpochRecord{epoch, cur.value,
                                          std::numeric_limits<double>::quiet_NaN(), gnorm, alpha});
      break;
    }
    const bool done = gnorm < config.tol_grad;
    if (done || epoch == config.epochs || epoch % config.record_every == 0)
      trace.records.push_back(make_record(epoch, trace.factors, data, lambda, cur.value, gnorm, alpha));
    if (done) {
      trace.status = TrainStatus::Converged;
      break;
    }
  }
  trace.factors = LoraFactors::from_stacked(q, m);
  if (trace.records.back().epoch != trace.epochs_run && trace.status != TrainStatus::Diverged) {
    trace.records.push_back(make_record(trace.epochs_run, trace.factors, data, lambda, cur.value,
                                        cur.gradient.norm(), alpha));
  }
  return trace;
}

int rank_threshold(long output_dim, long num_samples) {
  if (output_dim < 1 || num_samples < 1)
    throw std::invalid_argument("rank_threshold: K and N must be >= 1");
  const long kn = output_dim * num_samples;
  long r = static_cast<long>(std::floor((std::sqrt(8.0 * static_cast<double>(kn) + 1.0) - 1.0) / 2.0));
  if (r < 1) r = 1;
  while (r > 1 && r * (r + 1) / 2 > kn) --r;
  while (r * (r + 1) / 2 <= kn) ++r;
  return static_cast<int>(r);
}

}  // namespace lorantk
