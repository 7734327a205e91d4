// Copyright (C) 2026 The lorantk Authors
// SPDX-License-Identifier: Apache-2.0

#include "lorantk/model.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace lorantk {

namespace {

using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

const std::vector<std::size_t>& full_batch(std::size_t n, std::vector<std::size_t>& storage) {
  storage.resize(n);
  std::iota(storage.begin(), storage.end(), std::size_t{0});
  return storage;
}

void require_factor_shapes(const LoraFactors& f, const LinearizedDataset& data,
                           const PsdPerturbation& p) {
  const auto& s = data.shape();
  require_shape(f.u(), s.rows(), f.rank_budget(), "LoraFactors u");
  require_shape(f.v(), s.cols(), f.rank_budget(), "LoraFactors v");
  if (p.dim() != s.rows() + s.cols())
    throw DimensionError("PsdPerturbation: expected side " + std::to_string(s.rows() + s.cols()) +
                         ", got " + std::to_string(p.dim()));
}

double softmax_into(const Vector& yhat, Vector& p) {
  const double mx = yhat.maxCoeff();
  p = (yhat.array() - mx).exp();
  const double z = p.sum();
  p /= z;
  return mx + std::log(z);
}

std::size_t class_of(const Label& label, int k) {
  const auto* c = std::get_if<std::size_t>(&label);
  if (c == nullptr) throw DimensionError("cross-entropy loss needs a class label");
  if (*c >= static_cast<std::size_t>(k)) throw DimensionError("class label out of range");
  return *c;
}

const Vector& target_of(const Label& label, int k) {
  const auto* t = std::get_if<Vector>(&label);
  if (t == nullptr) throw DimensionError("squared-error loss needs a real target vector");
  if (t->size() != k) throw DimensionError("target length does not match output dimension");
  return *t;
}

// Sum of losses over `batch` and, optionally, the K x |batch| matrix of
// per-sample loss gradients.
double batch_losses(const LinearizedDataset& data, const Matrix& preds,
                    std::span<const std::size_t> batch, Matrix* grads) {
  if (!preds.allFinite()) throw NumericalError("non-finite prediction");
  const int k = data.output_dim();
  if (grads) grads->resize(k, static_cast<Eigen::Index>(batch.size()));
  double total = 0.0;
  Vector p(k);
  for (std::size_t c = 0; c < batch.size(); ++c) {
    const std::size_t i = batch[c];
    const auto col = static_cast<Eigen::Index>(c);
    if (data.loss() == LossKind::SquaredError) {
      const Vector r = preds.col(col) - data.targets().col(static_cast<Eigen::Index>(i));
      total += r.squaredNorm();
      if (grads) grads->col(col) = 2.0 * r;
    } else {
      const Vector yhat = preds.col(col);
      const double lse = softmax_into(yhat, p);
      const std::size_t y = data.classes()[i];
      total += lse - yhat(static_cast<Eigen::Index>(y));
      if (grads) {
        grads->col(col) = p;
        (*grads)(static_cast<Eigen::Index>(y), col) -= 1.0;
      }
    }
  }
  return total;
}

// sum_c weights(:, c) . G(X_batch[c]) as a block-diagonal m x n matrix.
Matrix weighted_features(const LinearizedDataset& data, const Matrix& weights,
                         std::span<const std::size_t> batch) {
  const int k = data.output_dim();
  Vector acc = Vector::Zero(data.shape().block_entries());
  for (std::size_t c = 0; c < batch.size(); ++c) {
    acc.noalias() += data.features().middleCols(static_cast<Eigen::Index>(batch[c]) * k, k) *
                     weights.col(static_cast<Eigen::Index>(c));
  }
  return data.shape().scatter(acc);
}

double perturbation_term(const PsdPerturbation& p, const Matrix& q) {
  if (p.is_zero()) return 0.0;
  return q.cwiseProduct(p.matrix() * q).sum();
}

}  // namespace

const char* to_string(LossKind kind) {
  return kind == LossKind::SquaredError ? "squared_error" : "cross_entropy";
}

// ---------------------------------------------------------------------------
// BlockShape

BlockShape::BlockShape(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw DimensionError("BlockShape: need at least one block");
  for (const auto& b : blocks_) {
    if (b.rows < 1 || b.cols < 1) throw DimensionError("BlockShape: block sizes must be >= 1");
    row_off_.push_back(rows_);
    col_off_.push_back(cols_);
    entry_off_.push_back(entries_);
    rows_ += b.rows;
    cols_ += b.cols;
    entries_ += b.rows * b.cols;
  }
}

Vector BlockShape::gather(const Matrix& delta) const {
  require_shape(delta, rows_, cols_, "update matrix");
  Vector out(entries_);
  for (int b = 0; b < num_blocks(); ++b) {
    const auto& blk = blocks_[b];
    Eigen::Map<RowMajorMatrix>(out.data() + entry_off_[b], blk.rows, blk.cols) =
        delta.block(row_off_[b], col_off_[b], blk.rows, blk.cols);
  }
  return out;
}

Matrix BlockShape::scatter(const Eigen::Ref<const Vector>& entries) const {
  if (entries.size() != entries_) throw DimensionError("scatter: wrong number of block entries");
  Matrix out = Matrix::Zero(rows_, cols_);
  for (int b = 0; b < num_blocks(); ++b) {
    const auto& blk = blocks_[b];
    out.block(row_off_[b], col_off_[b], blk.rows, blk.cols) =
        Eigen::Map<const RowMajorMatrix>(entries.data() + entry_off_[b], blk.rows, blk.cols);
  }
  return out;
}

// ---------------------------------------------------------------------------
// FeatureMap

FeatureMap::FeatureMap(BlockShape shape, Matrix entries)
    : shape_(std::move(shape)), entries_(std::move(entries)) {
  if (entries_.rows() != shape_.block_entries() || entries_.cols() < 1)
    throw DimensionError("FeatureMap: entries must be E x K with K >= 1");
}

FeatureMap FeatureMap::from_blocks(BlockShape shape,
                                   const std::vector<std::vector<Matrix>>& blocks) {
  Matrix entries(shape.block_entries(), static_cast<Eigen::Index>(blocks.size()));
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    if (static_cast<int>(blocks[j].size()) != shape.num_blocks())
      throw DimensionError("FeatureMap: wrong number of blocks");
    for (int b = 0; b < shape.num_blocks(); ++b) {
      const auto& blk = shape.blocks()[b];
      require_shape(blocks[j][b], blk.rows, blk.cols, "FeatureMap block");
      Eigen::Map<RowMajorMatrix>(entries.col(static_cast<Eigen::Index>(j)).data() +
                                     shape.entry_offset(b),
                                 blk.rows, blk.cols) = blocks[j][b];
    }
  }
  return FeatureMap(std::move(shape), std::move(entries));
}

Matrix FeatureMap::block(int j, int b) const {
  const auto& blk = shape_.blocks()[b];
  return Eigen::Map<const RowMajorMatrix>(entries_.col(j).data() + shape_.entry_offset(b),
                                          blk.rows, blk.cols);
}

double FeatureMap::inner(int j, const Matrix& delta) const {
  require_shape(delta, shape_.rows(), shape_.cols(), "update matrix");
  double acc = 0.0;
  for (int b = 0; b < shape_.num_blocks(); ++b) {
    const auto& blk = shape_.blocks()[b];
    acc += Eigen::Map<const RowMajorMatrix>(entries_.col(j).data() + shape_.entry_offset(b),
                                            blk.rows, blk.cols)
               .cwiseProduct(delta.block(shape_.row_offset(b), shape_.col_offset(b), blk.rows,
                                         blk.cols))
               .sum();
  }
  return acc;
}

// ---------------------------------------------------------------------------
// LinearizedDataset

LinearizedDataset::LinearizedDataset(LossKind loss, BlockShape shape, int output_dim,
                                     const std::vector<LinearizedSample>& samples)
    : loss_(loss), shape_(std::move(shape)), k_(output_dim), n_(samples.size()) {
  if (n_ == 0) throw DimensionError("LinearizedDataset: need at least one sample");
  if (k_ < 1) throw DimensionError("LinearizedDataset: output dimension must be >= 1");
  const auto n = static_cast<Eigen::Index>(n_);
  features_.resize(shape_.block_entries(), n * k_);
  base_.resize(k_, n);
  if (loss_ == LossKind::SquaredError) targets_.resize(k_, n);
  for (std::size_t i = 0; i < n_; ++i) {
    const auto& s = samples[i];
    const auto ii = static_cast<Eigen::Index>(i);
    if (!(s.features.shape() == shape_)) throw DimensionError("sample block shape mismatch");
    if (s.features.output_dim() != k_ || s.base_output.size() != k_)
      throw DimensionError("sample output dimension mismatch");
    features_.middleCols(ii * k_, k_) = s.features.entries();
    base_.col(ii) = s.base_output;
    if (loss_ == LossKind::SquaredError) {
      targets_.col(ii) = target_of(s.label, k_);
    } else {
      classes_.push_back(class_of(s.label, k_));
    }
  }
  validate();
}

LinearizedDataset::LinearizedDataset(LossKind loss, BlockShape shape, int output_dim,
                                     Matrix features, Matrix base_outputs,
                                     std::vector<std::size_t> classes, Matrix targets)
    : loss_(loss),
      shape_(std::move(shape)),
      k_(output_dim),
      n_(static_cast<std::size_t>(base_outputs.cols())),
      features_(std::move(features)),
      base_(std::move(base_outputs)),
      classes_(std::move(classes)),
      targets_(std::move(targets)) {
  validate();
}

void LinearizedDataset::validate() const {
  if (n_ == 0) throw DimensionError("LinearizedDataset: need at least one sample");
  if (k_ < 1) throw DimensionError("LinearizedDataset: output dimension must be >= 1");
  const auto n = static_cast<Eigen::Index>(n_);
  require_shape(features_, shape_.block_entries(), n * k_, "dataset features");
  require_shape(base_, k_, n, "dataset base outputs");
  if (!features_.allFinite()) throw NumericalError("dataset features must be finite");
  if (!base_.allFinite()) throw NumericalError("base outputs must be finite");
  if (loss_ == LossKind::SquaredError) {
    require_shape(targets_, k_, n, "dataset targets");
    if (!targets_.allFinite()) throw NumericalError("targets must be finite");
  } else {
    if (k_ < 2) throw DimensionError("cross-entropy needs output dimension >= 2");
    if (classes_.size() != n_) throw DimensionError("dataset: one class label per sample");
    for (auto c : classes_)
      if (c >= static_cast<std::size_t>(k_)) throw DimensionError("class label out of range");
  }
}

LinearizedSample LinearizedDataset::sample(std::size_t i) const {
  const auto ii = static_cast<Eigen::Index>(i);
  return LinearizedSample{FeatureMap(shape_, features_.middleCols(ii * k_, k_)),
                          base_.col(ii), label(i)};
}

Label LinearizedDataset::label(std::size_t i) const {
  if (loss_ == LossKind::CrossEntropy) return classes_.at(i);
  return Vector(targets_.col(static_cast<Eigen::Index>(i)));
}

Matrix LinearizedDataset::predictions(const Matrix& delta) const {
  const Vector e = shape_.gather(delta);
  const Vector flat = features_.transpose() * e;
  return base_ + Eigen::Map<const Matrix>(flat.data(), k_, static_cast<Eigen::Index>(n_));
}

Matrix LinearizedDataset::predictions(const Matrix& delta,
                                      std::span<const std::size_t> batch) const {
  const Vector e = shape_.gather(delta);
  Matrix out(k_, static_cast<Eigen::Index>(batch.size()));
  for (std::size_t c = 0; c < batch.size(); ++c) {
    const auto i = static_cast<Eigen::Index>(batch[c]);
    out.col(static_cast<Eigen::Index>(c)).noalias() =
        features_.middleCols(i * k_, k_).transpose() * e + base_.col(i);
  }
  return out;
}

// ---------------------------------------------------------------------------
// LoraFactors / PsdPerturbation

LoraFactors::LoraFactors(Matrix u, Matrix v) : u_(std::move(u)), v_(std::move(v)) {
  if (u_.cols() != v_.cols() || u_.cols() < 1)
    throw DimensionError("LoraFactors: u and v need the same column count r >= 1");
}

LoraFactors LoraFactors::from_stacked(const Matrix& q, int m) {
  if (m < 1 || m >= q.rows()) throw DimensionError("LoraFactors::from_stacked: bad split");
  return LoraFactors(q.topRows(m), q.bottomRows(q.rows() - m));
}

LoraFactors LoraFactors::balanced(const Matrix& delta, int rank, double rel_tol) {
  if (rank < 1) throw DimensionError("LoraFactors::balanced: rank must be >= 1");
  Eigen::JacobiSVD<Matrix> svd(delta, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  const int keep = numerical_rank(delta, rel_tol);
  if (keep > rank) throw DimensionError("LoraFactors::balanced: rank below rank(delta)");
  Matrix u = Matrix::Zero(delta.rows(), rank);
  Matrix v = Matrix::Zero(delta.cols(), rank);
  const Vector root = s.head(keep).cwiseSqrt();
  u.leftCols(keep) = svd.matrixU().leftCols(keep) * root.asDiagonal();
  v.leftCols(keep) = svd.matrixV().leftCols(keep) * root.asDiagonal();
  return LoraFactors(std::move(u), std::move(v));
}

Matrix LoraFactors::stacked() const {
  Matrix q(u_.rows() + v_.rows(), u_.cols());
  q << u_, v_;
  return q;
}

Matrix FactorGradient::stacked() const {
  Matrix q(u.rows() + v.rows(), u.cols());
  q << u, v;
  return q;
}

PsdPerturbation::PsdPerturbation(Matrix p, double bound) : p_(std::move(p)), bound_(bound) {
  if (p_.rows() != p_.cols() || p_.rows() < 1)
    throw DimensionError("PsdPerturbation: expected a non-empty square matrix");
  if (!(bound_ >= 0.0) || !std::isfinite(bound_))
    throw std::invalid_argument("PsdPerturbation: bound must be finite and >= 0");
  if (!p_.allFinite()) throw NumericalError("PsdPerturbation: non-finite entries");
  const double fro = p_.norm();
  if (bound_ == 0.0) {
    if (fro != 0.0) throw std::invalid_argument("PsdPerturbation: bound 0 requires P = 0");
    return;
  }
  if (!(fro < bound_)) throw std::invalid_argument("PsdPerturbation: ||P||_F must be < bound");
  const double asym = (p_ - p_.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * std::max(1.0, fro)) throw std::invalid_argument("PsdPerturbation: not symmetric");
  if (fro > 0.0 && min_eigenvalue(p_) < -1e-10 * fro)
    throw std::invalid_argument("PsdPerturbation: not positive semidefinite");
}

PsdPerturbation PsdPerturbation::zero(int dim) { return PsdPerturbation(Matrix::Zero(dim, dim), 0.0); }

// ---------------------------------------------------------------------------
// Losses

double loss_value(LossKind kind, const Vector& yhat, const Label& label) {
  const int k = static_cast<int>(yhat.size());
  if (kind == LossKind::SquaredError) return (yhat - target_of(label, k)).squaredNorm();
  const std::size_t y = class_of(label, k);
  Vector p;
  return softmax_into(yhat, p) - yhat(static_cast<Eigen::Index>(y));
}

Vector loss_gradient(LossKind kind, const Vector& yhat, const Label& label) {
  const int k = static_cast<int>(yhat.size());
  if (kind == LossKind::SquaredError) return 2.0 * (yhat - target_of(label, k));
  const std::size_t y = class_of(label, k);
  Vector p;
  softmax_into(yhat, p);
  p(static_cast<Eigen::Index>(y)) -= 1.0;
  return p;
}

Matrix loss_hessian(LossKind kind, const Vector& yhat, const Label& label) {
  const auto k = yhat.size();
  if (kind == LossKind::SquaredError) return 2.0 * Matrix::Identity(k, k);
  (void)class_of(label, static_cast<int>(k));
  Vector p;
  softmax_into(yhat, p);
  Matrix h = -p * p.transpose();
  h.diagonal() += p;
  return h;
}

// ---------------------------------------------------------------------------
// Objectives

Vector predict(const LinearizedSample& sample, const Matrix& delta) {
  const int k = sample.features.output_dim();
  if (sample.base_output.size() != k) throw DimensionError("predict: base output length");
  Vector out = sample.base_output;
  for (int j = 0; j < k; ++j) out(j) += sample.features.inner(j, delta);
  return out;
}

double empirical_risk(const Matrix& delta, const LinearizedDataset& data) {
  std::vector<std::size_t> all;
  return empirical_risk(delta, data, full_batch(data.size(), all));
}

double empirical_risk(const Matrix& delta, const LinearizedDataset& data,
                      std::span<const std::size_t> batch) {
  if (batch.empty()) throw DimensionError("empirical_risk: empty batch");
  const Matrix preds = data.predictions(delta, batch);
  return batch_losses(data, preds, batch, nullptr) / static_cast<double>(batch.size());
}

double regularized_risk(const Matrix& delta, const LinearizedDataset& data, double lambda) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("regularized_risk: lambda must be >= 0");
  const double loss = empirical_risk(delta, data);
  return lambda == 0.0 ? loss : loss + lambda * nuclear_norm(delta);
}

double factored_risk(const LoraFactors& f, const LinearizedDataset& data, double lambda,
                     const PsdPerturbation& p) {
  std::vector<std::size_t> all;
  return factored_risk(f, data, lambda, p, full_batch(data.size(), all));
}

double factored_risk(const LoraFactors& f, const LinearizedDataset& data, double lambda,
                     const PsdPerturbation& p, std::span<const std::size_t> batch) {
  require_factor_shapes(f, data, p);
  const double loss = empirical_risk(f.product(), data, batch);
  const double decay = 0.5 * lambda * (f.u().squaredNorm() + f.v().squaredNorm());
  return loss + decay + perturbation_term(p, f.stacked());
}

DualWeights dual_weights(const Matrix& delta, const LinearizedDataset& data) {
  std::vector<std::size_t> all;
  const auto& batch = full_batch(data.size(), all);
  const Matrix preds = data.predictions(delta);
  Matrix grads;
  batch_losses(data, preds, batch, &grads);
  return DualWeights{grads.transpose() / static_cast<double>(data.size())};
}

DualWeights dual_weights(const LoraFactors& f, const LinearizedDataset& data) {
  return dual_weights(f.product(), data);
}

Matrix assemble_S(const DualWeights& w, const LinearizedDataset& data) {
  const auto n = static_cast<Eigen::Index>(data.size());
  require_shape(w.values, n, data.output_dim(), "DualWeights");
  const Matrix wt = w.values.transpose();  // K x N, column-major == (i, j) order
  const Vector flat = data.features() * Eigen::Map<const Vector>(wt.data(), wt.size());
  return data.shape().scatter(flat);
}

FactorGradient grad_factored(const LoraFactors& f, const LinearizedDataset& data, double lambda,
                             const PsdPerturbation& p) {
  std::vector<std::size_t> all;
  return grad_factored(f, data, lambda, p, full_batch(data.size(), all));
}

FactorGradient grad_factored(const LoraFactors& f, const LinearizedDataset& data, double lambda,
                             const PsdPerturbation& p, std::span<const std::size_t> batch) {
  return evaluate_factored(f, data, lambda, p, batch).gradient;
}

FactoredEvaluation evaluate_factored(const LoraFactors& f, const LinearizedDataset& data,
                                     double lambda, const PsdPerturbation& p,
                                     std::span<const std::size_t> batch) {
  require_factor_shapes(f, data, p);
  if (batch.empty()) throw DimensionError("evaluate_factored: empty batch");
  const double inv_b = 1.0 / static_cast<double>(batch.size());
  const Matrix preds = data.predictions(f.product(), batch);
  Matrix grads;
  const double loss = batch_losses(data, preds, batch, &grads) * inv_b;
  grads *= inv_b;
  const Matrix s = weighted_features(data, grads, batch);

  FactoredEvaluation out;
  out.value = loss + 0.5 * lambda * (f.u().squaredNorm() + f.v().squaredNorm());
  out.gradient = FactorGradient{s * f.v() + lambda * f.u(), s.transpose() * f.u() + lambda * f.v()};
  if (!p.is_zero()) {
    const Matrix q = f.stacked();
    const Matrix pq = p.matrix() * q;
    out.value += q.cwiseProduct(pq).sum();
    const int m = data.shape().rows();
    out.gradient.u += 2.0 * pq.topRows(m);
    out.gradient.v += 2.0 * pq.bottomRows(pq.rows() - m);
  }
  return out;
}

Matrix hessian_factored(const LoraFactors& f, const LinearizedDataset& data, double lambda,
                        const PsdPerturbation& p) {
  require_factor_shapes(f, data, p);
  const int m = data.shape().rows();
  const int n = data.shape().cols();
  const int r = f.rank_budget();
  const int side_q = m + n;
  const long side = static_cast<long>(side_q) * r;
  if (side > kMaxDenseHessianSide)
    throw DimensionError("hessian_factored: side " + std::to_string(side) +
                         " exceeds dense guard " + std::to_string(kMaxDenseHessianSide));

  const int k = data.output_dim();
  const Matrix preds = data.predictions(f.product());
  Matrix grads;
  std::vector<std::size_t> all;
  batch_losses(data, preds, full_batch(data.size(), all), &grads);
  const double inv_n = 1.0 / static_cast<double>(data.size());
  const Matrix s = assemble_S(DualWeights{grads.transpose() * inv_n}, data);

  Matrix h = Matrix::Zero(side, side);
  Matrix jac(side, k);
  Matrix jq(side_q, r);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    for (int j = 0; j < k; ++j) {
      const Matrix g = data.shape().scatter(data.features().col(ii * k + j));
      jq.topRows(m).noalias() = g * f.v();
      jq.bottomRows(n).noalias() = g.transpose() * f.u();
      jac.col(j) = Eigen::Map<const Vector>(jq.data(), side);
    }
    const Matrix lh = loss_hessian(data.loss(), preds.col(ii), data.label(i)) * inv_n;
    h.noalias() += jac * lh * jac.transpose();
  }

  Matrix curvature = Matrix::Zero(side_q, side_q);
  curvature.topRightCorner(m, n) = s;
  curvature.bottomLeftCorner(n, m) = s.transpose();
  curvature.diagonal().array() += lambda;
  if (!p.is_zero()) curvature += 2.0 * p.matrix();
  for (int c = 0; c < r; ++c) h.block(c * side_q, c * side_q, side_q, side_q) += curvature;

  return 0.5 * (h + h.transpose());
}

Matrix hessian_vector_product(const LoraFactors& f, const LinearizedDataset& data, double lambda,
                              const PsdPerturbation& p, const Matrix& direction) {
  require_factor_shapes(f, data, p);
  const int m = data.shape().rows();
  const int n = data.shape().cols();
  require_shape(direction, m + n, f.rank_budget(), "Hessian direction");
  const Matrix du = direction.topRows(m);
  const Matrix dv = direction.bottomRows(n);

  const Matrix delta = f.product();
  const Matrix preds = data.predictions(delta);
  Matrix grads;
  std::vector<std::size_t> all;
  const auto& batch = full_batch(data.size(), all);
  batch_losses(data, preds, batch, &grads);
  const double inv_n = 1.0 / static_cast<double>(data.size());
  const Matrix s = weighted_features(data, grads * inv_n, batch);

  // Directional change of the predictions, pushed through each loss Hessian.
  const Matrix ddelta = du * f.v().transpose() + f.u() * dv.transpose();
  const Matrix dpred = data.predictions(ddelta) - data.base_outputs();
  Matrix c(dpred.rows(), dpred.cols());
  for (Eigen::Index i = 0; i < dpred.cols(); ++i) {
    c.col(i) = loss_hessian(data.loss(), preds.col(i), data.label(static_cast<std::size_t>(i))) *
               dpred.col(i) * inv_n;
  }
  const Matrix cm = weighted_features(data, c, batch);

  Matrix out(m + n, f.rank_budget());
  out.topRows(m) = cm * f.v() + s * dv + lambda * du;
  out.bottomRows(n) = cm.transpose() * f.u() + s.transpose() * du + lambda * dv;
  if (!p.is_zero()) out += 2.0 * (p.matrix() * direction);
  return out;
}

}  // namespace lorantk
