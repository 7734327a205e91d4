// Copyright (C) 2026 The lorantk Authors
// SPDX-License-Identifier: Apache-2.0

#include "lorantk/dataset_io.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>

namespace lorantk {

namespace {

constexpr std::uint64_t kMaxDim = std::uint64_t{1} << 31;

void put_u64(std::string& out, std::uint64_t x) {
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((x >> (8 * b)) & 0xffu));
}

void put_f64(std::string& out, double x) { put_u64(out, std::bit_cast<std::uint64_t>(x)); }

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw FormatError(FormatErrorCode::BadHeader, "header sizes overflow");
  return r;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw FormatError(FormatErrorCode::BadHeader, "header sizes overflow");
  return r;
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  std::uint64_t u64(const char* what) {
    need(8, what);
    std::uint64_t x = 0;
    for (int b = 0; b < 8; ++b)
      x |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_ + b])) << (8 * b);
    pos_ += 8;
    return x;
  }

  double f64(const char* what) {
    const double x = std::bit_cast<double>(u64(what));
    if (!std::isfinite(x)) throw FormatError(FormatErrorCode::NonFinite, std::string("non-finite value in ") + what);
    return x;
  }

  unsigned char byte(const char* what) {
    need(1, what);
    return static_cast<unsigned char>(bytes_[pos_++]);
  }

  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  void need(std::size_t k, const char* what) {
    if (remaining() < k)
      throw FormatError(FormatErrorCode::Truncated, std::string("truncated payload while reading ") + what);
  }

  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

const char* to_string(FormatErrorCode code) {
  switch (code) {
    case FormatErrorCode::BadMagic: return "bad_magic";
    case FormatErrorCode::BadHeader: return "bad_header";
    case FormatErrorCode::Truncated: return "truncated";
    case FormatErrorCode::TrailingBytes: return "trailing_bytes";
    case FormatErrorCode::NonFinite: return "non_finite";
    case FormatErrorCode::BadLabel: return "bad_label";
    case FormatErrorCode::Io: return "io";
  }
  return "unknown";
}

std::uint64_t encoded_size(LossKind loss, const BlockShape& shape, std::uint64_t output_dim,
                           std::uint64_t num_samples) {
  const std::uint64_t header = kDatasetMagic.size() + 1 + 3 * 8 +
                               16 * static_cast<std::uint64_t>(shape.num_blocks());
  const std::uint64_t label = loss == LossKind::CrossEntropy ? 8 : checked_mul(8, output_dim);
  const std::uint64_t feats =
      checked_mul(checked_mul(8, output_dim), static_cast<std::uint64_t>(shape.block_entries()));
  const std::uint64_t per_sample = checked_add(checked_add(checked_mul(8, output_dim), label), feats);
  return checked_add(header, checked_mul(per_sample, num_samples));
}

std::string encode_dataset(const LinearizedDataset& data) {
  const auto& shape = data.shape();
  const int k = data.output_dim();
  std::string out;
  out.reserve(static_cast<std::size_t>(encoded_size(data.loss(), shape, k, data.size())));
  out.append(kDatasetMagic);
  out.push_back(data.loss() == LossKind::CrossEntropy ? 1 : 0);
  put_u64(out, data.size());
  put_u64(out, static_cast<std::uint64_t>(k));
  put_u64(out, static_cast<std::uint64_t>(shape.num_blocks()));
  for (const auto& b : shape.blocks()) {
    put_u64(out, static_cast<std::uint64_t>(b.rows));
    put_u64(out, static_cast<std::uint64_t>(b.cols));
  }
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    for (int j = 0; j < k; ++j) put_f64(out, data.base_outputs()(j, ii));
    if (data.loss() == LossKind::CrossEntropy) {
      put_u64(out, data.classes()[i]);
    } else {
      for (int j = 0; j < k; ++j) put_f64(out, data.targets()(j, ii));
    }
    for (int j = 0; j < k; ++j) {
      const auto col = data.features().col(ii * k + j);
      for (Eigen::Index e = 0; e < col.size(); ++e) put_f64(out, col(e));
    }
  }
  return out;
}

LinearizedDataset decode_dataset(std::string_view bytes) {
  if (bytes.size() < kDatasetMagic.size() || bytes.substr(0, kDatasetMagic.size()) != kDatasetMagic)
    throw FormatError(FormatErrorCode::BadMagic, "not an LNTK1 file (bad magic)");
  Reader rd(bytes.substr(kDatasetMagic.size()));
  const unsigned char flags = rd.byte("flags");
  if (flags & ~1u) throw FormatError(FormatErrorCode::BadHeader, "unknown flag bits set");
  const LossKind loss = (flags & 1u) ? LossKind::CrossEntropy : LossKind::SquaredError;
  const std::uint64_t n = rd.u64("N");
  const std::uint64_t k = rd.u64("K");
  const std::uint64_t t = rd.u64("T");
  if (n < 1 || k < 1 || t < 1)
    throw FormatError(FormatErrorCode::BadHeader, "N, K and T must all be >= 1");
  if (k > kMaxDim || t > kMaxDim) throw FormatError(FormatErrorCode::BadHeader, "K or T too large");
  if (loss == LossKind::CrossEntropy && k < 2)
    throw FormatError(FormatErrorCode::BadHeader, "cross-entropy needs K >= 2");
  if (rd.remaining() / 16 < t) throw FormatError(FormatErrorCode::Truncated, "truncated block table");

  std::vector<BlockShape::Block> blocks;
  std::uint64_t rows = 0, cols = 0;
  for (std::uint64_t b = 0; b < t; ++b) {
    const std::uint64_t mi = rd.u64("block rows");
    const std::uint64_t ni = rd.u64("block cols");
    if (mi < 1 || ni < 1 || mi > kMaxDim || ni > kMaxDim)
      throw FormatError(FormatErrorCode::BadHeader, "block sizes must be in [1, 2^31]");
    rows += mi;
    cols += ni;
    if (rows > kMaxDim || cols > kMaxDim || checked_mul(mi, ni) > kMaxDim)
      throw FormatError(FormatErrorCode::BadHeader, "block shape too large");
    blocks.push_back({static_cast<int>(mi), static_cast<int>(ni)});
  }
  BlockShape shape(std::move(blocks));
  const std::uint64_t expected = encoded_size(loss, shape, k, n);
  if (bytes.size() < expected)
    throw FormatError(FormatErrorCode::Truncated, "payload shorter than the header implies");
  if (bytes.size() > expected)
    throw FormatError(FormatErrorCode::TrailingBytes, "payload longer than the header implies");

  const auto nn = static_cast<Eigen::Index>(n);
  const auto kk = static_cast<Eigen::Index>(k);
  const Eigen::Index entries = shape.block_entries();
  Matrix features(entries, nn * kk);
  Matrix base(kk, nn);
  Matrix targets;
  std::vector<std::size_t> classes;
  if (loss == LossKind::SquaredError) targets.resize(kk, nn);
  for (Eigen::Index i = 0; i < nn; ++i) {
    for (Eigen::Index j = 0; j < kk; ++j) base(j, i) = rd.f64("base output");
    if (loss == LossKind::CrossEntropy) {
      const std::uint64_t c = rd.u64("class label");
      if (c >= k) throw FormatError(FormatErrorCode::BadLabel, "class label out of range");
      classes.push_back(static_cast<std::size_t>(c));
    } else {
      for (Eigen::Index j = 0; j < kk; ++j) targets(j, i) = rd.f64("target");
    }
    for (Eigen::Index j = 0; j < kk; ++j)
      for (Eigen::Index e = 0; e < entries; ++e) features(e, i * kk + j) = rd.f64("features");
  }
  return LinearizedDataset(loss, std::move(shape), static_cast<int>(k), std::move(features),
                           std::move(base), std::move(classes), std::move(targets));
}

void write_dataset(const std::filesystem::path& path, const LinearizedDataset& data) {
  const std::string bytes = encode_dataset(data);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError(FormatErrorCode::Io, "cannot open " + path.string() + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw FormatError(FormatErrorCode::Io, "write failed for " + path.string());
}

LinearizedDataset read_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(FormatErrorCode::Io, "cannot open " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_dataset(bytes);
}

}  // namespace lorantk
