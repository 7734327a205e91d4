// Copyright (C) 2026 The lorantk Authors
// SPDX-License-Identifier: Apache-2.0
//
// LNTK1 binary dataset format, all integers u64 and all reals f64, little
// endian:
//
//   "LNTK1\n"  flags (1 byte, bit 0: 0 squared error, 1 cross-entropy)
//   N K T  then T pairs (m_i, n_i)
//   per sample: f0 (K reals), label (u64 class or K reals),
//               K * sum(m_i n_i) reals in (j, block, row-major) order

#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "lorantk/model.hpp"

namespace lorantk {

enum class FormatErrorCode {
  BadMagic = 10,
  BadHeader = 11,
  Truncated = 12,
  TrailingBytes = 13,
  NonFinite = 14,
  BadLabel = 15,
  Io = 16,
};

const char* to_string(FormatErrorCode code);

class FormatError : public std::runtime_error {
 public:
  FormatError(FormatErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  FormatErrorCode code() const { return code_; }

 private:
  FormatErrorCode code_;
};

inline constexpr std::string_view kDatasetMagic{"LNTK1\n"};

/// Total file size implied by a header.
std::uint64_t encoded_size(LossKind loss, const BlockShape& shape, std::uint64_t output_dim,
                           std::uint64_t num_samples);

std::string encode_dataset(const LinearizedDataset& data);
LinearizedDataset decode_dataset(std::string_view bytes);

void write_dataset(const std::filesystem::path& path, const LinearizedDataset& data);
LinearizedDataset read_dataset(const std::filesystem::path& path);

}  // namespace lorantk
