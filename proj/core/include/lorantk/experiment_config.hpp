// Copyright (C) 2026 The lorantk Authors
// SPDX-License-Identifier: Apache-2.0
//
// Plain-text key=value experiment configuration. Blank lines and lines
// starting with '#' are ignored; unknown keys and malformed values throw.

#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lorantk/factored_optim.hpp"
#include "lorantk/landscape.hpp"

namespace lorantk {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
  /// Toy name (a, b, c), "synthetic", or a path to an LNTK1 file.
  std::string task = "c";
  std::uint64_t seed = 0;
  int rank = 1;
  double lambda = 0.01;
  double step_size = 1e-3;
  int epochs = 1000;
  /// 0 means full batch.
  std::size_t batch_size = 32;
  InitScheme init = InitScheme::LoraStandard;
  double sigma_init = 1e-2;
  double noise_std = 0.0;
  double perturb_eps = 0.0;
  double tol_grad = 1e-6;
  double tol_hess = 1e-6;
  double rank_tol = 1e-8;
  int runs = 20;
  double eta = 0.1;
  double slack_eps = 0.1;
  std::size_t n_pop = 10000;
  std::string out_dir = ".";

  /// Sets one key from its textual value.
  void set(std::string_view key, std::string_view value);
  /// Every key in canonical order.
  static const std::vector<std::string>& keys();
  /// Textual value of a key, round-trippable through set().
  std::string get(std::string_view key) const;

  TrainConfig train_config() const;
  SospTolerances tolerances() const;
  std::string to_text() const;
};

/// Applies the keys in `text` on top of `base`.
ExperimentConfig parse_config(std::string_view text, ExperimentConfig base = {});
ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base = {});

InitScheme parse_init(std::string_view text);

}  // namespace lorantk
