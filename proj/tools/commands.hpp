// Copyright (C) 2026 The lorantk Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>
#include <vector>

#include "lorantk/experiment_config.hpp"

namespace lorantk::cli {

enum ExitCode : int { kPass = 0, kUsage = 1, kCertifiedFailure = 2 };

/// A subcommand-specific option: name (without dashes), default, help.
struct ExtraOption {
  std::string name;
  std::string default_value;
  std::string help;
};

struct Invocation {
  std::string command;
  ExperimentConfig config;
  std::map<std::string, std::string> extras;
  unsigned threads = 1;

  const std::string& extra(const std::string& name) const;
  double extra_real(const std::string& name) const;
  long long extra_int(const std::string& name) const;
  bool extra_flag(const std::string& name) const;
};

struct CommandSpec {
  std::string name;
  std::string description;
  /// Keys applied on top of the global defaults before file and flags.
  std::vector<std::pair<std::string, std::string>> defaults;
  std::vector<ExtraOption> extras;
  int (*run)(const Invocation&);
};

const std::vector<CommandSpec>& commands();

}  // namespace lorantk::cli
