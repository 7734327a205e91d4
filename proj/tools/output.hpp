// Copyright (C) 2026 The lorantk Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lorantk/experiment_config.hpp"
#include "lorantk/factored_optim.hpp"
#include "lorantk/landscape.hpp"

namespace lorantk::cli {

using Json = nlohmann::ordered_json;

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);
  void row(const std::vector<std::string>& cells);

 private:
  std::ofstream out_;
  std::size_t columns_;
};

/// Shortest representation that parses back to the same double.
std::string num(double x);

std::filesystem::path prepare_out_dir(const ExperimentConfig& cfg);

void write_json(const std::filesystem::path& path, const Json& j);
Json read_json(const std::filesystem::path& path);

Json config_json(const ExperimentConfig& cfg);
Json certificate_json(const SospCertificate& cert);

void write_trace_csv(const std::filesystem::path& path, const TrainTrace& trace);

}  // namespace lorantk::cli
