// Copyright (C) 2026 The lorantk Authors
// SPDX-License-Identifier: Apache-2.0

#include "output.hpp"

#include <charconv>
#include <stdexcept>

namespace lorantk::cli {

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : out_(path), columns_(header.size()) {
  if (!out_) throw std::runtime_error("cannot open " + path.string() + " for writing");
  row(header);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) throw std::logic_error("CsvWriter: column count mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
  out_ << '\n';
}

std::string num(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::filesystem::path prepare_out_dir(const ExperimentConfig& cfg) {
  std::filesystem::path dir(cfg.out_dir);
  std::filesystem::create_directories(dir);
  return dir;
}

void write_json(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << j.dump(2) << '\n';
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return Json::parse(in);
}

Json config_json(const ExperimentConfig& cfg) {
  Json j = Json::object();
  for (const auto& k : ExperimentConfig::keys()) j[k] = cfg.get(k);
  return j;
}

Json certificate_json(const SospCertificate& cert) {
  Json j;
  j["verdict"] = to_string(cert.verdict);
  j["grad_norm"] = cert.grad_norm;
  j["min_hessian_eigenvalue"] = cert.min_eig;
  j["rank_q"] = cert.rank_q;
  j["rank_budget"] = cert.rank_budget;
  j["rank_deficient"] = cert.rank_deficient();
  j["tol_grad"] = cert.tol.grad;
  j["tol_hess"] = cert.tol.hess;
  j["rank_tol"] = cert.tol.rank;
  return j;
}

void write_trace_csv(const std::filesystem::path& path, const TrainTrace& trace) {
  CsvWriter csv(path, {"epoch", "factored_risk", "regularized_risk", "grad_norm", "step_size"});
  for (const auto& r : trace.records)
    csv.row({std::to_string(r.epoch), num(r.factored_risk), num(r.regularized_risk),
             num(r.grad_norm), num(r.step_size)});
}

}  // namespace lorantk::cli
