// Copyright (C) 2026 The lorantk Authors
// SPDX-License-Identifier: Apache-2.0

#include "lorantk/experiment_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace lorantk {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, const char* expected) {
  throw ConfigError("config: key '" + std::string(key) + "' expects " + expected + ", got '" +
                    std::string(value) + "'");
}

template <class Int>
Int parse_int(std::string_view key, std::string_view value) {
  Int out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) bad_value(key, value, "an integer");
  return out;
}

double parse_real(std::string_view key, std::string_view value) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size() || !std::isfinite(out))
    bad_value(key, value, "a finite real");
  return out;
}

std::string format_real(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

}  // namespace

InitScheme parse_init(std::string_view text) {
  if (text == "lora") return InitScheme::LoraStandard;
  if (text == "gaussian") return InitScheme::BothGaussian;
  throw ConfigError("config: init must be 'lora' or 'gaussian', got '" + std::string(text) + "'");
}

const std::vector<std::string>& ExperimentConfig::keys() {
  static const std::vector<std::string> k{
      "task",        "seed",      "rank",     "lambda",  "step_size", "epochs",   "batch_size",
      "init",        "sigma_init", "noise_std", "perturb_eps", "tol_grad", "tol_hess", "rank_tol",
      "runs",        "eta",       "slack_eps", "n_pop",   "out_dir"};
  return k;
}

void ExperimentConfig::set(std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "task") {
    if (value.empty()) bad_value(key, value, "a non-empty string");
    task = std::string(value);
  } else if (key == "seed") {
    seed = parse_int<std::uint64_t>(key, value);
  } else if (key == "rank") {
    rank = parse_int<int>(key, value);
    if (rank < 1) bad_value(key, value, "an integer >= 1");
  } else if (key == "lambda") {
    lambda = parse_real(key, value);
    if (lambda < 0.0) bad_value(key, value, "a real >= 0");
  } else if (key == "step_size") {
    step_size = parse_real(key, value);
    if (!(step_size > 0.0)) bad_value(key, value, "a real > 0");
  } else if (key == "epochs") {
    epochs = parse_int<int>(key, value);
    if (epochs < 0) bad_value(key, value, "an integer >= 0");
  } else if (key == "batch_size") {
    batch_size = parse_int<std::size_t>(key, value);
  } else if (key == "init") {
    init = parse_init(value);
  } else if (key == "sigma_init") {
    sigma_init = parse_real(key, value);
    if (sigma_init < 0.0) bad_value(key, value, "a real >= 0");
  } else if (key == "noise_std") {
    noise_std = parse_real(key, value);
    if (noise_std < 0.0) bad_value(key, value, "a real >= 0");
  } else if (key == "perturb_eps") {
    perturb_eps = parse_real(key, value);
    if (perturb_eps < 0.0) bad_value(key, value, "a real >= 0");
  } else if (key == "tol_grad") {
    tol_grad = parse_real(key, value);
    if (tol_grad < 0.0) bad_value(key, value, "a real >= 0");
  } else if (key == "tol_hess") {
    tol_hess = parse_real(key, value);
    if (tol_hess < 0.0) bad_value(key, value, "a real >= 0");
  } else if (key == "rank_tol") {
    rank_tol = parse_real(key, value);
    if (!(rank_tol > 0.0 && rank_tol < 1.0)) bad_value(key, value, "a real in (0, 1)");
  } else if (key == "runs") {
    runs = parse_int<int>(key, value);
    if (runs < 1) bad_value(key, value, "an integer >= 1");
  } else if (key == "eta") {
    eta = parse_real(key, value);
    if (!(eta > 0.0 && eta < 1.0)) bad_value(key, value, "a real in (0, 1)");
  } else if (key == "slack_eps") {
    slack_eps = parse_real(key, value);
    if (slack_eps < 0.0) bad_value(key, value, "a real >= 0");
  } else if (key == "n_pop") {
    n_pop = parse_int<std::size_t>(key, value);
    if (n_pop < 1) bad_value(key, value, "an integer >= 1");
  } else if (key == "out_dir") {
    if (value.empty()) bad_value(key, value, "a non-empty path");
    out_dir = std::string(value);
  } else {
    throw ConfigError("config: unknown key '" + std::string(key) + "'");
  }
}

std::string ExperimentConfig::get(std::string_view key) const {
  if (key == "task") return task;
  if (key == "seed") return std::to_string(seed);
  if (key == "rank") return std::to_string(rank);
  if (key == "lambda") return format_real(lambda);
  if (key == "step_size") return format_real(step_size);
  if (key == "epochs") return std::to_string(epochs);
  if (key == "batch_size") return std::to_string(batch_size);
  if (key == "init") return to_string(init);
  if (key == "sigma_init") return format_real(sigma_init);
  if (key == "noise_std") return format_real(noise_std);
  if (key == "perturb_eps") return format_real(perturb_eps);
  if (key == "tol_grad") return format_real(tol_grad);
  if (key == "tol_hess") return format_real(tol_hess);
  if (key == "rank_tol") return format_real(rank_tol);
  if (key == "runs") return std::to_string(runs);
  if (key == "eta") return format_real(eta);
  if (key == "slack_eps") return format_real(slack_eps);
  if (key == "n_pop") return std::to_string(n_pop);
  if (key == "out_dir") return out_dir;
  throw ConfigError("config: unknown key '" + std::string(key) + "'");
}

TrainConfig ExperimentConfig::train_config() const {
  TrainConfig c;
  c.rank = rank;
  c.lambda = lambda;
  c.step_size = step_size;
  c.epochs = epochs;
  c.batch_size = batch_size;
  c.init = init;
  c.sigma_init = sigma_init;
  c.noise_std = noise_std;
  c.seed = seed;
  c.perturb_eps = perturb_eps;
  c.tol_grad = tol_grad;
  return c;
}

SospTolerances ExperimentConfig::tolerances() const {
  return SospTolerances{tol_grad, tol_hess, rank_tol};
}

std::string ExperimentConfig::to_text() const {
  std::string out;
  for (const auto& k : keys()) out += k + "=" + get(k) + "\n";
  return out;
}

ExperimentConfig parse_config(std::string_view text, ExperimentConfig base) {
  ExperimentConfig cfg = std::move(base);
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
    const std::string_view key = trim(line.substr(0, eq));
    if (!seen.emplace(key).second)
      throw ConfigError("config line " + std::to_string(line_no) + ": duplicate key '" +
                        std::string(key) + "'");
    cfg.set(key, line.substr(eq + 1));
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

}  // namespace lorantk
