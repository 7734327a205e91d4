// Copyright (C) 2026 The lorantk Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <iostream>
#include <map>
#include <optional>

#include <CLI11.hpp>

#include "commands.hpp"
#include "lorantk/dataset_io.hpp"
#include "lorantk/linalg.hpp"
#include "output.hpp"

namespace {

using namespace lorantk;
using namespace lorantk::cli;

std::string flag_name(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  return "--" + key;
}

struct Parsed {
  std::string config_path;
  std::string replay_path;
  unsigned threads = 1;
  std::map<std::string, std::string> keys;    // config keys given on the command line
  std::map<std::string, std::string> extras;  // extra options given on the command line
};

// global defaults < command defaults < replay < config file < flags
Invocation resolve(const CommandSpec& spec, const Parsed& p) {
  Invocation inv;
  inv.command = spec.name;
  inv.threads = p.threads;
  for (const auto& e : spec.extras) inv.extras[e.name] = e.default_value;
  for (const auto& [k, v] : spec.defaults) inv.config.set(k, v);
  if (!p.replay_path.empty()) {
    const Json j = read_json(p.replay_path);
    if (j.contains("config"))
      for (const auto& [k, v] : j["config"].items()) inv.config.set(k, v.get<std::string>());
    if (j.contains("options")) {
      for (const auto& [k, v] : j["options"].items()) {
        if (!inv.extras.contains(k)) throw ConfigError("replay: unknown option '" + k + "'");
        inv.extras[k] = v.get<std::string>();
      }
    }
  }
  if (!p.config_path.empty()) inv.config = load_config(p.config_path, inv.config);
  for (const auto& [k, v] : p.keys) inv.config.set(k, v);
  for (const auto& [k, v] : p.extras) inv.extras[k] = v;
  return inv;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lorantk: LoRA training landscape and generalization toolkit"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "help for every subcommand");

  const auto& specs = commands();
  std::vector<Parsed> parsed(specs.size());
  std::vector<std::map<std::string, std::optional<std::string>>> key_slots(specs.size());
  std::vector<std::map<std::string, std::optional<std::string>>> extra_slots(specs.size());
  std::vector<CLI::App*> subs;

  for (std::size_t s = 0; s < specs.size(); ++s) {
    const CommandSpec& spec = specs[s];
    CLI::App* sub = app.add_subcommand(spec.name, spec.description);
    sub->add_option("--config", parsed[s].config_path, "key=value config file");
    sub->add_option("--replay", parsed[s].replay_path, "re-run from a JSON summary");
    sub->add_option("--threads", parsed[s].threads, "worker threads (0 = hardware)")
        ->capture_default_str();
    for (const auto& key : ExperimentConfig::keys()) {
      std::string def;
      for (const auto& [k, v] : spec.defaults)
        if (k == key) def = v;
      if (def.empty()) def = ExperimentConfig{}.get(key);
      sub->add_option(flag_name(key), key_slots[s][key], "config key " + key)
          ->default_str(def)
          ->group("Config keys");
    }
    for (const auto& e : spec.extras)
      sub->add_option("--" + e.name, extra_slots[s][e.name], e.help)->default_str(e.default_value);
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  for (std::size_t s = 0; s < specs.size(); ++s) {
    if (!subs[s]->parsed()) continue;
    for (const auto& [k, v] : key_slots[s])
      if (v) parsed[s].keys[k] = *v;
    for (const auto& [k, v] : extra_slots[s])
      if (v) parsed[s].extras[k] = *v;
    try {
      const Invocation inv = resolve(specs[s], parsed[s]);
      return specs[s].run(inv);
    } catch (const ConfigError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kUsage;
    } catch (const FormatError& e) {
      std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
      return kUsage;
    } catch (const Json::exception& e) {
      std::cerr << "error: malformed JSON: " << e.what() << "\n";
      return kUsage;
    } catch (const DimensionError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kUsage;
    } catch (const std::invalid_argument& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kUsage;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kCertifiedFailure;
    }
  }
  return kUsage;
}
