// Copyright (C) 2026 The lorantk Authors
// SPDX-License-Identifier: Apache-2.0

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "lorantk/dataset_io.hpp"
#include "lorantk/generalization.hpp"
#include "lorantk/landscape.hpp"
#include "lorantk/nuclear_prox.hpp"
#include "lorantk/rank_reduction.hpp"
#include "output.hpp"

namespace lorantk::cli {

namespace {

namespace fs = std::filesystem;

LinearizedDataset load_task(const ExperimentConfig& cfg) {
  if (cfg.task == "a" || cfg.task == "b" || cfg.task == "c") return toy_instance(cfg.task[0]);
  return read_dataset(cfg.task);
}

int finish(const Invocation& inv, Json results, bool pass) {
  const fs::path dir = prepare_out_dir(inv.config);
  const int code = pass ? kPass : kCertifiedFailure;
  Json j;
  j["command"] = inv.command;
  j["pass"] = pass;
  j["exit_code"] = code;
  j["seed"] = inv.config.seed;
  j["threads"] = inv.threads;
  j["config"] = config_json(inv.config);
  Json opts = Json::object();
  for (const auto& [k, v] : inv.extras) opts[k] = v;
  j["options"] = opts;
  j["results"] = std::move(results);
  write_json(dir / (inv.command + ".json"), j);
  std::cout << inv.command << ": " << (pass ? "PASS" : "FAIL") << " (summary: "
            << (dir / (inv.command + ".json")).string() << ")\n";
  return code;
}

Json dataset_json(const LinearizedDataset& data) {
  Json j;
  j["loss"] = to_string(data.loss());
  j["num_samples"] = data.size();
  j["output_dim"] = data.output_dim();
  Json blocks = Json::array();
  for (const auto& b : data.shape().blocks()) blocks.push_back({b.rows, b.cols});
  j["blocks"] = blocks;
  return j;
}

SyntheticTaskConfig synthetic_from(const Invocation& inv) {
  SyntheticTaskConfig tc;
  const std::string& loss = inv.extra("loss");
  if (loss == "ce") {
    tc.loss = LossKind::CrossEntropy;
  } else if (loss == "se") {
    tc.loss = LossKind::SquaredError;
  } else {
    throw ConfigError("--loss must be 'ce' or 'se'");
  }
  tc.output_dim = static_cast<int>(inv.extra_int("k"));
  tc.rows = static_cast<int>(inv.extra_int("rows"));
  tc.cols = static_cast<int>(inv.extra_int("cols"));
  tc.feature_bound = inv.extra_real("feature-bound");
  tc.true_nuclear = inv.extra_real("true-nuclear");
  tc.true_rank = static_cast<int>(inv.extra_int("true-rank"));
  tc.label_noise = inv.extra_real("label-noise");
  tc.base_scale = inv.extra_real("base-scale");
  tc.n_pop = inv.config.n_pop;
  tc.seed = inv.config.seed;
  try {
    tc.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return tc;
}

int cmd_gen_data(const Invocation& inv) {
  const fs::path dir = prepare_out_dir(inv.config);
  fs::path out = inv.extra("output");
  if (out.empty()) out = dir / "data.lntk";
  Json res;
  if (inv.extra_flag("synthetic")) {
    SyntheticTaskConfig tc = synthetic_from(inv);
    tc.n_pop = 1;
    const SyntheticTask task(tc);
    const auto n = static_cast<std::size_t>(inv.extra_int("n"));
    if (n < 1) throw ConfigError("--n must be >= 1");
    const LinearizedDataset data = task.draw(n, derive_seed(inv.config.seed, 2));
    write_dataset(out, data);
    res["source"] = "synthetic";
    res["dataset"] = dataset_json(data);
    res["true_nuclear"] = nuclear_norm(task.delta_true());
  } else {
    const LinearizedDataset data = load_task(inv.config);
    write_dataset(out, data);
    res["source"] = inv.config.task;
    res["dataset"] = dataset_json(data);
  }
  res["path"] = out.string();
  res["bytes"] = fs::file_size(out);
  return finish(inv, res, true);
}

int cmd_toy(const Invocation& inv) {
  const std::string which = inv.extra("which").empty() ? inv.config.task : inv.extra("which");
  if (which != "a" && which != "b" && which != "c")
    throw ConfigError("toy: --which must be a, b or c");
  const std::string& check = inv.extra("check");
  if (check != "zero" && check != "floor") throw ConfigError("toy: --check must be zero or floor");
  const LinearizedDataset data = toy_instance(which[0]);
  const ExperimentConfig& cfg = inv.config;

  MultistartConfig mc;
  mc.train = cfg.train_config();
  if (mc.train.batch_size >= data.size()) mc.train.batch_size = 0;
  mc.runs = std::max(2, cfg.runs);
  mc.tol = cfg.tolerances();
  mc.threads = inv.threads;
  const MultistartReport rep = multistart(data, mc);

  const double floor = cfg.rank == 1 ? rank_one_floor_2x2(data) : 0.0;
  constexpr double kZeroTol = 1e-8;
  constexpr double kFloorTol = 1e-6;
  bool pass = true;
  double min_loss = std::numeric_limits<double>::infinity();
  const fs::path dir = prepare_out_dir(cfg);
  CsvWriter csv(dir / "toy_runs.csv", {"run", "seed", "status", "epochs", "empirical_risk",
                                       "regularized_risk", "grad_norm", "min_eig", "verdict"});
  for (const auto& run : rep.runs) {
    const bool diverged = run.status == TrainStatus::Diverged;
    if (!diverged) min_loss = std::min(min_loss, run.empirical_risk);
    if (check == "zero") pass = pass && !diverged && run.empirical_risk < kZeroTol;
    if (check == "floor") pass = pass && !diverged && run.empirical_risk >= floor - kFloorTol;
    csv.row({std::to_string(run.index), std::to_string(run.seed), to_string(run.status),
             std::to_string(run.epochs_run), num(run.empirical_risk), num(run.regularized_risk),
             run.certificate ? num(run.certificate->grad_norm) : "",
             run.certificate ? num(run.certificate->min_eig) : "",
             run.certificate ? to_string(run.certificate->verdict) : ""});
  }
  Json res;
  res["which"] = which;
  res["check"] = check;
  res["rank"] = cfg.rank;
  res["rank_one_floor"] = floor;
  res["min_empirical_risk"] = min_loss;
  res["spread"] = rep.spread;
  res["global_value"] = rep.global_value;
  res["converged"] = rep.converged;
  res["diverged"] = rep.diverged;
  Json finals = Json::array();
  for (const auto& run : rep.runs) finals.push_back(run.empirical_risk);
  res["final_empirical_risks"] = finals;
  std::cout << "toy " << which << " rank " << cfg.rank << ": min loss " << min_loss
            << ", rank-1 floor " << floor << ", check " << check << "\n";
  return finish(inv, res, pass);
}

int cmd_train_lora(const Invocation& inv) {
  const ExperimentConfig& cfg = inv.config;
  const LinearizedDataset data = load_task(cfg);
  TrainConfig tc = cfg.train_config();
  if (tc.batch_size >= data.size()) tc.batch_size = 0;
  const TrainTrace trace = train(data, tc);
  const fs::path dir = prepare_out_dir(cfg);
  write_trace_csv(dir / "train-lora.csv", trace);

  const Matrix delta = trace.factors.product();
  Json res;
  res["dataset"] = dataset_json(data);
  res["status"] = to_string(trace.status);
  res["message"] = trace.message;
  res["epochs_run"] = trace.epochs_run;
  res["factored_risk"] = factored_risk(trace.factors, data, cfg.lambda, trace.perturbation);
  res["regularized_risk"] = regularized_risk(delta, data, cfg.lambda);
  res["empirical_risk"] = empirical_risk(delta, data);
  res["grad_norm"] = grad_factored(trace.factors, data, cfg.lambda, trace.perturbation).norm();
  res["perturbation_norm"] = trace.perturbation.matrix().norm();
  res["rank_q"] = rank_of_factors(trace.factors, cfg.rank_tol);
  const long side = static_cast<long>(data.shape().rows() + data.shape().cols()) * cfg.rank;
  if (side <= 1024 && trace.status != TrainStatus::Diverged) {
    res["certificate"] = certificate_json(
        sosp_certificate(trace.factors, data, cfg.lambda, trace.perturbation, cfg.tolerances()));
  }
  return finish(inv, res, trace.status != TrainStatus::Diverged);
}

int cmd_train_prox(const Invocation& inv) {
  const ExperimentConfig& cfg = inv.config;
  const LinearizedDataset data = load_task(cfg);
  ProxConfig pc;
  pc.lambda = cfg.lambda;
  pc.tolerance = inv.extra_real("prox-tol");
  pc.max_iterations = static_cast<int>(inv.extra_int("max-iter"));
  pc.validate();
  const ProxResult pr = prox_gradient(data, pc);
  const fs::path dir = prepare_out_dir(cfg);
  CsvWriter csv(dir / "train-prox.csv", {"iteration", "objective"});
  for (std::size_t i = 0; i < pr.objective.size(); ++i) csv.row({std::to_string(i), num(pr.objective[i])});
  Json res;
  res["dataset"] = dataset_json(data);
  res["objective"] = pr.objective.back();
  res["empirical_risk"] = empirical_risk(pr.delta, data);
  res["nuclear_norm"] = nuclear_norm(pr.delta);
  res["rank"] = numerical_rank(pr.delta, cfg.rank_tol);
  res["iterations"] = pr.iterations;
  res["residual"] = pr.residual;
  res["converged"] = pr.converged;
  return finish(inv, res, pr.converged);
}

int cmd_reduce_rank(const Invocation& inv) {
  const ExperimentConfig& cfg = inv.config;
  const LinearizedDataset data = load_task(cfg);
  ProxConfig pc;
  pc.lambda = cfg.lambda;
  pc.tolerance = inv.extra_real("prox-tol");
  pc.max_iterations = static_cast<int>(inv.extra_int("max-iter"));
  const ProxResult pr = prox_gradient(data, pc);
  const double prox_value = regularized_risk(pr.delta, data, cfg.lambda);
  const long kn = static_cast<long>(data.size()) * data.output_dim();

  Json res;
  res["dataset"] = dataset_json(data);
  res["prox_value"] = prox_value;
  res["prox_converged"] = pr.converged;
  res["prox_residual"] = pr.residual;
  res["kn"] = kn;
  RankReduceConfig rc;
  rc.rank_tol = cfg.rank_tol;
  try {
    const RankReduceResult rr = rank_reduce(pr.delta, data, cfg.lambda, rc);
    const double drift = std::abs(rr.objective_after - prox_value);
    const long r = rr.output_rank;
    const bool pass = pr.converged && r * (r + 1) / 2 <= kn && drift <= 1e-6;
    const fs::path dir = prepare_out_dir(cfg);
    CsvWriter csv(dir / "reduce-rank.csv", {"step", "rank"});
    for (std::size_t i = 0; i < rr.rank_history.size(); ++i)
      csv.row({std::to_string(i), std::to_string(rr.rank_history[i])});
    res["input_rank"] = rr.input_rank;
    res["output_rank"] = rr.output_rank;
    res["steps"] = rr.steps;
    res["objective_after"] = rr.objective_after;
    res["objective_drift"] = drift;
    res["max_trace_ratio"] = rr.max_trace_ratio;
    res["rank_bound_holds"] = r * (r + 1) / 2 <= kn;
    return finish(inv, res, pass);
  } catch (const OptimalityError& e) {
    res["error"] = e.what();
    return finish(inv, res, false);
  }
}

int cmd_landscape(const Invocation& inv) {
  const ExperimentConfig& cfg = inv.config;
  const LinearizedDataset data = load_task(cfg);
  MultistartConfig mc;
  mc.train = cfg.train_config();
  const int threshold = rank_threshold(data.output_dim(), static_cast<long>(data.size()));
  if (inv.extra_flag("threshold-rank")) mc.train.rank = threshold;
  if (mc.train.batch_size >= data.size()) mc.train.batch_size = 0;
  mc.runs = std::max(2, cfg.runs);
  mc.tol = cfg.tolerances();
  mc.slack = inv.extra_real("slack");
  mc.threads = inv.threads;
  const MultistartReport rep = multistart(data, mc);

  const bool expect_deficient = mc.train.rank >= threshold && mc.train.perturb_eps > 0.0;
  int sosp = 0, deficient = 0;
  bool pass = rep.diverged == 0;
  const fs::path dir = prepare_out_dir(cfg);
  CsvWriter csv(dir / "landscape_runs.csv",
                {"run", "seed", "status", "epochs", "factored_risk", "regularized_risk", "grad_norm",
                 "min_eig", "rank_q", "verdict", "within_bound"});
  Json runs = Json::array();
  for (const auto& run : rep.runs) {
    const auto& cert = run.certificate;
    if (cert && cert->is_sosp()) ++sosp;
    if (cert && cert->rank_deficient()) ++deficient;
    if (run.status == TrainStatus::Converged) {
      pass = pass && cert && cert->is_sosp() && run.within_bound;
      if (expect_deficient) pass = pass && cert && cert->rank_deficient();
    }
    csv.row({std::to_string(run.index), std::to_string(run.seed), to_string(run.status),
             std::to_string(run.epochs_run), num(run.factored_risk), num(run.regularized_risk),
             cert ? num(cert->grad_norm) : "", cert ? num(cert->min_eig) : "",
             cert ? std::to_string(cert->rank_q) : "", cert ? to_string(cert->verdict) : "",
             run.within_bound ? "1" : "0"});
    Json r;
    r["seed"] = run.seed;
    r["status"] = to_string(run.status);
    r["regularized_risk"] = run.regularized_risk;
    if (cert) r["certificate"] = certificate_json(*cert);
    runs.push_back(r);
  }
  Json res;
  res["dataset"] = dataset_json(data);
  res["rank"] = mc.train.rank;
  res["rank_threshold"] = threshold;
  res["global_value"] = rep.global_value;
  res["global_nuclear"] = rep.global_nuclear;
  res["bound"] = rep.bound;
  res["spread"] = rep.spread;
  res["converged"] = rep.converged;
  res["diverged"] = rep.diverged;
  res["sosp"] = sosp;
  res["rank_deficient"] = deficient;
  res["rank_deficiency_expected"] = expect_deficient;
  res["rank_deficiency_verdict"] =
      deficient == static_cast<int>(rep.runs.size()) ? "all SOSPs rank deficient"
                                                     : "some runs full rank";
  res["runs"] = runs;
  std::cout << "landscape: " << sosp << "/" << rep.runs.size() << " SOSP, " << deficient
            << " rank deficient (r = " << mc.train.rank << ", threshold " << threshold << ")\n";
  return finish(inv, res, pass);
}

int cmd_gen_bound(const Invocation& inv) {
  const ExperimentConfig& cfg = inv.config;
  const SyntheticTaskConfig tc = synthetic_from(inv);
  BoundSpec spec;
  spec.output_dim = tc.output_dim;
  spec.feature_bound = tc.feature_bound;
  spec.num_samples = static_cast<std::size_t>(inv.extra_int("n"));
  spec.eta = cfg.eta;
  spec.slack = cfg.slack_eps;
  spec.true_nuclear = tc.true_nuclear;
  spec.lipschitz = !inv.extra("lipschitz").empty() ? inv.extra_real("lipschitz")
                   : tc.loss == LossKind::CrossEntropy
                       ? kCrossEntropyLipschitz
                       : squared_error_lipschitz(tc.output_dim, tc.feature_bound,
                                                 (2.0 + spec.slack) * tc.true_nuclear,
                                                 tc.true_nuclear, tc.label_noise);
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const double lambda = lambda_from_bound(spec);
  const double bound = excess_risk_bound(spec);
  Json res;
  res["lipschitz"] = spec.lipschitz;
  res["lambda"] = lambda;
  res["excess_risk_bound"] = bound;
  std::cout << "lambda = " << num(lambda) << "\nexcess risk bound = " << num(bound) << "\n";
  const double lambda_nuclear = inv.extra_real("lambda-nuclear");
  if (lambda_nuclear >= 0.0) {
    const double budget = perturbation_budget(spec, lambda, lambda_nuclear);
    res["perturbation_budget"] = std::isinf(budget) ? Json("inf") : Json(budget);
    std::cout << "perturbation budget = " << num(budget) << "\n";
  }

  bool pass = true;
  const long long trials = inv.extra_int("trials");
  if (trials > 0) {
    const SyntheticTask task(tc);
    MonteCarloConfig mc;
    mc.trials = static_cast<int>(trials);
    mc.eta = cfg.eta;
    mc.slack = cfg.slack_eps;
    mc.seed = cfg.seed;
    mc.threads = inv.threads;
    mc.sample_sizes.clear();
    std::stringstream ss(inv.extra("sizes"));
    for (std::string tok; std::getline(ss, tok, ',');) {
      try {
        mc.sample_sizes.push_back(static_cast<std::size_t>(std::stoull(tok)));
      } catch (const std::exception&) {
        throw ConfigError("--sizes must be a comma-separated list of sample sizes");
      }
    }
    mc.train = cfg.train_config();
    mc.train.rank = 0;
    mc.train.batch_size = 0;
    mc.perturb_cap = cfg.perturb_eps;
    try {
      mc.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    const MonteCarloReport rep = monte_carlo_gap(task, mc);
    const fs::path dir = prepare_out_dir(cfg);
    CsvWriter csv(dir / "gen-bound_trials.csv",
                  {"num_samples", "trial", "seed", "lambda", "bound", "lambda_nuclear",
                   "perturb_radius", "rank", "status", "excess", "violated"});
    for (const auto& t : rep.trials)
      csv.row({std::to_string(t.num_samples), std::to_string(t.trial), std::to_string(t.seed),
               num(t.lambda), num(t.bound), num(t.lambda_nuclear), num(t.perturb_radius),
               std::to_string(t.rank), to_string(t.status), num(t.excess), t.violated ? "1" : "0"});
    Json sizes = Json::array();
    for (const auto& s : rep.sizes) {
      Json js;
      js["num_samples"] = s.num_samples;
      js["lambda"] = s.lambda;
      js["bound"] = s.bound;
      js["used"] = s.used;
      js["excluded"] = s.excluded;
      js["violations"] = s.violations;
      js["violation_rate"] = s.violation_rate;
      js["zero_solutions"] = s.zero_solutions;
      js["mean_excess"] = s.mean_excess;
      js["std_error"] = s.std_error;
      sizes.push_back(js);
    }
    const double allowed = cfg.eta + 3.0 * std::sqrt(cfg.eta * (1.0 - cfg.eta) / trials);
    pass = rep.max_violation_rate <= allowed;
    res["monte_carlo"] = {{"sizes", sizes},
                          {"true_risk", rep.true_risk},
                          {"zero_excess", rep.zero_excess},
                          {"slope", rep.slope},
                          {"r_squared", rep.r_squared},
                          {"max_violation_rate", rep.max_violation_rate},
                          {"allowed_violation_rate", allowed}};
    std::cout << "max violation rate = " << num(rep.max_violation_rate) << " (allowed "
              << num(allowed) << "), log-log slope = " << num(rep.slope) << "\n";
  }
  return finish(inv, res, pass);
}

int cmd_report(const Invocation& inv) {
  const fs::path dir(inv.config.out_dir);
  if (!fs::is_directory(dir)) throw ConfigError("report: no such directory " + dir.string());
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".json" && e.path().stem() != "report") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  bool pass = true;
  Json entries = Json::array();
  CsvWriter csv(dir / "report.csv", {"file", "command", "seed", "pass"});
  for (const auto& f : files) {
    Json j;
    try {
      j = read_json(f);
    } catch (const std::exception&) {
      continue;
    }
    if (!j.contains("command") || !j.contains("pass")) continue;
    const bool ok = j["pass"].get<bool>();
    pass = pass && ok;
    csv.row({f.filename().string(), j["command"].get<std::string>(),
             std::to_string(j.value("seed", 0ULL)), ok ? "1" : "0"});
    std::cout << (ok ? "PASS  " : "FAIL  ") << j["command"].get<std::string>() << "  "
              << f.filename().string() << "\n";
    entries.push_back({{"file", f.filename().string()}, {"command", j["command"]}, {"pass", ok}});
  }
  Json res;
  res["summaries"] = entries;
  return finish(inv, res, pass);
}

const std::vector<ExtraOption> kSyntheticOptions{
    {"loss", "ce", "synthetic loss: ce or se"},
    {"k", "2", "synthetic output dimension K"},
    {"rows", "3", "synthetic block rows m"},
    {"cols", "3", "synthetic block cols n"},
    {"feature-bound", "1", "feature norm R"},
    {"true-nuclear", "4", "nuclear norm of the planted update"},
    {"true-rank", "1", "rank of the planted update"},
    {"label-noise", "0.1", "label noise std (se)"},
    {"base-scale", "0", "std of the base outputs f0"},
};

std::vector<ExtraOption> with_synthetic(std::vector<ExtraOption> extra) {
  extra.insert(extra.end(), kSyntheticOptions.begin(), kSyntheticOptions.end());
  return extra;
}

}  // namespace

const std::string& Invocation::extra(const std::string& name) const {
  const auto it = extras.find(name);
  if (it == extras.end()) throw std::logic_error("unknown option " + name);
  return it->second;
}

double Invocation::extra_real(const std::string& name) const {
  try {
    std::size_t pos = 0;
    const double x = std::stod(extra(name), &pos);
    if (pos != extra(name).size() || !std::isfinite(x)) throw std::invalid_argument(name);
    return x;
  } catch (const std::logic_error&) {
    throw ConfigError("--" + name + " expects a real, got '" + extra(name) + "'");
  }
}

long long Invocation::extra_int(const std::string& name) const {
  try {
    std::size_t pos = 0;
    const long long x = std::stoll(extra(name), &pos);
    if (pos != extra(name).size()) throw std::invalid_argument(name);
    return x;
  } catch (const std::logic_error&) {
    throw ConfigError("--" + name + " expects an integer, got '" + extra(name) + "'");
  }
}

bool Invocation::extra_flag(const std::string& name) const {
  const std::string& v = extra(name);
  if (v == "1" || v == "true") return true;
  if (v == "0" || v == "false") return false;
  throw ConfigError("--" + name + " expects true or false, got '" + v + "'");
}

const std::vector<CommandSpec>& commands() {
  static const std::vector<CommandSpec> specs{
      {"gen-data",
       "write an LNTK1 dataset (a toy, a re-encoded file, or a synthetic draw)",
       {},
       with_synthetic({{"synthetic", "false", "draw a synthetic dataset instead of --task"},
                       {"n", "32", "number of synthetic samples"},
                       {"output", "", "output file (default <out_dir>/data.lntk)"}}),
       cmd_gen_data},
      {"toy",
       "multistart training on a 2x2 toy problem with a zero-loss or rank-1-floor check",
       {{"lambda", "0"},
        {"step_size", "0.1"},
        {"epochs", "20000"},
        {"batch_size", "0"},
        {"init", "gaussian"},
        {"sigma_init", "0.5"},
        {"tol_grad", "1e-9"}},
       {{"which", "", "toy instance a, b or c (overrides --task)"},
        {"check", "zero", "zero: every run reaches loss < 1e-8; floor: every run stays above the rank-1 floor"}},
       cmd_toy},
      {"train-lora", "train LoRA factors by (S)GD and write the epoch trace", {}, {}, cmd_train_lora},
      {"train-prox",
       "proximal gradient on the nuclear-norm regularized risk",
       {},
       {{"prox-tol", "1e-10", "stopping tolerance"}, {"max-iter", "200000", "iteration cap"}},
       cmd_train_prox},
      {"reduce-rank",
       "prox solve followed by constructive rank reduction",
       {},
       {{"prox-tol", "1e-12", "prox stopping tolerance"}, {"max-iter", "200000", "prox iteration cap"}},
       cmd_reduce_rank},
      {"landscape",
       "multistart SOSP certification against the convex reference",
       {{"lambda", "0.1"},
        {"step_size", "1"},
        {"epochs", "50000"},
        {"batch_size", "0"},
        {"init", "gaussian"},
        {"sigma_init", "0.1"},
        {"perturb_eps", "1e-3"},
        {"tol_grad", "1e-10"}},
       {{"threshold-rank", "false", "use rank_threshold(K, N) as the LoRA rank"},
        {"slack", "1e-5", "additive tolerance on the optimality bound"}},
       cmd_landscape},
      {"gen-bound",
       "regularization weight, excess-risk bound and perturbation budget; optional Monte-Carlo check",
       {{"step_size", "1"}, {"epochs", "5000"}, {"init", "gaussian"}, {"sigma_init", "0.1"}, {"perturb_eps", "1e-3"}},
       with_synthetic({{"n", "100", "number of training samples N"},
                       {"lipschitz", "", "loss Lipschitz constant (default: sqrt 2 for ce, derived for se)"},
                       {"lambda-nuclear", "-1", "nuclear norm of the regularized solution (for the budget)"},
                       {"trials", "0", "Monte-Carlo trials per sample size (0 skips)"},
                       {"sizes", "25,100,400", "comma-separated sample sizes for the Monte-Carlo run"}}),
       cmd_gen_bound},
      {"report", "collect the JSON summaries in out_dir into report.csv", {}, {}, cmd_report},
  };
  return specs;
}

}  // namespace lorantk::cli
