// Command-line front end: fit, cv, path, bench, roc, simulate.
// Every command echoes its resolved configuration into the output directory
// before computing, and reruns with the same inputs and seed are
// byte-identical. Exit codes: 0 ok, 1 input error, 2 non-convergence.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <omp.h>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "irw/csv.hpp"
#include "irw/metrics.hpp"
#include "irw/objective.hpp"
#include "irw/pipeline.hpp"
#include "irw/rng.hpp"
#include "irw/scenario_io.hpp"
#include "irw/simulation.hpp"
#include "irw/tuning.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNoConvergence = 2;

void apply_thread_cap() {
  if (const char* env = std::getenv("IRW_THREADS")) {
    const int k = std::atoi(env);
    if (k >= 1) omp_set_num_threads(k);
  }
}

fs::path prepare_out_dir(const std::string& out) {
  fs::path dir(out);
  fs::create_directories(dir);
  return dir;
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << j.dump(2) << "\n";
}

struct CommonOpts {
  std::string input;
  std::string out = "irw-out";
  std::string loss = "huber";
  std::string penalty = "scad";
  double penalty_a = 0.0;  // 0: per-penalty default
  double tau = 0.0;        // 0: derive from MAD of lasso residuals
  double lambda = 0.0;
  int stages = 0;          // 0: heuristic stage count
  std::uint64_t seed = 1;
  int cv_folds = 3;
  int n_lambda = 30;
  double lambda_ratio = 0.01;
};

void add_model_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--loss", o.loss,
                  "loss family: huber, pseudo-huber-1, pseudo-huber-2, smoothed-huber-1, "
                  "smoothed-huber-2");
  cmd->add_option("--penalty", o.penalty, "penalty: l1, scad, mcp, capped-l1");
  cmd->add_option("--penalty-a", o.penalty_a, "penalty shape parameter a");
  cmd->add_option("--tau", o.tau, "robustification parameter (default: MAD rule)");
  cmd->add_option("--stages", o.stages, "pipeline stages (default: heuristic)");
  cmd->add_option("--seed", o.seed, "random seed");
  cmd->add_option("--out", o.out, "output directory");
}

void add_tuning_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--cv-folds", o.cv_folds, "cross-validation folds");
  cmd->add_option("--n-lambda", o.n_lambda, "lambda path length");
  cmd->add_option("--lambda-ratio", o.lambda_ratio, "lambda_min / lambda_max");
}

int resolve_stages(const CommonOpts& o, Eigen::Index d) {
  if (o.stages > 0) return o.stages;
  const int s_hint = int(std::ceil(std::sqrt(double(d))));
  return irw::default_stage_count(s_hint, int(d));
}

// MAD-of-lasso-residual tau rule used whenever --tau is omitted.
double resolve_tau(const irw::Dataset& data, const CommonOpts& o, double lambda) {
  const double tau_init = 1e6 * std::max(irw::mad_sigma(data.y), 1e-12);
  irw::PipelineConfig lasso;
  lasso.loss = irw::RobustLoss(irw::LossKind::Huber, tau_init);
  lasso.penalty = irw::Penalty(irw::PenaltyKind::L1, lambda);
  lasso.stages = 1;
  const Eigen::VectorXd beta = irw::irw_fit(data, lasso).beta;
  const double sigma = std::max(irw::mad_sigma(data.y - data.X * beta), 1e-12);
  return sigma * std::sqrt(double(data.n()) / std::log(double(data.n()) * double(data.d())));
}

json common_config_json(const CommonOpts& o) {
  json j;
  j["loss"] = o.loss;
  j["penalty"] = o.penalty;
  j["penalty_a"] = o.penalty_a;
  j["tau"] = o.tau;
  j["lambda"] = o.lambda;
  j["stages"] = o.stages;
  j["seed"] = o.seed;
  j["cv_folds"] = o.cv_folds;
  j["n_lambda"] = o.n_lambda;
  j["lambda_ratio"] = o.lambda_ratio;
  return j;
}

int cmd_fit(const CommonOpts& o) {
  const irw::LabeledDataset in = irw::read_dataset_csv(o.input);
  const fs::path dir = prepare_out_dir(o.out);

  irw::PipelineConfig cfg;
  cfg.penalty = irw::Penalty(irw::penalty_kind_from_string(o.penalty), o.lambda, o.penalty_a);
  const double tau = o.tau > 0.0 ? o.tau : resolve_tau(in.data, o, o.lambda);
  cfg.loss = irw::RobustLoss(irw::loss_kind_from_string(o.loss), tau);
  cfg.stages = resolve_stages(o, in.data.d());

  json config = common_config_json(o);
  config["command"] = "fit";
  config["input"] = o.input;
  config["tau_resolved"] = tau;
  config["stages_resolved"] = cfg.stages;
  write_json(dir / "config.json", config);

  const irw::FitResult fit = irw::irw_fit(in.data, cfg);

  std::ofstream coef(dir / "coefficients.csv");
  coef << "feature,coefficient\n";
  for (Eigen::Index j = 0; j < fit.beta.size(); ++j)
    coef << in.feature_names[std::size_t(j)] << "," << irw::format_double(fit.beta[j]) << "\n";

  json trace;
  trace["converged"] = fit.converged;
  trace["active_set"] = fit.active_set;
  trace["eps_contraction"] = fit.eps_contraction;
  trace["eps_tightening"] = fit.eps_tightening;
  trace["stages"] = json::array();
  for (const auto& st : fit.stages) {
    json s;
    s["omega"] = st.omega;
    s["inner_iterations"] = st.inner_iterations;
    s["converged"] = st.converged;
    s["objective_trace"] = st.objective_trace;
    trace["stages"].push_back(std::move(s));
  }
  write_json(dir / "fit.json", trace);
  return fit.converged ? kExitOk : kExitNoConvergence;
}

int cmd_cv(const CommonOpts& o) {
  const irw::LabeledDataset in = irw::read_dataset_csv(o.input);
  const fs::path dir = prepare_out_dir(o.out);

  json config = common_config_json(o);
  config["command"] = "cv";
  config["input"] = o.input;
  write_json(dir / "config.json", config);

  const double tau_init = 1e6 * std::max(irw::mad_sigma(in.data.y), 1e-12);
  const irw::RobustLoss path_loss(irw::LossKind::Huber, tau_init);
  irw::TuningGrid grid;
  grid.lambdas = irw::lambda_path(in.data, path_loss, o.n_lambda, o.lambda_ratio);
  grid.cv_folds = o.cv_folds;
  if (o.tau > 0.0) {
    grid.taus = {o.tau};
  } else {
    const double tau_mid = resolve_tau(in.data, o, grid.lambdas[std::size_t(o.n_lambda / 2)]);
    const double sigma = tau_mid / std::sqrt(double(in.data.n()) /
                                             std::log(double(in.data.n()) * double(in.data.d())));
    grid.taus = irw::tau_grid(sigma, in.data.n(), in.data.d());
  }

  irw::PipelineConfig cfg;
  cfg.loss = irw::RobustLoss(irw::loss_kind_from_string(o.loss), grid.taus.front());
  cfg.penalty =
      irw::Penalty(irw::penalty_kind_from_string(o.penalty), grid.lambdas.front(), o.penalty_a);
  cfg.stages = resolve_stages(o, in.data.d());

  const irw::CVResult cv = irw::cross_validate(in.data, cfg, grid, o.seed);

  json chosen;
  chosen["lambda"] = cv.lambda;
  chosen["tau"] = cv.tau;
  write_json(dir / "chosen.json", chosen);

  std::ofstream gridcsv(dir / "cv_grid.csv");
  gridcsv << "lambda,tau,mean_loss";
  for (int f = 0; f < grid.cv_folds; ++f) gridcsv << ",fold" << f << "_loss";
  gridcsv << "\n";
  for (std::size_t l = 0; l < grid.lambdas.size(); ++l)
    for (std::size_t t = 0; t < grid.taus.size(); ++t) {
      gridcsv << irw::format_double(grid.lambdas[l]) << "," << irw::format_double(grid.taus[t])
              << "," << irw::format_double(cv.mean_loss(int(l), int(t)));
      for (int f = 0; f < grid.cv_folds; ++f)
        gridcsv << "," << irw::format_double(cv.fold_loss[std::size_t(f)](int(l), int(t)));
      gridcsv << "\n";
    }
  return kExitOk;
}

int cmd_path(const CommonOpts& o) {
  const irw::LabeledDataset in = irw::read_dataset_csv(o.input);
  const fs::path dir = prepare_out_dir(o.out);

  json config = common_config_json(o);
  config["command"] = "path";
  config["input"] = o.input;
  const double tau = o.tau > 0.0 ? o.tau : 1e6 * std::max(irw::mad_sigma(in.data.y), 1e-12);
  config["tau_resolved"] = tau;
  write_json(dir / "config.json", config);

  const irw::RobustLoss loss(irw::loss_kind_from_string(o.loss), tau);
  const std::vector<double> path =
      irw::lambda_path(in.data, loss, o.n_lambda, o.lambda_ratio);
  std::ofstream out(dir / "path.csv");
  out << "index,lambda\n";
  for (std::size_t i = 0; i < path.size(); ++i)
    out << i << "," << irw::format_double(path[i]) << "\n";
  return kExitOk;
}

std::vector<irw::Method> parse_methods(const std::string& csv) {
  std::vector<irw::Method> methods;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) methods.push_back(irw::method_from_string(tok));
  }
  if (methods.empty()) throw std::invalid_argument("no methods given");
  return methods;
}

int cmd_bench(const CommonOpts& o, const std::string& scenario_path, const std::string& methods_csv,
              int replications) {
  const std::vector<irw::ScenarioSpec> scenarios = irw::load_scenarios(scenario_path);
  const std::vector<irw::Method> methods = parse_methods(methods_csv);
  const fs::path dir = prepare_out_dir(o.out);

  irw::BenchmarkOptions opts;
  opts.replications = replications;
  opts.n_lambda = o.n_lambda;
  opts.lambda_ratio = o.lambda_ratio;
  opts.cv_folds = o.cv_folds;

  json config = common_config_json(o);
  config["command"] = "bench";
  config["scenario_file"] = scenario_path;
  config["methods"] = methods_csv;
  config["replications"] = replications;
  config["scenarios"] = json::array();
  for (const auto& s : scenarios) config["scenarios"].push_back(irw::scenario_to_json(s));
  write_json(dir / "config.json", config);

  std::vector<std::string> failures;
  const std::vector<irw::BenchmarkRow> rows =
      irw::run_benchmark(scenarios, methods, opts, o.seed, &failures);

  std::ofstream out(dir / "benchmark.csv");
  out << "model,error_dist,method,TP_mean,TP_sd,FP_mean,FP_sd,RE1_mean,RE1_sd,RE2_mean,RE2_sd\n";
  for (const auto& r : rows) {
    out << r.model << "," << r.error_dist << "," << r.method << ","
        << irw::format_double(r.tp_mean) << "," << irw::format_double(r.tp_sd) << ","
        << irw::format_double(r.fp_mean) << "," << irw::format_double(r.fp_sd) << ","
        << irw::format_double(r.re1_mean) << ","
        << (r.re_sd_defined ? irw::format_double(r.re1_sd) : "") << ","
        << irw::format_double(r.re2_mean) << ","
        << (r.re_sd_defined ? irw::format_double(r.re2_sd) : "") << "\n";
  }
  if (!failures.empty()) {
    std::ofstream log(dir / "failures.log");
    for (const auto& line : failures) log << line << "\n";
  }
  return kExitOk;
}

int cmd_roc(const CommonOpts& o, const std::string& scenario_path, const std::string& methods_csv,
            int replications) {
  const std::vector<irw::ScenarioSpec> scenarios = irw::load_scenarios(scenario_path);
  const std::vector<irw::Method> methods = parse_methods(methods_csv);
  const fs::path dir = prepare_out_dir(o.out);

  irw::RocOptions opts;
  opts.replications = replications;
  opts.n_lambda = o.n_lambda;
  opts.lambda_ratio = o.lambda_ratio;

  json config = common_config_json(o);
  config["command"] = "roc";
  config["scenario_file"] = scenario_path;
  config["methods"] = methods_csv;
  config["replications"] = replications;
  config["scenarios"] = json::array();
  for (const auto& s : scenarios) config["scenarios"].push_back(irw::scenario_to_json(s));
  write_json(dir / "config.json", config);

  std::ofstream roc(dir / "roc.csv");
  roc << "method,lambda,fpr,tpr\n";
  std::ofstream aucs(dir / "auc.csv");
  aucs << "method,auc\n";
  for (std::size_t si = 0; si < scenarios.size(); ++si) {
    const auto curves = irw::run_roc(scenarios[si], methods, opts, irw::derived_seed(o.seed, si));
    for (const auto& curve : curves) {
      for (const auto& pt : curve.points)
        roc << curve.method << "," << irw::format_double(pt.lambda) << ","
            << irw::format_double(pt.fpr) << "," << irw::format_double(pt.tpr) << "\n";
      aucs << curve.method << "," << irw::format_double(curve.auc) << "\n";
    }
  }
  return kExitOk;
}

int cmd_simulate(const CommonOpts& o, const std::string& scenario_path) {
  const std::vector<irw::ScenarioSpec> scenarios = irw::load_scenarios(scenario_path);
  const fs::path dir = prepare_out_dir(o.out);

  json config = common_config_json(o);
  config["command"] = "simulate";
  config["scenario_file"] = scenario_path;
  config["scenarios"] = json::array();
  for (const auto& s : scenarios) config["scenarios"].push_back(irw::scenario_to_json(s));
  write_json(dir / "config.json", config);

  for (std::size_t si = 0; si < scenarios.size(); ++si) {
    irw::ScenarioSpec spec = scenarios[si];
    if (spec.seed == 0) spec.seed = irw::derived_seed(o.seed, si);
    const irw::Dataset data = irw::generate(spec);
    const std::string name =
        scenarios.size() == 1 ? "data.csv" : "data_" + std::to_string(si) + ".csv";
    irw::write_dataset_csv((dir / name).string(), data);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_cap();

  CLI::App app{"Iteratively reweighted l1-penalized robust regression"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string scenario_path;
  std::string methods_csv = "lasso,scad,huber-scad,mcp,huber-mcp";
  int replications = 50;

  CLI::App* fit = app.add_subcommand("fit", "fit one penalized model from a CSV file");
  fit->add_option("--input", o.input, "input CSV (first column y)")->required();
  fit->add_option("--lambda", o.lambda, "regularization level")->required();
  add_model_flags(fit, o);

  CLI::App* cv = app.add_subcommand("cv", "cross-validate (lambda, tau) on a CSV file");
  cv->add_option("--input", o.input, "input CSV (first column y)")->required();
  add_model_flags(cv, o);
  add_tuning_flags(cv, o);

  CLI::App* path = app.add_subcommand("path", "emit the lambda path for a CSV file");
  path->add_option("--input", o.input, "input CSV (first column y)")->required();
  add_model_flags(path, o);
  add_tuning_flags(path, o);

  CLI::App* bench = app.add_subcommand("bench", "replicated selection benchmark on scenarios");
  bench->add_option("--scenario", scenario_path, "scenario JSON file")->required();
  bench->add_option("--methods", methods_csv, "comma list: lasso,scad,huber-scad,mcp,huber-mcp");
  bench->add_option("--replications", replications, "Monte Carlo replications");
  add_model_flags(bench, o);
  add_tuning_flags(bench, o);

  CLI::App* roc = app.add_subcommand("roc", "ROC sweep over the lambda path on a scenario");
  roc->add_option("--scenario", scenario_path, "scenario JSON file")->required();
  roc->add_option("--methods", methods_csv, "comma list of methods");
  roc->add_option("--replications", replications, "Monte Carlo replications");
  add_model_flags(roc, o);
  add_tuning_flags(roc, o);

  CLI::App* sim = app.add_subcommand("simulate", "write a synthetic dataset for a scenario");
  sim->add_option("--scenario", scenario_path, "scenario JSON file")->required();
  add_model_flags(sim, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInput;
  }

  try {
    if (fit->parsed()) return cmd_fit(o);
    if (cv->parsed()) return cmd_cv(o);
    if (path->parsed()) return cmd_path(o);
    if (bench->parsed()) return cmd_bench(o, scenario_path, methods_csv, replications);
    if (roc->parsed()) return cmd_roc(o, scenario_path, methods_csv, replications);
    if (sim->parsed()) return cmd_simulate(o, scenario_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
