#include "irw/simulation.hpp"

#include <cmath>
#include <stdexcept>

#include "irw/metrics.hpp"
#include "irw/objective.hpp"
#include "irw/pipeline.hpp"
#include "irw/rng.hpp"
#include "irw/tuning.hpp"

namespace irw {

void ErrorDist::validate() const {
  std::visit(
      [](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, NormalDist>) {
          // sigma == 0 is allowed as the degenerate noiseless case
          if (!(d.sigma >= 0.0)) throw std::invalid_argument("normal: sigma must be nonnegative");
        } else if constexpr (std::is_same_v<T, SgtDist>) {
          if (!(d.sigma2 > 0.0)) throw std::invalid_argument("sgt: sigma2 must be positive");
          if (!(d.p_shape * d.q_shape > 2.0))
            throw std::invalid_argument("sgt: p * q must exceed 2");
        } else if constexpr (std::is_same_v<T, LogNormalDist>) {
          if (!(d.sigma_log > 0.0)) throw std::invalid_argument("lognormal: sigma must be positive");
        } else if constexpr (std::is_same_v<T, ParetoDist>) {
          if (!(d.x_m > 0.0)) throw std::invalid_argument("pareto: x_m must be positive");
          if (!(d.alpha > 2.0))
            throw std::invalid_argument("pareto: alpha must exceed 2 for a finite variance");
        }
      },
      dist);
}

double ErrorDist::population_mean() const {
  return std::visit(
      [](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, NormalDist>) return d.mu;
        else if constexpr (std::is_same_v<T, SgtDist>) return d.mu;
        else if constexpr (std::is_same_v<T, LogNormalDist>)
          return std::exp(d.mu_log + 0.5 * d.sigma_log * d.sigma_log);
        else
          return d.alpha * d.x_m / (d.alpha - 1.0);
      },
      dist);
}

std::string ErrorDist::name() const {
  return std::visit(
      [](const auto& d) -> std::string {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, NormalDist>) return "normal";
        else if constexpr (std::is_same_v<T, SgtDist>) return "sgt";
        else if constexpr (std::is_same_v<T, LogNormalDist>) return "lognormal";
        else return "pareto";
      },
      dist);
}

ErrorSampler::ErrorSampler(const ErrorDist& dist) : spec_(dist) {
  spec_.validate();
  if (const auto* s = std::get_if<SgtDist>(&spec_.dist))
    sgt_ = std::make_shared<SgtSampler>(s->mu, s->sigma2, s->skew, s->p_shape, s->q_shape);
  shift_ = spec_.centered ? spec_.population_mean() : 0.0;
}

double ErrorSampler::draw(std::mt19937_64& rng) const {
  double x = std::visit(
      [&](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, NormalDist>) {
          if (d.sigma == 0.0) return d.mu;
          std::normal_distribution<double> normal(d.mu, d.sigma);
          return normal(rng);
        } else if constexpr (std::is_same_v<T, SgtDist>) {
          return sgt_->sample(rng);
        } else if constexpr (std::is_same_v<T, LogNormalDist>) {
          std::lognormal_distribution<double> ln(d.mu_log, d.sigma_log);
          return ln(rng);
        } else {
          std::uniform_real_distribution<double> unif(0.0, 1.0);
          return d.x_m * std::pow(1.0 - unif(rng), -1.0 / d.alpha);
        }
      },
      spec_.dist);
  return x - shift_;
}

Eigen::VectorXd ErrorSampler::sample(Eigen::Index n, std::mt19937_64& rng) const {
  Eigen::VectorXd out(n);
  for (Eigen::Index i = 0; i < n; ++i) out[i] = draw(rng);
  return out;
}

const char* to_string(ModelKind model) {
  return model == ModelKind::Homoscedastic ? "homoscedastic" : "heteroscedastic";
}

ModelKind model_kind_from_string(const std::string& name) {
  if (name == "homoscedastic") return ModelKind::Homoscedastic;
  if (name == "heteroscedastic") return ModelKind::Heteroscedastic;
  throw std::invalid_argument("unknown model kind: " + name);
}

void ScenarioSpec::validate() const {
  if (n < 1 || d < 1) throw std::invalid_argument("ScenarioSpec: need n >= 1 and d >= 1");
  if (beta_star.size() != d) throw std::invalid_argument("ScenarioSpec: beta_star length != d");
  error.validate();
  if (model == ModelKind::Heteroscedastic && !(beta_star.squaredNorm() > 0.0))
    throw std::invalid_argument("ScenarioSpec: heteroscedastic model needs a nonzero beta_star");
}

std::vector<int> ScenarioSpec::support() const {
  std::vector<int> s;
  for (Eigen::Index j = 0; j < beta_star.size(); ++j)
    if (beta_star[j] != 0.0) s.push_back(int(j));
  return s;
}

double ScenarioSpec::hetero_scale() const { return std::sqrt(3.0) * beta_star.squaredNorm(); }

Eigen::MatrixXd sample_design(Eigen::Index n, Eigen::Index d, std::mt19937_64& rng) {
  if (n < 1 || d < 1) throw std::invalid_argument("sample_design: need n >= 1 and d >= 1");
  Eigen::MatrixXd X(n, d);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < n; ++i) X(i, j) = normal(rng);
  return X;
}

Eigen::VectorXd sample_errors(const ErrorDist& dist, Eigen::Index n, std::mt19937_64& rng) {
  return ErrorSampler(dist).sample(n, rng);
}

Dataset generate(const ScenarioSpec& spec) {
  spec.validate();
  std::mt19937_64 rng = make_rng(spec.seed);
  Dataset data;
  data.X = sample_design(spec.n, spec.d, rng);
  const Eigen::VectorXd signal = data.X * spec.beta_star;
  const Eigen::VectorXd eps = ErrorSampler(spec.error).sample(spec.n, rng);
  if (spec.model == ModelKind::Homoscedastic) {
    data.y = signal + eps;
  } else {
    const double c = spec.hetero_scale();
    data.y = signal + (signal.array().square() / c * eps.array()).matrix();
  }
  return data;
}

const char* display_name(Method m) {
  switch (m) {
    case Method::Lasso: return "Lasso";
    case Method::Scad: return "SCAD";
    case Method::HuberScad: return "Huber-SCAD";
    case Method::Mcp: return "MC+";
    case Method::HuberMcp: return "Huber-MC+";
  }
  return "?";
}

Method method_from_string(const std::string& token) {
  if (token == "lasso") return Method::Lasso;
  if (token == "scad") return Method::Scad;
  if (token == "huber-scad") return Method::HuberScad;
  if (token == "mcp") return Method::Mcp;
  if (token == "huber-mcp") return Method::HuberMcp;
  throw std::invalid_argument("unknown method: " + token);
}

bool method_is_robust(Method m) { return m == Method::HuberScad || m == Method::HuberMcp; }

PenaltyKind method_penalty(Method m) {
  switch (m) {
    case Method::Lasso: return PenaltyKind::L1;
    case Method::Scad:
    case Method::HuberScad: return PenaltyKind::Scad;
    case Method::Mcp:
    case Method::HuberMcp: return PenaltyKind::Mcp;
  }
  return PenaltyKind::L1;
}

namespace {

struct MethodOutcome {
  bool valid = false;
  double tp = 0, fp = 0, re1 = 0, re2 = 0;
};

double max_abs_residual(const Dataset& data, const Eigen::VectorXd& beta) {
  return (data.y - data.X * beta).cwiseAbs().maxCoeff();
}

// Fit one method on one dataset with CV-tuned parameters; shared by the
// benchmark and the per-replication Lasso reference.
Eigen::VectorXd fit_method_cv(const Dataset& data, Method m, const std::vector<double>& path,
                              const std::vector<double>& taus, int stages,
                              const BenchmarkOptions& opts, std::uint64_t cv_seed) {
  PipelineConfig cfg;
  cfg.loss = RobustLoss(LossKind::Huber, taus.front());
  cfg.penalty = Penalty(method_penalty(m), path.front());
  cfg.stages = stages;
  cfg.max_iters_contraction = opts.max_iters_contraction;
  cfg.max_iters_tightening = opts.max_iters_tightening;

  TuningGrid grid{path, taus, opts.cv_folds};
  const CVResult cv = cross_validate(data, cfg, grid, cv_seed);

  cfg.penalty = cfg.penalty.with_lambda(cv.lambda);
  cfg.loss.tau = cv.tau;
  return irw_fit(data, cfg).beta;
}

// Quadratic-regime tau for a baseline method: inflated until it clears every
// residual the fit produces.
Eigen::VectorXd fit_quadratic_cv(const Dataset& data, Method m, const std::vector<double>& path,
                                 double tau_quad, int stages, const BenchmarkOptions& opts,
                                 std::uint64_t cv_seed) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    Eigen::VectorXd beta = fit_method_cv(data, m, path, {tau_quad}, stages, opts, cv_seed);
    if (max_abs_residual(data, beta) <= tau_quad && data.y.cwiseAbs().maxCoeff() <= tau_quad)
      return beta;
    tau_quad *= 100.0;
  }
  throw std::runtime_error("quadratic baseline: tau inflation failed");
}

double robust_scale_floor(const Dataset& data) {
  const double mad_y = mad_sigma(data.y);
  if (mad_y > 0.0) return mad_y;
  const double spread = data.y.cwiseAbs().maxCoeff();
  return spread > 0.0 ? spread : 1.0;
}

struct ReplicationResult {
  bool failed = false;
  std::string message;
  std::vector<MethodOutcome> outcomes;  // indexed like the requested methods
};

ReplicationResult run_replication(const ScenarioSpec& scenario, const std::vector<Method>& methods,
                                  const BenchmarkOptions& opts, std::uint64_t data_seed,
                                  std::uint64_t cv_seed) {
  ReplicationResult rep;
  rep.outcomes.assign(methods.size(), {});

  ScenarioSpec local = scenario;
  local.seed = data_seed;
  const Dataset data = generate(local);
  const std::vector<int> support = scenario.support();

  // Lasso reference: quadratic loss, CV over lambda only.
  const double tau_init = opts.quad_tau_factor * robust_scale_floor(data);
  const std::vector<double> path =
      lambda_path(data, RobustLoss(LossKind::Huber, tau_init), opts.n_lambda, opts.lambda_ratio);
  const int stages = default_stage_count(std::max<int>(1, int(support.size())), int(data.d()));

  const Eigen::VectorXd beta_lasso = fit_quadratic_cv(data, Method::Lasso, path, tau_init, stages,
                                                      opts, derived_seed(cv_seed, 0));
  const double sigma_hat = std::max(mad_sigma(data.y - data.X * beta_lasso), 1e-12);

  for (std::size_t mi = 0; mi < methods.size(); ++mi) {
    const Method m = methods[mi];
    Eigen::VectorXd beta;
    if (m == Method::Lasso) {
      beta = beta_lasso;
    } else if (!method_is_robust(m)) {
      beta = fit_quadratic_cv(data, m, path, opts.quad_tau_factor * sigma_hat, stages, opts,
                              derived_seed(cv_seed, 1 + std::uint64_t(m)));
    } else {
      beta = fit_method_cv(data, m, path, tau_grid(sigma_hat, data.n(), data.d()), stages, opts,
                           derived_seed(cv_seed, 1 + std::uint64_t(m)));
    }

    MethodOutcome& out = rep.outcomes[mi];
    const auto [tp, fp] = tp_fp(beta, support, opts.zero_tol);
    out.tp = tp;
    out.fp = fp;
    if (m == Method::Lasso) {
      out.re1 = 1.0;
      out.re2 = 1.0;
    } else {
      const RelativeErrors re = relative_errors(beta, beta_lasso, scenario.beta_star);
      out.re1 = re.re1;
      out.re2 = re.re2;
    }
    out.valid = true;
  }
  return rep;
}

struct Moments {
  double mean = 0, sd = 0;
};

Moments moments(const std::vector<double>& xs) {
  Moments m;
  if (xs.empty()) return m;
  double sum = 0;
  for (double x : xs) sum += x;
  m.mean = sum / double(xs.size());
  if (xs.size() > 1) {
    double ss = 0;
    for (double x : xs) ss += (x - m.mean) * (x - m.mean);
    m.sd = std::sqrt(ss / double(xs.size() - 1));
  }
  return m;
}

}  // namespace

std::vector<BenchmarkRow> run_benchmark(const std::vector<ScenarioSpec>& scenarios,
                                        const std::vector<Method>& methods,
                                        const BenchmarkOptions& opts, std::uint64_t seed,
                                        std::vector<std::string>* failure_log) {
  if (methods.empty()) throw std::invalid_argument("run_benchmark: no methods requested");
  if (opts.replications < 1) throw std::invalid_argument("run_benchmark: replications < 1");

  std::vector<BenchmarkRow> rows;
  for (std::size_t si = 0; si < scenarios.size(); ++si) {
    const ScenarioSpec& scenario = scenarios[si];
    scenario.validate();
    const std::uint64_t scenario_seed = derived_seed(seed ^ scenario.seed, si);

    std::vector<ReplicationResult> reps(std::size_t(opts.replications));
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < opts.replications; ++r) {
      const std::uint64_t data_seed = derived_seed(scenario_seed, 2 * std::uint64_t(r));
      const std::uint64_t cv_seed = derived_seed(scenario_seed, 2 * std::uint64_t(r) + 1);
      try {
        reps[std::size_t(r)] = run_replication(scenario, methods, opts, data_seed, cv_seed);
      } catch (const std::exception& e) {
        reps[std::size_t(r)].failed = true;
        reps[std::size_t(r)].message = e.what();
      }
    }

    int failures = 0;
    for (int r = 0; r < opts.replications; ++r) {
      if (reps[std::size_t(r)].failed) {
        ++failures;
        if (failure_log)
          failure_log->push_back("scenario " + std::to_string(si) + " replication " +
                                 std::to_string(r) + ": " + reps[std::size_t(r)].message);
      }
    }

    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
      std::vector<double> tps, fps, re1s, re2s;
      for (const auto& rep : reps) {
        if (rep.failed || !rep.outcomes[mi].valid) continue;
        tps.push_back(rep.outcomes[mi].tp);
        fps.push_back(rep.outcomes[mi].fp);
        if (std::isfinite(rep.outcomes[mi].re1)) re1s.push_back(rep.outcomes[mi].re1);
        if (std::isfinite(rep.outcomes[mi].re2)) re2s.push_back(rep.outcomes[mi].re2);
      }
      BenchmarkRow row;
      row.model = to_string(scenario.model);
      row.error_dist = scenario.error.name();
      row.method = display_name(methods[mi]);
      const Moments tp_m = moments(tps), fp_m = moments(fps);
      const Moments re1_m = moments(re1s), re2_m = moments(re2s);
      row.tp_mean = tp_m.mean;
      row.tp_sd = tp_m.sd;
      row.fp_mean = fp_m.mean;
      row.fp_sd = fp_m.sd;
      row.re1_mean = re1_m.mean;
      row.re1_sd = re1_m.sd;
      row.re2_mean = re2_m.mean;
      row.re2_sd = re2_m.sd;
      row.re_sd_defined = methods[mi] != Method::Lasso;
      row.replications = int(tps.size());
      row.failures = failures;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<RocCurve> run_roc(const ScenarioSpec& scenario, const std::vector<Method>& methods,
                              const RocOptions& opts, std::uint64_t seed) {
  if (methods.empty()) throw std::invalid_argument("run_roc: no methods requested");
  scenario.validate();
  const std::vector<int> support = scenario.support();
  const int s = int(support.size());
  if (s == 0 || s == scenario.d) throw std::invalid_argument("run_roc: need 0 < s < d");
  const std::uint64_t scenario_seed = derived_seed(seed ^ scenario.seed, 0x0c);

  const int n_methods = int(methods.size());
  const int n_lambda = opts.n_lambda;
  // per-replication slabs of (tpr, fpr) sums, combined in order afterwards
  struct RepCounts {
    bool failed = false;
    std::vector<double> tpr, fpr;        // n_methods * n_lambda
    std::vector<double> lambdas;         // per replication path
  };
  std::vector<RepCounts> reps(std::size_t(opts.replications));

#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < opts.replications; ++r) {
    RepCounts& rc = reps[std::size_t(r)];
    try {
      ScenarioSpec local = scenario;
      local.seed = derived_seed(scenario_seed, std::uint64_t(r));
      const Dataset data = generate(local);

      const double tau_init = opts.quad_tau_factor * robust_scale_floor(data);
      const std::vector<double> path = lambda_path(
          data, RobustLoss(LossKind::Huber, tau_init), n_lambda, opts.lambda_ratio);
      const int stages = default_stage_count(std::max(1, s), int(data.d()));

      // residual scale from a cross-validated Lasso, as in the benchmark
      BenchmarkOptions cv_opts;
      cv_opts.n_lambda = opts.n_lambda;
      cv_opts.lambda_ratio = opts.lambda_ratio;
      cv_opts.quad_tau_factor = opts.quad_tau_factor;
      const Eigen::VectorXd beta_scale =
          fit_quadratic_cv(data, Method::Lasso, path, tau_init, stages, cv_opts,
                           derived_seed(local.seed, 0xCA));
      const double sigma_hat = std::max(mad_sigma(data.y - data.X * beta_scale), 1e-12);
      const double tau_rob =
          sigma_hat * std::sqrt(double(data.n()) / std::log(double(data.n()) * double(data.d())));

      rc.tpr.assign(std::size_t(n_methods * n_lambda), 0.0);
      rc.fpr.assign(std::size_t(n_methods * n_lambda), 0.0);
      rc.lambdas = path;
      for (int mi = 0; mi < n_methods; ++mi) {
        const Method m = methods[std::size_t(mi)];
        PipelineConfig cfg;
        cfg.loss = RobustLoss(LossKind::Huber,
                              method_is_robust(m) ? tau_rob : opts.quad_tau_factor * sigma_hat);
        cfg.stages = stages;
        for (int li = 0; li < n_lambda; ++li) {
          cfg.penalty = Penalty(method_penalty(m), path[std::size_t(li)]);
          const FitResult fit = irw_fit(data, cfg);
          const auto [tp, fp] = tp_fp(fit.beta, support, opts.zero_tol);
          rc.tpr[std::size_t(mi * n_lambda + li)] = double(tp) / double(s);
          rc.fpr[std::size_t(mi * n_lambda + li)] = double(fp) / double(scenario.d - s);
        }
      }
    } catch (const std::exception&) {
      rc.failed = true;
    }
  }

  std::vector<RocCurve> curves{std::size_t(n_methods)};
  int good = 0;
  std::vector<double> mean_lambda(std::size_t(n_lambda), 0.0);
  std::vector<double> sum_tpr(std::size_t(n_methods * n_lambda), 0.0);
  std::vector<double> sum_fpr(std::size_t(n_methods * n_lambda), 0.0);
  for (const auto& rc : reps) {
    if (rc.failed) continue;
    ++good;
    for (int i = 0; i < n_lambda; ++i) mean_lambda[std::size_t(i)] += rc.lambdas[std::size_t(i)];
    for (std::size_t k = 0; k < sum_tpr.size(); ++k) {
      sum_tpr[k] += rc.tpr[k];
      sum_fpr[k] += rc.fpr[k];
    }
  }
  if (good == 0) throw std::runtime_error("run_roc: every replication failed");

  for (int mi = 0; mi < n_methods; ++mi) {
    RocCurve& curve = curves[std::size_t(mi)];
    curve.method = display_name(methods[std::size_t(mi)]);
    std::vector<std::pair<double, double>> pts;
    for (int li = 0; li < n_lambda; ++li) {
      RocPoint pt;
      pt.lambda = mean_lambda[std::size_t(li)] / double(good);
      pt.tpr = sum_tpr[std::size_t(mi * n_lambda + li)] / double(good);
      pt.fpr = sum_fpr[std::size_t(mi * n_lambda + li)] / double(good);
      curve.points.push_back(pt);
      pts.emplace_back(pt.fpr, pt.tpr);
    }
    curve.auc = auc(std::move(pts));
  }
  return curves;
}

}  // namespace irw
