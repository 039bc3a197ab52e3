#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "irw/dataset.hpp"
#include "irw/penalty.hpp"
#include "irw/sgt.hpp"

namespace irw {

struct NormalDist {
  double mu = 0.0;
  double sigma = 1.0;
};
struct SgtDist {
  double mu = 0.0;
  double sigma2 = 5.0;
  double skew = 0.75;
  double p_shape = 2.0;
  double q_shape = 2.5;
};
struct LogNormalDist {
  double mu_log = 0.0;
  double sigma_log = 1.0;
};
struct ParetoDist {
  double x_m = 1.0;
  double alpha = 3.0;  // > 2 so the variance is finite
};

struct ErrorDist {
  std::variant<NormalDist, SgtDist, LogNormalDist, ParetoDist> dist = NormalDist{};
  bool centered = false;  // subtract the population mean

  void validate() const;
  double population_mean() const;
  std::string name() const;  // "normal", "sgt", "lognormal", "pareto"
};

// Draws from an ErrorDist; builds the sgt quantile table once.
class ErrorSampler {
 public:
  explicit ErrorSampler(const ErrorDist& dist);
  double draw(std::mt19937_64& rng) const;
  Eigen::VectorXd sample(Eigen::Index n, std::mt19937_64& rng) const;

 private:
  ErrorDist spec_;
  std::shared_ptr<const SgtSampler> sgt_;
  double shift_ = 0.0;
};

enum class ModelKind { Homoscedastic, Heteroscedastic };
const char* to_string(ModelKind model);
ModelKind model_kind_from_string(const std::string& name);

struct ScenarioSpec {
  Eigen::Index n = 0;
  Eigen::Index d = 0;
  Eigen::VectorXd beta_star;
  ModelKind model = ModelKind::Homoscedastic;
  ErrorDist error;
  std::uint64_t seed = 0;

  void validate() const;
  std::vector<int> support() const;
  // Heteroscedastic response scale sqrt(3) * ||beta*||_2^2, chosen so the
  // multiplicative noise factor has unit second moment.
  double hetero_scale() const;
};

Eigen::MatrixXd sample_design(Eigen::Index n, Eigen::Index d, std::mt19937_64& rng);
Eigen::VectorXd sample_errors(const ErrorDist& dist, Eigen::Index n, std::mt19937_64& rng);
Dataset generate(const ScenarioSpec& spec);

// The five benchmark methods. The quadratic-loss baselines reuse the robust
// solver with tau inflated far past every residual.
enum class Method { Lasso, Scad, HuberScad, Mcp, HuberMcp };
const char* display_name(Method m);        // "Lasso", "SCAD", "Huber-SCAD", ...
Method method_from_string(const std::string& token);  // lasso, scad, huber-scad, ...
bool method_is_robust(Method m);
PenaltyKind method_penalty(Method m);

struct BenchmarkOptions {
  int replications = 50;
  int n_lambda = 30;
  double lambda_ratio = 0.01;
  int cv_folds = 3;
  double zero_tol = 1e-8;
  double quad_tau_factor = 1e6;  // tau multiplier for the quadratic baselines
  int max_iters_contraction = 10000;  // per-stage solver budgets for all fits
  int max_iters_tightening = 500;
};

struct BenchmarkRow {
  std::string model;
  std::string error_dist;
  std::string method;
  double tp_mean = 0, tp_sd = 0;
  double fp_mean = 0, fp_sd = 0;
  double re1_mean = 0, re1_sd = 0;
  double re2_mean = 0, re2_sd = 0;
  bool re_sd_defined = true;  // false for Lasso, whose REs are 1 by definition
  int replications = 0;
  int failures = 0;
};

std::vector<BenchmarkRow> run_benchmark(const std::vector<ScenarioSpec>& scenarios,
                                        const std::vector<Method>& methods,
                                        const BenchmarkOptions& opts, std::uint64_t seed,
                                        std::vector<std::string>* failure_log = nullptr);

struct RocOptions {
  int replications = 50;
  int n_lambda = 25;
  double lambda_ratio = 0.01;
  double zero_tol = 1e-8;
  double quad_tau_factor = 1e6;
};

struct RocPoint {
  double lambda;
  double fpr;
  double tpr;
};

struct RocCurve {
  std::string method;
  std::vector<RocPoint> points;
  double auc = 0.0;
};

std::vector<RocCurve> run_roc(const ScenarioSpec& scenario, const std::vector<Method>& methods,
                              const RocOptions& opts, std::uint64_t seed);

}  // namespace irw
