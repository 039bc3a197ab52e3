#include "irw/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace irw {

void PipelineConfig::validate() const {
  if (stages < 1) throw std::invalid_argument("PipelineConfig: stages must be >= 1");
  if (!(phi0 > 0.0) || !(gamma_u > 1.0))
    throw std::invalid_argument("PipelineConfig: invalid solver parameters");
  if (eps_contraction > 0.0 && eps_tightening > 0.0 && eps_tightening > eps_contraction)
    throw std::invalid_argument("PipelineConfig: eps_tightening must not exceed eps_contraction");
}

FitResult irw_fit(const Dataset& data, const PipelineConfig& cfg) {
  cfg.validate();
  data.validate();

  const double eps_c =
      cfg.eps_contraction > 0.0 ? cfg.eps_contraction : 1e-4 * cfg.penalty.lambda;
  const double eps_t = cfg.eps_tightening > 0.0
                           ? cfg.eps_tightening
                           : 0.1 * std::min(eps_c, 1.0 / std::sqrt(double(data.n())));

  FitResult result;
  result.eps_contraction = eps_c;
  result.eps_tightening = eps_t;

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(data.d());
  Eigen::VectorXd weights = cfg.penalty.weight_vector(beta);  // constant lambda at stage 1

  for (int stage = 1; stage <= cfg.stages; ++stage) {
    SolverConfig solver;
    solver.phi0 = cfg.phi0;
    solver.gamma_u = cfg.gamma_u;
    solver.eps = stage == 1 ? eps_c : eps_t;
    solver.max_inner_iters = stage == 1 ? cfg.max_iters_contraction : cfg.max_iters_tightening;

    SolveResult solved = solve_weighted_l1(data, cfg.loss, weights, beta, solver);

    StageRecord record;
    record.weights = weights;
    record.solution = solved.beta;
    record.omega = solved.omega;
    record.inner_iterations = int(solved.trace.iterations.size());
    record.objective_trace.reserve(solved.trace.iterations.size());
    for (const auto& it : solved.trace.iterations) record.objective_trace.push_back(it.objective);
    record.converged = solved.converged;
    result.stages.push_back(std::move(record));
    result.converged = result.converged && solved.converged;

    beta = std::move(solved.beta);
    if (stage == cfg.stages) break;

    Eigen::VectorXd next_weights = cfg.penalty.weight_vector(beta);
    if (((next_weights - weights).cwiseAbs().maxCoeff()) <= 1e-12) break;  // fixed point
    weights = std::move(next_weights);
  }

  result.beta = beta;
  for (Eigen::Index j = 0; j < beta.size(); ++j)
    if (beta[j] != 0.0) result.active_set.push_back(int(j));
  return result;
}

int default_stage_count(int s_hint, std::int64_t d) {
  if (s_hint < 1 || d < 1) throw std::invalid_argument("default_stage_count: bad arguments");
  const int s_term = int(std::ceil(std::log2(double(std::max(s_hint, 2)))));
  const int d_term = int(std::floor(std::log2(std::max(std::log2(double(d)), 2.0))));
  return std::clamp(s_term + d_term + 1, 3, 15);
}

Eigen::VectorXd oracle_fit(const Dataset& data, const RobustLoss& loss,
                           const std::vector<int>& support) {
  data.validate();
  if (support.empty()) throw std::invalid_argument("oracle_fit: support must be nonempty");
  if (Eigen::Index(support.size()) >= data.n())
    throw std::invalid_argument("oracle_fit: support size must be below the sample size");
  for (int j : support)
    if (j < 0 || j >= data.d()) throw std::invalid_argument("oracle_fit: support index out of range");

  Dataset restricted;
  restricted.y = data.y;
  restricted.X.resize(data.n(), Eigen::Index(support.size()));
  for (std::size_t k = 0; k < support.size(); ++k)
    restricted.X.col(Eigen::Index(k)) = data.X.col(support[k]);

  SolverConfig solver;
  solver.eps = 1e-8;
  solver.max_inner_iters = 100000;
  const Eigen::VectorXd zero_weights = Eigen::VectorXd::Zero(restricted.d());
  SolveResult solved = solve_weighted_l1(restricted, loss, zero_weights,
                                         Eigen::VectorXd::Zero(restricted.d()), solver);

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(data.d());
  for (std::size_t k = 0; k < support.size(); ++k) beta[support[k]] = solved.beta[Eigen::Index(k)];
  return beta;
}

}  // namespace irw
