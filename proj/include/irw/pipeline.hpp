#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "irw/dataset.hpp"
#include "irw/loss.hpp"
#include "irw/penalty.hpp"
#include "irw/solver.hpp"

namespace irw {

struct PipelineConfig {
  RobustLoss loss;
  Penalty penalty;
  int stages = 1;                 // total stages T (contraction + tightening)
  double eps_contraction = 0.0;   // <= 0 resolves to 1e-4 * lambda
  double eps_tightening = 0.0;    // <= 0 resolves to 0.1 * min(eps_c, 1/sqrt(n))
  double phi0 = 1e-4;
  double gamma_u = 2.0;
  int max_iters_contraction = 10000;
  int max_iters_tightening = 500;

  void validate() const;
};

struct StageRecord {
  Eigen::VectorXd weights;   // per-coordinate levels used by this stage
  Eigen::VectorXd solution;
  double omega = 0.0;        // suboptimality achieved
  int inner_iterations = 0;
  std::vector<double> objective_trace;
  bool converged = true;
};

struct FitResult {
  Eigen::VectorXd beta;
  std::vector<StageRecord> stages;
  std::vector<int> active_set;
  bool converged = true;  // every executed stage reached its tolerance

  double eps_contraction = 0.0;  // resolved tolerances actually used
  double eps_tightening = 0.0;
};

// Multi-stage estimator: stage 1 solves the l1-penalized program from zero
// (all weights equal to lambda); each later stage reweights the penalty by
// the derivative at the previous solution and warm-starts there. Exits early
// once the weight vector stops changing.
FitResult irw_fit(const Dataset& data, const PipelineConfig& cfg);

// Heuristic stage budget growing with log(sparsity) and log(log(dimension)),
// clamped to [3, 15].
int default_stage_count(int s_hint, std::int64_t d);

// Unpenalized fit restricted to `support` (zero weights, tight tolerance);
// coordinates off the support are exactly zero.
Eigen::VectorXd oracle_fit(const Dataset& data, const RobustLoss& loss,
                           const std::vector<int>& support);

}  // namespace irw
