#pragma once

#include <Eigen/Core>
#include <vector>

#include "irw/dataset.hpp"
#include "irw/loss.hpp"

namespace irw {

struct SolverConfig {
  double phi0 = 1e-4;        // initial quadratic coefficient
  double gamma_u = 2.0;      // inflation factor, > 1
  double eps = 1e-6;         // target suboptimality
  int max_inner_iters = 10000;
  int max_backtracks = 100;  // inflations per step before declaring failure

  void validate() const;
};

// One accepted majorize-minimize step.
struct IterationRecord {
  double objective;          // penalized objective after the step
  double omega;              // suboptimality after the step
  double phi;                // accepted quadratic coefficient
  int backtracks;            // inflations tried before acceptance
  double majorization_gap;   // F - empirical loss at acceptance, >= 0
};

struct InnerTrace {
  std::vector<IterationRecord> iterations;
};

struct SolveResult {
  Eigen::VectorXd beta;
  InnerTrace trace;
  bool converged = false;
  double omega = 0.0;  // suboptimality of the returned beta
};

// Componentwise sign(v_j) * max(|v_j| - t_j, 0).
Eigen::VectorXd soft_threshold(const Eigen::VectorXd& v, const Eigen::VectorXd& thresholds);

// Isotropic quadratic model of the empirical loss around `anchor`:
// loss(anchor) + <grad(anchor), beta - anchor> + (phi/2) ||beta - anchor||^2.
double majorizer_value(const Dataset& data, const RobustLoss& loss, const Eigen::VectorXd& beta,
                       double phi, const Eigen::VectorXd& anchor);

struct LammStep {
  Eigen::VectorXd beta;
  double phi;
  int backtracks;
  double majorization_gap;
  double loss_value;  // empirical loss at the accepted point
};

// One step: soft-threshold the gradient step, inflating phi by gamma_u until
// the quadratic model sits above the empirical loss at the candidate.
LammStep lamm_iteration(const Dataset& data, const RobustLoss& loss,
                        const Eigen::VectorXd& weights, const Eigen::VectorXd& beta_prev,
                        double phi_prev, const SolverConfig& cfg);

// Run LAMM steps until the suboptimality drops to cfg.eps or the iteration
// budget runs out (flagged in the result, not thrown).
SolveResult solve_weighted_l1(const Dataset& data, const RobustLoss& loss,
                              const Eigen::VectorXd& weights, const Eigen::VectorXd& beta_init,
                              const SolverConfig& cfg);

}  // namespace irw
