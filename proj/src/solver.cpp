#include "irw/solver.hpp"

#include <cmath>
#include <stdexcept>

#include "irw/kernels.hpp"
#include "irw/objective.hpp"

namespace irw {

void SolverConfig::validate() const {
  if (!(phi0 > 0.0)) throw std::invalid_argument("SolverConfig: phi0 must be positive");
  if (!(gamma_u > 1.0)) throw std::invalid_argument("SolverConfig: gamma_u must exceed 1");
  if (!(eps > 0.0)) throw std::invalid_argument("SolverConfig: eps must be positive");
  if (max_inner_iters < 1) throw std::invalid_argument("SolverConfig: max_inner_iters < 1");
}

Eigen::VectorXd soft_threshold(const Eigen::VectorXd& v, const Eigen::VectorXd& thresholds) {
  if (v.size() != thresholds.size())
    throw std::invalid_argument("soft_threshold: dimension mismatch");
  Eigen::VectorXd out(v.size());
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    const double shrunk = std::abs(v[j]) - thresholds[j];
    out[j] = shrunk > 0.0 ? (v[j] > 0.0 ? shrunk : -shrunk) : 0.0;
  }
  return out;
}

double majorizer_value(const Dataset& data, const RobustLoss& loss, const Eigen::VectorXd& beta,
                       double phi, const Eigen::VectorXd& anchor) {
  if (!(phi > 0.0)) throw std::invalid_argument("majorizer_value: phi must be positive");
  const Eigen::VectorXd diff = beta - anchor;
  return empirical_loss(data, loss, anchor) + empirical_gradient(data, loss, anchor).dot(diff) +
         0.5 * phi * diff.squaredNorm();
}

namespace {

// State cached at the current iterate so each LAMM step costs one gradient
// plus one loss evaluation per backtrack.
struct Anchor {
  Eigen::VectorXd beta;
  double loss_value;
  Eigen::VectorXd gradient;
};

struct Step {
  LammStep accepted;
  Eigen::VectorXd residuals;  // at the accepted point, reused by the caller
};

Step step_from_anchor(const Dataset& data, const RobustLoss& loss, const Eigen::VectorXd& weights,
                      const Anchor& anchor, double phi_prev, const SolverConfig& cfg) {
  const double n = double(data.n());
  double phi = std::max(cfg.phi0, phi_prev / cfg.gamma_u);
  for (int bt = 0;; ++bt) {
    Eigen::VectorXd candidate =
        soft_threshold(anchor.beta - anchor.gradient / phi, weights / phi);
    Eigen::VectorXd r = kernels::residuals(data.X, data.y, candidate);
    const double cand_loss = kernels::loss_sum(loss, r) / n;
    const Eigen::VectorXd diff = candidate - anchor.beta;
    const double model = anchor.loss_value + anchor.gradient.dot(diff) +
                         0.5 * phi * diff.squaredNorm();
    if (model >= cand_loss)
      return {{std::move(candidate), phi, bt, model - cand_loss, cand_loss}, std::move(r)};
    if (bt >= cfg.max_backtracks)
      throw std::runtime_error(
          "lamm_iteration: majorization not reached after max_backtracks inflations; "
          "data may contain non-finite values");
    phi *= cfg.gamma_u;
  }
}

}  // namespace

LammStep lamm_iteration(const Dataset& data, const RobustLoss& loss,
                        const Eigen::VectorXd& weights, const Eigen::VectorXd& beta_prev,
                        double phi_prev, const SolverConfig& cfg) {
  cfg.validate();
  check_dim(data, beta_prev);
  const Eigen::VectorXd r = kernels::residuals(data.X, data.y, beta_prev);
  Anchor anchor{beta_prev, kernels::loss_sum(loss, r) / double(data.n()),
                kernels::gradient(data.X, loss, r)};
  return step_from_anchor(data, loss, weights, anchor, phi_prev, cfg).accepted;
}

SolveResult solve_weighted_l1(const Dataset& data, const RobustLoss& loss,
                              const Eigen::VectorXd& weights, const Eigen::VectorXd& beta_init,
                              const SolverConfig& cfg) {
  cfg.validate();
  data.validate();
  check_dim(data, beta_init);
  if (weights.size() != beta_init.size())
    throw std::invalid_argument("solve_weighted_l1: weights dimension mismatch");
  if ((weights.array() < 0.0).any())
    throw std::invalid_argument("solve_weighted_l1: weights must be nonnegative");

  SolveResult result;
  result.beta = beta_init;

  Eigen::VectorXd r = kernels::residuals(data.X, data.y, result.beta);
  Anchor anchor{result.beta, kernels::loss_sum(loss, r) / double(data.n()),
                kernels::gradient(data.X, loss, r)};
  result.omega = suboptimality_from_gradient(anchor.gradient, weights, result.beta);
  if (result.omega <= cfg.eps) {
    result.converged = true;
    return result;
  }

  double phi = cfg.phi0;
  double best_objective = std::numeric_limits<double>::infinity();
  int stalled = 0;
  for (int k = 0; k < cfg.max_inner_iters; ++k) {
    Step step = step_from_anchor(data, loss, weights, anchor, phi, cfg);
    LammStep& acc = step.accepted;
    phi = acc.phi;
    const bool moved = (acc.beta.array() != anchor.beta.array()).any();

    Eigen::VectorXd g_next = kernels::gradient(data.X, loss, step.residuals);
    const double omega = suboptimality_from_gradient(g_next, weights, acc.beta);
    const double objective = acc.loss_value + weights.cwiseProduct(acc.beta.cwiseAbs()).sum();
    result.trace.iterations.push_back(
        {objective, omega, acc.phi, acc.backtracks, acc.majorization_gap});

    anchor.beta = std::move(acc.beta);
    anchor.loss_value = acc.loss_value;
    anchor.gradient = std::move(g_next);
    result.beta = anchor.beta;
    result.omega = omega;
    if (omega <= cfg.eps) {
      result.converged = true;
      return result;
    }
    // a zero-length accepted step is a floating-point fixed point; further
    // iterations cannot move
    if (!moved) break;
    // every accepted step decreases the objective by at least
    // (phi/2) ||beta_k - beta_{k-1}||^2, so a run of ulp-level non-decreases
    // means the rounding floor is reached and eps is unattainable
    if (!std::isfinite(best_objective) ||
        objective < best_objective - 1e-15 * std::max(1.0, std::abs(best_objective))) {
      best_objective = objective;
      stalled = 0;
    } else if (++stalled >= 30) {
      break;
    }
  }
  result.converged = false;
  return result;
}

}  // namespace irw
