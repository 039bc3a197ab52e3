#include "irw/objective.hpp"

#include <cmath>

namespace irw {

double empirical_loss(const Dataset& data, const RobustLoss& loss, const Eigen::VectorXd& beta) {
  check_dim(data, beta);
  const Eigen::VectorXd r = kernels::residuals(data.X, data.y, beta);
  return kernels::loss_sum(loss, r) / double(data.n());
}

Eigen::VectorXd empirical_gradient(const Dataset& data, const RobustLoss& loss,
                                   const Eigen::VectorXd& beta) {
  check_dim(data, beta);
  const Eigen::VectorXd r = kernels::residuals(data.X, data.y, beta);
  return kernels::gradient(data.X, loss, r);
}

double suboptimality_from_gradient(const Eigen::VectorXd& gradient,
                                   const Eigen::VectorXd& weights, const Eigen::VectorXd& beta) {
  if (gradient.size() != beta.size() || weights.size() != beta.size())
    throw std::invalid_argument("suboptimality: dimension mismatch");
  double worst = 0.0;
  for (Eigen::Index j = 0; j < beta.size(); ++j) {
    double c;
    if (beta[j] != 0.0) {
      // subgradient is pinned to sign(beta_j)
      c = std::abs(gradient[j] + weights[j] * ((beta[j] > 0.0) ? 1.0 : -1.0));
    } else {
      // best xi_j in [-1, 1] cancels up to weights_j of the gradient
      c = std::max(std::abs(gradient[j]) - weights[j], 0.0);
    }
    worst = std::max(worst, c);
  }
  return worst;
}

double suboptimality(const Dataset& data, const RobustLoss& loss, const Eigen::VectorXd& weights,
                     const Eigen::VectorXd& beta) {
  return suboptimality_from_gradient(empirical_gradient(data, loss, beta), weights, beta);
}

double penalized_objective(const Dataset& data, const RobustLoss& loss,
                           const Eigen::VectorXd& weights, const Eigen::VectorXd& beta) {
  if (weights.size() != beta.size())
    throw std::invalid_argument("penalized_objective: dimension mismatch");
  return empirical_loss(data, loss, beta) + weights.cwiseProduct(beta.cwiseAbs()).sum();
}

}  // namespace irw
