#pragma once

#include <Eigen/Core>

#include "irw/dataset.hpp"
#include "irw/kernels.hpp"
#include "irw/loss.hpp"

namespace irw {

// (1/n) sum_i loss(y_i - x_i' beta)
double empirical_loss(const Dataset& data, const RobustLoss& loss, const Eigen::VectorXd& beta);

// -(1/n) sum_i loss'(y_i - x_i' beta) x_i
Eigen::VectorXd empirical_gradient(const Dataset& data, const RobustLoss& loss,
                                   const Eigen::VectorXd& beta);

// Suboptimality of beta for the weighted-l1 program
//   min  (1/n) sum_i loss(y_i - x_i' beta) + || weights o beta ||_1 :
// the smallest sup-norm of gradient + weights o xi over subgradients xi of
// ||beta||_1. Zero exactly at an optimum.
double suboptimality(const Dataset& data, const RobustLoss& loss, const Eigen::VectorXd& weights,
                     const Eigen::VectorXd& beta);

// Same, from a precomputed gradient.
double suboptimality_from_gradient(const Eigen::VectorXd& gradient,
                                   const Eigen::VectorXd& weights, const Eigen::VectorXd& beta);

double penalized_objective(const Dataset& data, const RobustLoss& loss,
                           const Eigen::VectorXd& weights, const Eigen::VectorXd& beta);

}  // namespace irw
