#pragma once

#include <Eigen/Core>

#include "irw/loss.hpp"

namespace irw::kernels {

// Data-parallel inner loops behind the objective module. Each kernel has a
// plain serial reference (*_serial) and an OpenMP version used in production.
// The OpenMP versions partition work over fixed-size blocks or whole columns,
// so their results are bit-identical to the serial reference for any thread
// count. kernel_bench compares the two.

// r = y - X * beta, skipping zero coefficients.
Eigen::VectorXd residuals_serial(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                 const Eigen::VectorXd& beta);
Eigen::VectorXd residuals(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                          const Eigen::VectorXd& beta);

// sum_i loss.value(r_i)
double loss_sum_serial(const RobustLoss& loss, const Eigen::VectorXd& r);
double loss_sum(const RobustLoss& loss, const Eigen::VectorXd& r);

// g_j = -(1/n) sum_i loss.deriv(r_i) X_ij
Eigen::VectorXd gradient_serial(const Eigen::MatrixXd& X, const RobustLoss& loss,
                                const Eigen::VectorXd& r);
Eigen::VectorXd gradient(const Eigen::MatrixXd& X, const RobustLoss& loss,
                         const Eigen::VectorXd& r);

}  // namespace irw::kernels
