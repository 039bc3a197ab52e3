#pragma once

#include <Eigen/Core>
#include <utility>
#include <vector>

namespace irw {

// Selected set is {j : |beta_j| > zero_tol}; returns (true positives within
// `support`, false positives outside it).
std::pair<int, int> tp_fp(const Eigen::VectorXd& beta_hat, const std::vector<int>& support,
                          double zero_tol = 1e-8);

// Error norms relative to a reference (Lasso) estimate; NaN when the
// reference error is zero.
struct RelativeErrors {
  double re1;
  double re2;
};
RelativeErrors relative_errors(const Eigen::VectorXd& beta_hat, const Eigen::VectorXd& beta_lasso,
                               const Eigen::VectorXd& beta_star);

// Trapezoidal area under (fpr, tpr) points, sorted internally and extended
// by the (0,0) and (1,1) endpoints.
double auc(std::vector<std::pair<double, double>> points);

}  // namespace irw
