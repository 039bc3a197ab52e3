#include "irw/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace irw {

std::pair<int, int> tp_fp(const Eigen::VectorXd& beta_hat, const std::vector<int>& support,
                          double zero_tol) {
  if (zero_tol < 0.0) throw std::invalid_argument("tp_fp: zero_tol must be nonnegative");
  std::vector<char> in_support(static_cast<std::size_t>(beta_hat.size()), 0);
  for (int j : support) {
    if (j < 0 || j >= beta_hat.size()) throw std::invalid_argument("tp_fp: support index out of range");
    in_support[std::size_t(j)] = 1;
  }
  int tp = 0, fp = 0;
  for (Eigen::Index j = 0; j < beta_hat.size(); ++j) {
    if (std::abs(beta_hat[j]) > zero_tol) (in_support[std::size_t(j)] ? tp : fp)++;
  }
  return {tp, fp};
}

RelativeErrors relative_errors(const Eigen::VectorXd& beta_hat, const Eigen::VectorXd& beta_lasso,
                               const Eigen::VectorXd& beta_star) {
  if (beta_hat.size() != beta_star.size() || beta_lasso.size() != beta_star.size())
    throw std::invalid_argument("relative_errors: dimension mismatch");
  const double ref1 = (beta_lasso - beta_star).lpNorm<1>();
  const double ref2 = (beta_lasso - beta_star).norm();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  return {ref1 > 0.0 ? (beta_hat - beta_star).lpNorm<1>() / ref1 : nan,
          ref2 > 0.0 ? (beta_hat - beta_star).norm() / ref2 : nan};
}

double auc(std::vector<std::pair<double, double>> points) {
  if (points.size() < 2) throw std::invalid_argument("auc: need at least two points");
  points.emplace_back(0.0, 0.0);
  points.emplace_back(1.0, 1.0);
  std::sort(points.begin(), points.end());
  double area = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    const auto& [x0, y0] = points[i - 1];
    const auto& [x1, y1] = points[i];
    area += 0.5 * (x1 - x0) * (y0 + y1);
  }
  return area;
}

}  // namespace irw
