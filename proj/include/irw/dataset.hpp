#pragma once

#include <Eigen/Core>
#include <stdexcept>

namespace irw {

// Regression sample: response y (length n) and design X (n x d).
struct Dataset {
  Eigen::VectorXd y;
  Eigen::MatrixXd X;

  Eigen::Index n() const { return y.size(); }
  Eigen::Index d() const { return X.cols(); }

  void validate() const {
    if (y.size() < 1 || X.cols() < 1)
      throw std::invalid_argument("Dataset: need n >= 1 and d >= 1");
    if (X.rows() != y.size())
      throw std::invalid_argument("Dataset: X rows must match y length");
    if (!y.allFinite() || !X.allFinite())
      throw std::invalid_argument("Dataset: non-finite entries");
  }
};

inline void check_dim(const Dataset& data, const Eigen::VectorXd& beta) {
  if (beta.size() != data.d())
    throw std::invalid_argument("coefficient vector length does not match design columns");
}

}  // namespace irw
