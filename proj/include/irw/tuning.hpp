#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "irw/dataset.hpp"
#include "irw/pipeline.hpp"

namespace irw {

struct TuningGrid {
  std::vector<double> lambdas;  // strictly decreasing
  std::vector<double> taus;     // strictly increasing
  int cv_folds = 3;

  void validate() const;
};

struct CVResult {
  double lambda = 0.0;
  double tau = 0.0;
  Eigen::MatrixXd mean_loss;               // lambdas x taus, averaged over folds
  std::vector<Eigen::MatrixXd> fold_loss;  // one lambdas x taus matrix per fold
};

// Robust residual scale: median absolute deviation about the median,
// divided by the normal quartile 0.6744897501960817.
double mad_sigma(const Eigen::VectorXd& residuals);

// {2^j * sigma_hat * sqrt(n / log(n d)) : j = -2..2}, increasing.
std::vector<double> tau_grid(double sigma_hat, Eigen::Index n, Eigen::Index d);

// Decreasing log-spaced grid from lambda_max = ||grad at 0||_inf (the
// smallest level that keeps the l1 solution at zero) down to ratio * lambda_max.
std::vector<double> lambda_path(const Dataset& data, const RobustLoss& loss, int n_lambda,
                                double ratio);

// Joint (lambda, tau) selection by k-fold cross-validation. Held-out folds
// are scored by the mean Huber loss at the candidate tau; ties break toward
// larger lambda, then smaller tau. Fold assignment is a seeded shuffle.
CVResult cross_validate(const Dataset& data, const PipelineConfig& cfg_template,
                        const TuningGrid& grid, std::uint64_t seed);

}  // namespace irw
