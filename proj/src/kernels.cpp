#include "irw/kernels.hpp"

namespace irw::kernels {

namespace {

// Row-block size for the residual kernel. Fixed so that the parallel
// partition (and hence every floating-point result) does not depend on the
// number of threads.
constexpr Eigen::Index kRowBlock = 4096;

// Problems smaller than this run the plain serial loop even in the OpenMP
// build; forking threads costs more than the work itself.
constexpr Eigen::Index kParallelCutoff = 1 << 16;

inline void residual_block(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                           const Eigen::VectorXd& beta, Eigen::Index lo, Eigen::Index len,
                           Eigen::VectorXd& r) {
  r.segment(lo, len) = y.segment(lo, len);
  for (Eigen::Index j = 0; j < beta.size(); ++j) {
    if (beta[j] != 0.0)
      r.segment(lo, len).noalias() -= beta[j] * X.col(j).segment(lo, len);
  }
}

}  // namespace

Eigen::VectorXd residuals_serial(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                 const Eigen::VectorXd& beta) {
  Eigen::VectorXd r(y.size());
  for (Eigen::Index lo = 0; lo < y.size(); lo += kRowBlock)
    residual_block(X, y, beta, lo, std::min(kRowBlock, y.size() - lo), r);
  return r;
}

Eigen::VectorXd residuals(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                          const Eigen::VectorXd& beta) {
  Eigen::VectorXd r(y.size());
  const Eigen::Index n = y.size();
  const Eigen::Index nblocks = (n + kRowBlock - 1) / kRowBlock;
#pragma omp parallel for schedule(static) if (n * X.cols() >= kParallelCutoff && nblocks > 1)
  for (Eigen::Index b = 0; b < nblocks; ++b) {
    const Eigen::Index lo = b * kRowBlock;
    residual_block(X, y, beta, lo, std::min(kRowBlock, n - lo), r);
  }
  return r;
}

double loss_sum_serial(const RobustLoss& loss, const Eigen::VectorXd& r) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < r.size(); ++i) sum += loss.value(r[i]);
  return sum;
}

double loss_sum(const RobustLoss& loss, const Eigen::VectorXd& r) {
  const Eigen::Index n = r.size();
  if (n < kParallelCutoff) return loss_sum_serial(loss, r);
  Eigen::VectorXd vals(n);
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n; ++i) vals[i] = loss.value(r[i]);
  // ordered sum keeps the result identical to the serial reference
  double sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) sum += vals[i];
  return sum;
}

Eigen::VectorXd gradient_serial(const Eigen::MatrixXd& X, const RobustLoss& loss,
                                const Eigen::VectorXd& r) {
  const Eigen::Index n = r.size();
  Eigen::VectorXd w(n);
  for (Eigen::Index i = 0; i < n; ++i) w[i] = loss.deriv(r[i]);
  Eigen::VectorXd g(X.cols());
  for (Eigen::Index j = 0; j < X.cols(); ++j) g[j] = -X.col(j).dot(w) / double(n);
  return g;
}

Eigen::VectorXd gradient(const Eigen::MatrixXd& X, const RobustLoss& loss,
                         const Eigen::VectorXd& r) {
  const Eigen::Index n = r.size();
  const Eigen::Index d = X.cols();
  const bool par = n * d >= kParallelCutoff;
  Eigen::VectorXd w(n);
#pragma omp parallel for schedule(static) if (par)
  for (Eigen::Index i = 0; i < n; ++i) w[i] = loss.deriv(r[i]);
  Eigen::VectorXd g(d);
#pragma omp parallel for schedule(static) if (par)
  for (Eigen::Index j = 0; j < d; ++j) g[j] = -X.col(j).dot(w) / double(n);
  return g;
}

}  // namespace irw::kernels
