#include "irw/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "irw/objective.hpp"

namespace irw {

namespace {

constexpr double kNormalQuartile = 0.6744897501960817;  // Phi^{-1}(3/4)

double median_inplace(std::vector<double>& v) {
  const std::size_t n = v.size();
  auto mid = v.begin() + n / 2;
  std::nth_element(v.begin(), mid, v.end());
  if (n % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(v.begin(), mid);
  return 0.5 * (lower + upper);
}

}  // namespace

void TuningGrid::validate() const {
  if (lambdas.empty() || taus.empty()) throw std::invalid_argument("TuningGrid: empty grid");
  if (cv_folds < 2) throw std::invalid_argument("TuningGrid: cv_folds must be >= 2");
  for (std::size_t i = 1; i < lambdas.size(); ++i)
    if (!(lambdas[i] < lambdas[i - 1]))
      throw std::invalid_argument("TuningGrid: lambdas must be strictly decreasing");
  for (std::size_t i = 1; i < taus.size(); ++i)
    if (!(taus[i] > taus[i - 1]))
      throw std::invalid_argument("TuningGrid: taus must be strictly increasing");
}

double mad_sigma(const Eigen::VectorXd& residuals) {
  if (residuals.size() < 1) throw std::invalid_argument("mad_sigma: empty input");
  std::vector<double> v(residuals.data(), residuals.data() + residuals.size());
  const double med = median_inplace(v);
  for (double& x : v) x = std::abs(x - med);
  return median_inplace(v) / kNormalQuartile;
}

std::vector<double> tau_grid(double sigma_hat, Eigen::Index n, Eigen::Index d) {
  if (!(sigma_hat > 0.0)) throw std::invalid_argument("tau_grid: sigma_hat must be positive");
  if (n < 2) throw std::invalid_argument("tau_grid: need n >= 2");
  const double log_nd = std::log(double(n) * double(d));
  if (!(log_nd > 1.0)) throw std::invalid_argument("tau_grid: need n * d > e");
  const double center = sigma_hat * std::sqrt(double(n) / log_nd);
  std::vector<double> grid;
  grid.reserve(5);
  for (int j = -2; j <= 2; ++j) grid.push_back(std::ldexp(center, j));
  return grid;
}

std::vector<double> lambda_path(const Dataset& data, const RobustLoss& loss, int n_lambda,
                                double ratio) {
  if (n_lambda < 2) throw std::invalid_argument("lambda_path: need n_lambda >= 2");
  if (!(ratio > 0.0 && ratio < 1.0))
    throw std::invalid_argument("lambda_path: ratio must lie in (0, 1)");
  data.validate();
  const Eigen::VectorXd g0 = empirical_gradient(data, loss, Eigen::VectorXd::Zero(data.d()));
  const double lambda_max = g0.cwiseAbs().maxCoeff();
  if (!(lambda_max > 0.0))
    throw std::invalid_argument("lambda_path: gradient at zero vanishes (degenerate data)");
  std::vector<double> path(n_lambda);
  for (int i = 0; i < n_lambda; ++i)
    path[i] = lambda_max * std::pow(ratio, double(i) / double(n_lambda - 1));
  return path;
}

CVResult cross_validate(const Dataset& data, const PipelineConfig& cfg_template,
                        const TuningGrid& grid, std::uint64_t seed) {
  grid.validate();
  data.validate();
  const Eigen::Index n = data.n();
  const int folds = grid.cv_folds;
  if (n < folds) throw std::invalid_argument("cross_validate: fewer rows than folds");

  // seeded shuffle, then round-robin so fold sizes differ by at most one
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Eigen::Index(0));
  std::mt19937_64 rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<int> fold_of(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) fold_of[std::size_t(perm[std::size_t(i)])] = int(i % folds);

  struct FoldData {
    Dataset train;
    Dataset test;
  };
  std::vector<FoldData> fold_data(static_cast<std::size_t>(folds));
  for (int f = 0; f < folds; ++f) {
    std::vector<Eigen::Index> train_idx, test_idx;
    for (Eigen::Index i = 0; i < n; ++i)
      (fold_of[std::size_t(i)] == f ? test_idx : train_idx).push_back(i);
    auto take = [&](const std::vector<Eigen::Index>& idx) {
      Dataset sub;
      sub.y.resize(Eigen::Index(idx.size()));
      sub.X.resize(Eigen::Index(idx.size()), data.d());
      for (std::size_t k = 0; k < idx.size(); ++k) {
        sub.y[Eigen::Index(k)] = data.y[idx[k]];
        sub.X.row(Eigen::Index(k)) = data.X.row(idx[k]);
      }
      return sub;
    };
    fold_data[std::size_t(f)] = {take(train_idx), take(test_idx)};
  }

  const int n_lambda = int(grid.lambdas.size());
  const int n_tau = int(grid.taus.size());

  CVResult result;
  result.fold_loss.assign(std::size_t(folds), Eigen::MatrixXd::Zero(n_lambda, n_tau));

  // independent cells over (fold, tau, lambda); each writes its own slot
  const int cells = folds * n_tau * n_lambda;
#pragma omp parallel for schedule(dynamic)
  for (int cell = 0; cell < cells; ++cell) {
    const int f = cell / (n_tau * n_lambda);
    const int t = (cell / n_lambda) % n_tau;
    const int l = cell % n_lambda;

    PipelineConfig cfg = cfg_template;
    cfg.penalty = cfg.penalty.with_lambda(grid.lambdas[std::size_t(l)]);
    cfg.loss.tau = grid.taus[std::size_t(t)];

    const FoldData& fd = fold_data[std::size_t(f)];
    const FitResult fit = irw_fit(fd.train, cfg);
    const RobustLoss score_loss(LossKind::Huber, cfg.loss.tau);
    result.fold_loss[std::size_t(f)](l, t) = empirical_loss(fd.test, score_loss, fit.beta);
  }

  result.mean_loss = Eigen::MatrixXd::Zero(n_lambda, n_tau);
  for (const auto& m : result.fold_loss) result.mean_loss += m;
  result.mean_loss /= double(folds);

  // argmin; ties go to larger lambda (lower l index) then smaller tau
  int best_l = 0, best_t = 0;
  double best = result.mean_loss(0, 0);
  for (int l = 0; l < n_lambda; ++l)
    for (int t = 0; t < n_tau; ++t)
      if (result.mean_loss(l, t) < best) {
        best = result.mean_loss(l, t);
        best_l = l;
        best_t = t;
      }
  result.lambda = grid.lambdas[std::size_t(best_l)];
  result.tau = grid.taus[std::size_t(best_t)];
  return result;
}

}  // namespace irw
