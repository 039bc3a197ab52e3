#include <doctest.h>

#include <cmath>
#include <random>

#include "irw/objective.hpp"
#include "oracles.hpp"

using irw::Dataset;
using irw::LossKind;
using irw::RobustLoss;

namespace {

const std::vector<LossKind> kAllKinds = {
    LossKind::Huber, LossKind::PseudoHuber1, LossKind::PseudoHuber2, LossKind::SmoothedHuber1,
    LossKind::SmoothedHuber2};

Dataset tiny(const std::vector<double>& y, const std::vector<std::vector<double>>& rows) {
  Dataset d;
  d.y = Eigen::Map<const Eigen::VectorXd>(y.data(), Eigen::Index(y.size()));
  d.X.resize(Eigen::Index(rows.size()), Eigen::Index(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) d.X(Eigen::Index(i), Eigen::Index(j)) = rows[i][j];
  return d;
}

Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(Eigen::Index(xs.size()));
  Eigen::Index k = 0;
  for (double x : xs) v[k++] = x;
  return v;
}

}  // namespace

TEST_CASE("empirical loss at pinned points") {
  const RobustLoss huber(LossKind::Huber, 1.0);
  CHECK(irw::empirical_loss(tiny({0.0}, {{1.0}}), huber, vec({0.0})) == 0.0);
  CHECK(irw::empirical_loss(tiny({1.0, -1.0}, {{1.0}, {1.0}}), huber, vec({0.0})) ==
        doctest::Approx(0.5).epsilon(1e-14));
  CHECK(irw::empirical_loss(tiny({3.0}, {{1.0}}), huber, vec({0.0})) ==
        doctest::Approx(2.5).epsilon(1e-14));
  CHECK_THROWS_AS(irw::empirical_loss(tiny({1.0}, {{1.0}}), huber, vec({0.0, 0.0})),
                  std::invalid_argument);
}

TEST_CASE("empirical gradient at pinned points") {
  const RobustLoss huber(LossKind::Huber, 1.0);
  const Dataset zero_resid = tiny({2.0, -4.0}, {{2.0, 1.0}, {-4.0, 3.0}});
  const Eigen::VectorXd g0 = irw::empirical_gradient(zero_resid, huber, vec({1.0, 0.0}));
  CHECK(g0.cwiseAbs().maxCoeff() == 0.0);

  const Eigen::VectorXd g1 = irw::empirical_gradient(tiny({2.0}, {{1.0}}), huber, vec({0.0}));
  CHECK(g1[0] == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("gradient matches finite differences for every loss kind") {
  std::mt19937_64 rng(101);
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto inst = oracles::random_instance(25, 4, 2024, 1.0, 2);
  Dataset data{inst.y, inst.X};
  for (LossKind kind : kAllKinds) {
    CAPTURE(irw::to_string(kind));
    const RobustLoss loss(kind, 1.7);
    for (int t = 0; t < 20; ++t) {
      Eigen::VectorXd beta(4);
      for (Eigen::Index j = 0; j < 4; ++j) beta[j] = normal(rng);
      const Eigen::VectorXd g = irw::empirical_gradient(data, loss, beta);
      const Eigen::VectorXd fd = oracles::fd_gradient(
          [&](const Eigen::VectorXd& b) { return irw::empirical_loss(data, loss, b); }, beta);
      const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
      CHECK((g - fd).cwiseAbs().maxCoeff() / scale <= 1e-5);
    }
  }
}

TEST_CASE("suboptimality closed form") {
  SUBCASE("pinned example with gradient (0.7, -0.2)") {
    const Eigen::VectorXd beta = vec({0.0, 0.0});
    const Eigen::VectorXd g = vec({0.7, -0.2});
    const Eigen::VectorXd w = vec({0.5, 0.5});
    CHECK(irw::suboptimality_from_gradient(g, w, beta) == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(oracles::grid_suboptimality(g, w, beta) == doctest::Approx(0.2).epsilon(1e-3));
  }

  SUBCASE("exact KKT point gives zero") {
    const Eigen::VectorXd g = vec({-0.5, 0.3});
    const Eigen::VectorXd w = vec({0.5, 0.5});
    const Eigen::VectorXd beta = vec({1.0, 0.0});
    CHECK(irw::suboptimality_from_gradient(g, w, beta) == 0.0);
  }

  SUBCASE("pinned on-support example") {
    CHECK(irw::suboptimality_from_gradient(vec({0.3}), vec({0.5}), vec({1.0})) ==
          doctest::Approx(0.8).epsilon(1e-14));
  }

  SUBCASE("matches the subgradient grid search on random cases") {
    std::mt19937_64 rng(55);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int t = 0; t < 25; ++t) {
      const Eigen::VectorXd g = vec({unif(rng), unif(rng)});
      const Eigen::VectorXd w = vec({std::abs(unif(rng)), std::abs(unif(rng))});
      Eigen::VectorXd beta = vec({0.0, 0.0});
      if (t % 3 == 1) beta[0] = unif(rng);
      const double closed = irw::suboptimality_from_gradient(g, w, beta);
      const double grid = oracles::grid_suboptimality(g, w, beta);
      CHECK(closed <= grid + 1e-12);
      CHECK(grid - closed <= 1e-3 * (1.0 + w.maxCoeff()));
    }
  }
}

TEST_CASE("suboptimality vanishes exactly at the optimum") {
  SUBCASE("one dimension, analytic solution confirmed by a grid search") {
    const auto inst = oracles::random_instance(40, 1, 90, 0.7, 1);
    Dataset data{inst.y, inst.X};
    const double tau = 1e8;  // quadratic regime
    const RobustLoss loss(LossKind::Huber, tau);
    const double lambda = 0.2;
    const double rho = inst.X.col(0).dot(inst.y) / 40.0;
    const double a = inst.X.col(0).squaredNorm() / 40.0;
    const double mag = std::abs(rho) - lambda;
    const double opt = mag > 0 ? (rho > 0 ? mag : -mag) / a : 0.0;
    CHECK(irw::suboptimality(data, loss, vec({lambda}), vec({opt})) <= 1e-12);
    CHECK(irw::suboptimality(data, loss, vec({lambda}), vec({opt + 0.1})) > 1e-3);

    // brute-force minimizer of the penalized objective lands on the same spot
    double grid_best = 1e300, grid_arg = 0.0;
    for (double b = -3.0; b <= 3.0; b += 1e-4) {
      const double value = irw::penalized_objective(data, loss, vec({lambda}), vec({b}));
      if (value < grid_best) {
        grid_best = value;
        grid_arg = b;
      }
    }
    CHECK(std::abs(grid_arg - opt) <= 1e-4);
  }
  SUBCASE("two dimensions, coordinate-descent solution") {
    const auto inst = oracles::random_instance(60, 2, 91, 0.5, 2);
    Dataset data{inst.y, inst.X};
    const RobustLoss loss(LossKind::Huber, 1e8);
    const Eigen::VectorXd w = vec({0.15, 0.15});
    const Eigen::VectorXd opt = oracles::cd_lasso(inst.X, inst.y, w, 1e-15);
    CHECK(irw::suboptimality(data, loss, w, opt) <= 1e-10);
  }
}

TEST_CASE("penalized objective") {
  const RobustLoss huber(LossKind::Huber, 1.0);
  Dataset data = tiny({1.0, -1.0}, {{1.0, 0.0}, {0.0, 1.0}});
  const Eigen::VectorXd beta0 = vec({0.0, 0.0});
  CHECK(irw::penalized_objective(data, huber, vec({0.0, 0.0}), beta0) ==
        irw::empirical_loss(data, huber, beta0));
  // loss 0.7 plus weighted l1 of (2, -3) with unit weights
  Dataset one = tiny({1.2}, {{1.0, 1.0}});  // residual 1.2 - (2 - 3) = 2.2 -> loss 1.7
  const Eigen::VectorXd beta = vec({2.0, -3.0});
  CHECK(irw::penalized_objective(one, huber, vec({1.0, 1.0}), beta) ==
        doctest::Approx(irw::empirical_loss(one, huber, beta) + 5.0).epsilon(1e-14));
}

TEST_CASE("penalized objective is convex along segments") {
  std::mt19937_64 rng(77);
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto inst = oracles::random_instance(30, 5, 2030, 1.0, 2);
  Dataset data{inst.y, inst.X};
  Eigen::VectorXd w(5);
  for (Eigen::Index j = 0; j < 5; ++j) w[j] = 0.1 + 0.1 * double(j);
  for (LossKind kind : kAllKinds) {
    const RobustLoss loss(kind, 2.2);
    for (int t = 0; t < 20; ++t) {
      Eigen::VectorXd a(5), b(5);
      for (Eigen::Index j = 0; j < 5; ++j) {
        a[j] = normal(rng);
        b[j] = normal(rng);
      }
      const double mid = irw::penalized_objective(data, loss, w, 0.5 * (a + b));
      const double ends = 0.5 * (irw::penalized_objective(data, loss, w, a) +
                                 irw::penalized_objective(data, loss, w, b));
      CHECK(mid <= ends + 1e-12);
    }
  }
}

TEST_CASE("openmp kernels agree with the serial reference bit for bit") {
  for (auto [n, d] : {std::pair<Eigen::Index, Eigen::Index>{500, 20},
                      std::pair<Eigen::Index, Eigen::Index>{30000, 40}}) {
    const auto inst = oracles::random_instance(n, d, unsigned(n + d), 1.0, d / 3);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(d);
    for (Eigen::Index j = 0; j < d; j += 2) beta[j] = normal(rng);
    const RobustLoss loss(LossKind::SmoothedHuber2, 1.3);

    const Eigen::VectorXd r_s = irw::kernels::residuals_serial(inst.X, inst.y, beta);
    const Eigen::VectorXd r_p = irw::kernels::residuals(inst.X, inst.y, beta);
    CHECK((r_s.array() == r_p.array()).all());
    CHECK(irw::kernels::loss_sum_serial(loss, r_s) == irw::kernels::loss_sum(loss, r_p));
    const Eigen::VectorXd g_s = irw::kernels::gradient_serial(inst.X, loss, r_s);
    const Eigen::VectorXd g_p = irw::kernels::gradient(inst.X, loss, r_p);
    CHECK((g_s.array() == g_p.array()).all());
  }
}
