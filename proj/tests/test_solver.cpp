#include <doctest.h>

#include <cmath>
#include <random>

#include "irw/objective.hpp"
#include "irw/solver.hpp"
#include "oracles.hpp"

using irw::Dataset;
using irw::LossKind;
using irw::RobustLoss;
using irw::SolverConfig;

namespace {

const std::vector<LossKind> kAllKinds = {
    LossKind::Huber, LossKind::PseudoHuber1, LossKind::PseudoHuber2, LossKind::SmoothedHuber1,
    LossKind::SmoothedHuber2};

Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(Eigen::Index(xs.size()));
  Eigen::Index k = 0;
  for (double x : xs) v[k++] = x;
  return v;
}

Dataset one_point(double y, double x) {
  Dataset d;
  d.y = vec({y});
  d.X.resize(1, 1);
  d.X(0, 0) = x;
  return d;
}

}  // namespace

TEST_CASE("soft thresholding") {
  const Eigen::VectorXd out =
      irw::soft_threshold(vec({2.0, -0.3, 0.6}), vec({0.5, 0.5, 0.5}));
  CHECK(out[0] == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(out[1] == 0.0);
  CHECK(out[2] == doctest::Approx(0.1).epsilon(1e-12));

  const Eigen::VectorXd v = vec({1.0, -2.0, 0.0});
  CHECK((irw::soft_threshold(v, vec({0.0, 0.0, 0.0})).array() == v.array()).all());
  CHECK(irw::soft_threshold(vec({0.0, 0.0}), vec({0.3, 0.3})).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(irw::soft_threshold(vec({1.0}), vec({0.1, 0.1})), std::invalid_argument);
}

TEST_CASE("majorizer value") {
  const RobustLoss huber(LossKind::Huber, 1.0);
  const auto inst = oracles::random_instance(10, 3, 1, 1.0, 1);
  Dataset data{inst.y, inst.X};
  const Eigen::VectorXd anchor = vec({0.2, -0.1, 0.4});
  const Eigen::VectorXd beta = vec({0.5, 0.0, -0.3});

  CHECK(irw::majorizer_value(data, huber, anchor, 3.0, anchor) ==
        irw::empirical_loss(data, huber, anchor));

  const double extra = 0.5 * (beta - anchor).squaredNorm();
  CHECK(irw::majorizer_value(data, huber, beta, 2.0, anchor) -
            irw::majorizer_value(data, huber, beta, 1.0, anchor) ==
        doctest::Approx(extra).epsilon(1e-12));

  // hand case: loss 0.5, gradient -1, phi = 1, displacement 1
  Dataset unit = one_point(1.0, 1.0);
  CHECK(irw::majorizer_value(unit, huber, vec({1.0}), 1.0, vec({0.0})) ==
        doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("single LAMM iteration") {
  SolverConfig cfg;
  cfg.phi0 = 1e-4;
  cfg.gamma_u = 2.0;

  SUBCASE("hand-evaluated quadratic-region update") {
    Dataset data = one_point(1.0, 1.0);
    const RobustLoss huber(LossKind::Huber, 2.0);
    // phi_prev = gamma_u so the step starts exactly at phi = 1
    const auto step = irw::lamm_iteration(data, huber, vec({0.2}), vec({0.0}), 2.0, cfg);
    CHECK(step.beta[0] == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(step.phi == doctest::Approx(1.0));
    CHECK(step.backtracks == 0);
  }

  SUBCASE("zero gradient is a fixed point with zero weights") {
    Dataset data = one_point(2.0, 1.0);
    const RobustLoss huber(LossKind::Huber, 1.0);
    const auto step = irw::lamm_iteration(data, huber, vec({0.0}), vec({2.0}), 1.0, cfg);
    CHECK(step.beta[0] == doctest::Approx(2.0).epsilon(1e-15));
  }

  SUBCASE("phi accepted on the first try keeps the deflated value") {
    const auto inst = oracles::random_instance(30, 4, 17, 0.5, 2);
    Dataset data{inst.y, inst.X};
    const RobustLoss huber(LossKind::Huber, 1e6);
    // huge phi_prev: after deflation it still majorizes, so no backtracks
    const double phi_prev = 1e6;
    const auto step =
        irw::lamm_iteration(data, huber, vec({0.1, 0.1, 0.1, 0.1}), vec({0.0, 0.0, 0.0, 0.0}),
                            phi_prev, cfg);
    CHECK(step.backtracks == 0);
    CHECK(step.phi == doctest::Approx(std::max(cfg.phi0, phi_prev / cfg.gamma_u)));
    CHECK(step.majorization_gap >= 0.0);
  }
}

TEST_CASE("weighted-l1 solves") {
  SolverConfig cfg;
  cfg.eps = 1e-8;

  SUBCASE("origin is returned immediately when it is a KKT point") {
    const auto inst = oracles::random_instance(40, 6, 23, 1.0, 2);
    Dataset data{inst.y, inst.X};
    const RobustLoss huber(LossKind::Huber, 1e6);
    const Eigen::VectorXd g0 = irw::empirical_gradient(data, huber, Eigen::VectorXd::Zero(6));
    const double big = g0.cwiseAbs().maxCoeff();
    const Eigen::VectorXd w = Eigen::VectorXd::Constant(6, big);
    const auto result = irw::solve_weighted_l1(data, huber, w, Eigen::VectorXd::Zero(6), cfg);
    CHECK(result.converged);
    CHECK(result.omega == 0.0);
    CHECK(result.beta.cwiseAbs().maxCoeff() == 0.0);
    CHECK(result.trace.iterations.empty());
  }

  SUBCASE("quadratic regime matches coordinate descent") {
    for (unsigned seed : {100u, 101u, 102u}) {
      const auto inst = oracles::random_instance(50, 5, seed, 0.8, 2);
      Dataset data{inst.y, inst.X};
      const double tau = 1e7 * (1.0 + inst.y.cwiseAbs().maxCoeff());
      const RobustLoss huber(LossKind::Huber, tau);
      Eigen::VectorXd w(5);
      w << 0.12, 0.05, 0.2, 0.02, 0.3;
      SolverConfig tight = cfg;
      tight.eps = 1e-9;
      const auto result = irw::solve_weighted_l1(data, huber, w, Eigen::VectorXd::Zero(5), tight);
      const Eigen::VectorXd cd = oracles::cd_lasso(inst.X, inst.y, w, 1e-14);
      CHECK(result.converged);
      CHECK((result.beta - cd).cwiseAbs().maxCoeff() <= 1e-4);
    }
  }

  SUBCASE("objective decreases and majorization holds for every loss kind") {
    std::mt19937_64 rng(7);
    for (LossKind kind : kAllKinds) {
      CAPTURE(irw::to_string(kind));
      for (int t = 0; t < 10; ++t) {
        const auto inst = oracles::random_instance(40, 10, unsigned(1000 + 10 * t), 1.5, 3);
        Dataset data{inst.y, inst.X};
        const RobustLoss loss(kind, 1.0 + (t % 3));
        std::uniform_real_distribution<double> unif(0.02, 0.3);
        Eigen::VectorXd w(10);
        for (Eigen::Index j = 0; j < 10; ++j) w[j] = unif(rng);
        SolverConfig quick = cfg;
        quick.eps = 1e-6;
        const auto result = irw::solve_weighted_l1(data, loss, w, Eigen::VectorXd::Zero(10), quick);
        REQUIRE(!result.trace.iterations.empty());
        double prev = std::numeric_limits<double>::infinity();
        for (const auto& it : result.trace.iterations) {
          CHECK(it.objective <= prev + 1e-12);
          CHECK(it.majorization_gap >= -1e-12);
          prev = it.objective;
        }
        CHECK(result.omega == result.trace.iterations.back().omega);
        if (result.converged) CHECK(result.omega <= quick.eps);
      }
    }
  }

  SUBCASE("stopping measure is controlled by the step length") {
    // omega(beta_k) <= (phi_k + L) * ||beta_k - beta_{k-1}||_2 with
    // L = ||X||_2^2 / n an upper bound on the gradient Lipschitz constant.
    // The phi * 1e-14 allowance covers the rounding floor of the update
    // itself, which matters only once steps reach ulp scale.
    const auto inst = oracles::random_instance(60, 8, 321, 1.0, 3);
    Dataset data{inst.y, inst.X};
    const double sigma_max = inst.X.jacobiSvd().singularValues()[0];
    const double L = sigma_max * sigma_max / 60.0;
    for (LossKind kind : kAllKinds) {
      const RobustLoss loss(kind, 2.0);
      const Eigen::VectorXd w = Eigen::VectorXd::Constant(8, 0.05);
      SolverConfig cfg2;
      cfg2.eps = 1e-8;
      Eigen::VectorXd beta = Eigen::VectorXd::Zero(8);
      double phi = cfg2.phi0;
      for (int k = 0; k < 40; ++k) {
        const auto step = irw::lamm_iteration(data, loss, w, beta, phi, cfg2);
        if ((step.beta.array() == beta.array()).all()) break;  // fp fixed point
        const double omega = irw::suboptimality(data, loss, w, step.beta);
        const double len = (step.beta - beta).norm();
        CHECK(omega <= (step.phi + L) * len + step.phi * 1e-14);
        beta = step.beta;
        phi = step.phi;
        if (omega <= cfg2.eps) break;
      }
    }
  }

  SUBCASE("iteration budget exhaustion is flagged, not thrown") {
    const auto inst = oracles::random_instance(50, 12, 55, 1.0, 4);
    Dataset data{inst.y, inst.X};
    const RobustLoss huber(LossKind::Huber, 1.0);
    SolverConfig starved = cfg;
    starved.eps = 1e-14;
    starved.max_inner_iters = 2;
    const auto result = irw::solve_weighted_l1(data, huber, Eigen::VectorXd::Constant(12, 0.01),
                                               Eigen::VectorXd::Zero(12), starved);
    CHECK(!result.converged);
    CHECK(result.trace.iterations.size() == 2);
  }

  SUBCASE("contract violations throw") {
    const auto inst = oracles::random_instance(10, 2, 9);
    Dataset data{inst.y, inst.X};
    const RobustLoss huber(LossKind::Huber, 1.0);
    CHECK_THROWS_AS(irw::solve_weighted_l1(data, huber, vec({-0.1, 0.1}),
                                           Eigen::VectorXd::Zero(2), cfg),
                    std::invalid_argument);
    CHECK_THROWS_AS(irw::solve_weighted_l1(data, huber, vec({0.1}), Eigen::VectorXd::Zero(2), cfg),
                    std::invalid_argument);
    SolverConfig bad = cfg;
    bad.gamma_u = 1.0;
    CHECK_THROWS_AS(irw::solve_weighted_l1(data, huber, vec({0.1, 0.1}),
                                           Eigen::VectorXd::Zero(2), bad),
                    std::invalid_argument);
  }
}
