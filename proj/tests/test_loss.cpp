#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "irw/loss.hpp"
#include "oracles.hpp"

using irw::LossKind;
using irw::RobustLoss;

namespace {

const std::vector<LossKind> kAllKinds = {
    LossKind::Huber, LossKind::PseudoHuber1, LossKind::PseudoHuber2, LossKind::SmoothedHuber1,
    LossKind::SmoothedHuber2};

}  // namespace

TEST_CASE("base values at pinned points") {
  CHECK(irw::base_value(LossKind::Huber, 0.5) == doctest::Approx(0.125).epsilon(1e-14));
  CHECK(irw::base_value(LossKind::Huber, 2.0) == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(irw::base_value(LossKind::PseudoHuber1, 0.0) == 0.0);
  // continuity across the blend point
  CHECK(irw::base_value(LossKind::SmoothedHuber1, 1.0) == doctest::Approx(1.0 / 3.0));
  CHECK(irw::base_value(LossKind::SmoothedHuber2, std::sqrt(2.0)) == doctest::Approx(5.0 / 6.0));
}

TEST_CASE("base derivatives at pinned points") {
  CHECK(irw::base_deriv(LossKind::Huber, 3.0) == 1.0);
  CHECK(irw::base_deriv(LossKind::PseudoHuber2, 0.0) == 0.0);
  CHECK(irw::base_deriv(LossKind::SmoothedHuber2, 1.0) ==
        doctest::Approx(1.0 - 1.0 / 6.0).epsilon(1e-14));
}

TEST_CASE("base second derivatives at pinned points") {
  CHECK(irw::base_second(LossKind::Huber, 0.5) == 1.0);
  CHECK(irw::base_second(LossKind::Huber, 1.0) == 1.0);  // closed region at the kink
  CHECK(irw::base_second(LossKind::SmoothedHuber1, 0.25) == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(irw::base_second(LossKind::PseudoHuber1, 0.0) == 1.0);
}

TEST_CASE("every family is normalized at the origin") {
  for (LossKind kind : kAllKinds) {
    CAPTURE(irw::to_string(kind));
    CHECK(irw::base_value(kind, 0.0) == 0.0);
    CHECK(irw::base_deriv(kind, 0.0) == 0.0);
    CHECK(irw::base_second(kind, 0.0) == 1.0);
  }
}

TEST_CASE("scaled forms") {
  const RobustLoss huber2(LossKind::Huber, 2.0);
  CHECK(huber2.value(1.0) == doctest::Approx(0.5).epsilon(1e-14));
  const RobustLoss huber1(LossKind::Huber, 1.0);
  CHECK(huber1.value(5.0) == doctest::Approx(4.5).epsilon(1e-14));

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unif(-8.0, 8.0);
  for (LossKind kind : kAllKinds) {
    const RobustLoss unit(kind, 1.0);
    const RobustLoss scaled(kind, 3.25);
    for (int i = 0; i < 50; ++i) {
      const double x = unif(rng);
      CHECK(unit.value(x) == irw::base_value(kind, x));
      CHECK(scaled.value(x) ==
            doctest::Approx(3.25 * 3.25 * irw::base_value(kind, x / 3.25)).epsilon(1e-14));
      CHECK(scaled.deriv(x) == doctest::Approx(3.25 * irw::base_deriv(kind, x / 3.25)));
      CHECK(scaled.second(x) == irw::base_second(kind, x / 3.25));
    }
  }
  CHECK_THROWS_AS(RobustLoss(LossKind::Huber, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(RobustLoss(LossKind::Huber, -1.0), std::invalid_argument);
}

TEST_CASE("finite differences match the derivative away from kinks") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> unif(-10.0, 10.0);
  const double h = 1e-5;
  for (LossKind kind : kAllKinds) {
    CAPTURE(irw::to_string(kind));
    int checked = 0;
    while (checked < 100) {
      const double x = unif(rng);
      if (kind == LossKind::Huber && std::abs(std::abs(x) - 1.0) <= 2.0 * h) continue;
      const double fd =
          oracles::central_diff([&](double t) { return irw::base_value(kind, t); }, x, h);
      CHECK(std::abs(fd - irw::base_deriv(kind, x)) <= 1e-6);
      ++checked;
    }
  }
}

TEST_CASE("derivative envelope constants") {
  for (LossKind kind : kAllKinds) {
    CAPTURE(irw::to_string(kind));
    const irw::LossConstants c = irw::loss_constants(kind);

    double sup = 0.0;
    auto scan = [&](double x) {
      const double d = std::abs(irw::base_deriv(kind, x));
      CHECK(d <= c.deriv_bound);
      sup = std::max(sup, d);
      CHECK(irw::base_second(kind, x) >= 0.0);  // convexity
      CHECK(std::abs(irw::base_deriv(kind, x) - x) <= c.quad_approx_bound * x * x + 1e-12);
    };
    for (int i = 0; i <= 10000; ++i) scan(-50.0 + 0.01 * double(i));
    // the pseudo-Huber derivatives attain their bound only in the limit
    scan(1e6);
    scan(-1e6);
    CHECK(sup == doctest::Approx(c.deriv_bound).epsilon(1e-9));

    for (int i = 0; i <= 200; ++i) {
      const double x = -c.curvature_radius + double(i) / 100.0 * c.curvature_radius;
      CHECK(irw::base_second(kind, x) >= c.curvature_floor - 1e-12);
    }
  }
}

TEST_CASE("scaled derivative bound") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(-100.0, 100.0);
  for (LossKind kind : kAllKinds) {
    const irw::LossConstants c = irw::loss_constants(kind);
    for (double tau : {0.2, 1.0, 7.5}) {
      const RobustLoss loss(kind, tau);
      for (int i = 0; i < 100; ++i) CHECK(std::abs(loss.deriv(unif(rng))) <= c.deriv_bound * tau);
    }
  }
}

TEST_CASE("loss names round-trip") {
  for (LossKind kind : kAllKinds) CHECK(irw::loss_kind_from_string(irw::to_string(kind)) == kind);
  CHECK_THROWS_AS(irw::loss_kind_from_string("cauchy"), std::invalid_argument);
}
