#pragma once

#include <stdexcept>
#include <string>

namespace irw {

// The five robust loss families. Each base loss l is convex with
// l(0) = 0, l'(0) = 0, l''(0) = 1 and a bounded first derivative.
enum class LossKind {
  Huber,
  PseudoHuber1,   // sqrt(1 + x^2) - 1
  PseudoHuber2,   // log(cosh(x))
  SmoothedHuber1, // quadratic-cubic blend, twice differentiable
  SmoothedHuber2, // quartic blend, twice differentiable
};

// Envelope constants of a base loss:
//   |l'(x)| <= deriv_bound                    for all x
//   l''(x)  >= curvature_floor               for |x| <= curvature_radius
//   |l'(x) - x| <= quad_approx_bound * x^2   for all x
struct LossConstants {
  double deriv_bound;
  double curvature_floor;
  double curvature_radius;
  double quad_approx_bound;
};

double base_value(LossKind kind, double x);
double base_deriv(LossKind kind, double x);
double base_second(LossKind kind, double x);
LossConstants loss_constants(LossKind kind);

const char* to_string(LossKind kind);
LossKind loss_kind_from_string(const std::string& name);

// A base loss rescaled by the robustification parameter tau:
// scaled value tau^2 * l(x/tau), so the quadratic region widens with tau
// while the derivative stays bounded by deriv_bound * tau.
struct RobustLoss {
  LossKind kind = LossKind::Huber;
  double tau = 1.0;

  RobustLoss() = default;
  RobustLoss(LossKind k, double t) : kind(k), tau(t) {
    if (!(tau > 0.0)) throw std::invalid_argument("RobustLoss: tau must be positive");
  }

  double value(double x) const { return tau * tau * base_value(kind, x / tau); }
  double deriv(double x) const { return tau * base_deriv(kind, x / tau); }
  double second(double x) const { return base_second(kind, x / tau); }
};

}  // namespace irw
