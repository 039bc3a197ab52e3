#include "irw/penalty.hpp"

#include <cmath>
#include <limits>

namespace irw {

namespace {

// Base derivative p'(u) for u = |t| / lambda >= 0.
double base_weight(PenaltyKind kind, double shape, double u) {
  switch (kind) {
    case PenaltyKind::L1:
      return 1.0;
    case PenaltyKind::Scad:
      if (u <= 1.0) return 1.0;
      if (u >= shape) return 0.0;
      return (shape - u) / (shape - 1.0);
    case PenaltyKind::Mcp:
      return u >= shape ? 0.0 : 1.0 - u / shape;
    case PenaltyKind::CappedL1:
      // closed indicator: derivative is 1 at u = 1
      return u <= 1.0 ? 1.0 : 0.0;
  }
  throw std::invalid_argument("base_weight: unknown penalty kind");
}

double base_value(PenaltyKind kind, double shape, double u) {
  switch (kind) {
    case PenaltyKind::L1:
      return u;
    case PenaltyKind::Scad: {
      if (u <= 1.0) return u;
      if (u >= shape) return 0.5 * (shape + 1.0);
      return 1.0 + (shape * (u - 1.0) - 0.5 * (u * u - 1.0)) / (shape - 1.0);
    }
    case PenaltyKind::Mcp:
      return u >= shape ? 0.5 * shape : u - 0.5 * u * u / shape;
    case PenaltyKind::CappedL1:
      return std::min(1.0, u);
  }
  throw std::invalid_argument("base_value: unknown penalty kind");
}

}  // namespace

Penalty::Penalty(PenaltyKind k, double lam, double a) : kind(k), lambda(lam), shape(a) {
  if (!(lambda > 0.0)) throw std::invalid_argument("Penalty: lambda must be positive");
  if (shape == 0.0) shape = default_penalty_shape(kind);
  if (kind == PenaltyKind::Scad && !(shape > 2.0))
    throw std::invalid_argument("Penalty: SCAD requires shape a > 2");
  if (kind == PenaltyKind::Mcp && !(shape > 1.0))
    throw std::invalid_argument("Penalty: MC+ requires shape a > 1");
}

double Penalty::weight(double t) const {
  return lambda * base_weight(kind, shape, std::abs(t) / lambda);
}

Eigen::VectorXd Penalty::weight_vector(const Eigen::VectorXd& beta) const {
  Eigen::VectorXd w(beta.size());
  for (Eigen::Index j = 0; j < beta.size(); ++j) w[j] = weight(beta[j]);
  return w;
}

double Penalty::value(double t) const {
  return lambda * lambda * base_value(kind, shape, std::abs(t) / lambda);
}

double Penalty::vanishing_threshold() const {
  switch (kind) {
    case PenaltyKind::L1: return std::numeric_limits<double>::infinity();
    case PenaltyKind::Scad: return shape;
    case PenaltyKind::Mcp: return shape;
    case PenaltyKind::CappedL1: return 1.0;
  }
  return std::numeric_limits<double>::infinity();
}

const char* to_string(PenaltyKind kind) {
  switch (kind) {
    case PenaltyKind::L1: return "l1";
    case PenaltyKind::Scad: return "scad";
    case PenaltyKind::Mcp: return "mcp";
    case PenaltyKind::CappedL1: return "capped-l1";
  }
  return "?";
}

PenaltyKind penalty_kind_from_string(const std::string& name) {
  if (name == "l1") return PenaltyKind::L1;
  if (name == "scad") return PenaltyKind::Scad;
  if (name == "mcp") return PenaltyKind::Mcp;
  if (name == "capped-l1") return PenaltyKind::CappedL1;
  throw std::invalid_argument("unknown penalty kind: " + name);
}

double default_penalty_shape(PenaltyKind kind) {
  switch (kind) {
    case PenaltyKind::Scad: return 3.7;
    case PenaltyKind::Mcp: return 3.0;
    default: return 0.0;
  }
}

}  // namespace irw
