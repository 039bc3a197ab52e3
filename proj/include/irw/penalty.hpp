#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <string>

namespace irw {

enum class PenaltyKind { L1, Scad, Mcp, CappedL1 };

const char* to_string(PenaltyKind kind);
PenaltyKind penalty_kind_from_string(const std::string& name);
double default_penalty_shape(PenaltyKind kind);  // SCAD 3.7, MC+ 3.0

// Folded-concave penalty p_lambda(t) = lambda^2 * p(t / lambda). Only the
// derivative drives the reweighting scheme; the value is kept for tests.
struct Penalty {
  PenaltyKind kind = PenaltyKind::L1;
  double lambda = 1.0;
  double shape = 0.0;  // 'a' for SCAD (> 2) and MC+ (> 1); unused otherwise

  Penalty() = default;
  Penalty(PenaltyKind k, double lam, double a = 0.0);

  Penalty with_lambda(double lam) const { return Penalty(kind, lam, shape); }

  // p'_lambda(|t|), a per-coordinate regularization level in [0, lambda].
  double weight(double t) const;
  Eigen::VectorXd weight_vector(const Eigen::VectorXd& beta) const;

  // p_lambda(t); used only by the axiom tests.
  double value(double t) const;

  // Smallest multiple of lambda past which the derivative vanishes
  // (a for SCAD/MC+, 1 for capped-l1, +inf for l1).
  double vanishing_threshold() const;
};

}  // namespace irw
