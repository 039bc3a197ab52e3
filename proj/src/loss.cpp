#include "irw/loss.hpp"

#include <cmath>

namespace irw {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

inline double sgn(double x) { return (x > 0.0) - (x < 0.0); }

// log(cosh(x)) without overflow for large |x|.
inline double log_cosh(double x) {
  const double a = std::abs(x);
  return a + std::log1p(std::exp(-2.0 * a)) - 0.6931471805599453;
}

// sech(x)^2 via exp(-2|x|), stable for large |x|.
inline double sech_sq(double x) {
  const double t = std::exp(-2.0 * std::abs(x));
  const double s = 1.0 + t;
  return 4.0 * t / (s * s);
}

}  // namespace

double base_value(LossKind kind, double x) {
  const double a = std::abs(x);
  switch (kind) {
    case LossKind::Huber:
      return a <= 1.0 ? 0.5 * x * x : a - 0.5;
    case LossKind::PseudoHuber1:
      return std::hypot(1.0, x) - 1.0;
    case LossKind::PseudoHuber2:
      return log_cosh(x);
    case LossKind::SmoothedHuber1:
      return a <= 1.0 ? 0.5 * x * x - a * a * a / 6.0 : 0.5 * a - 1.0 / 6.0;
    case LossKind::SmoothedHuber2:
      return a <= kSqrt2 ? 0.5 * x * x - x * x * x * x / 24.0
                         : (2.0 * kSqrt2 / 3.0) * a - 0.5;
  }
  throw std::invalid_argument("base_value: unknown loss kind");
}

double base_deriv(LossKind kind, double x) {
  const double a = std::abs(x);
  switch (kind) {
    case LossKind::Huber:
      return a <= 1.0 ? x : sgn(x);
    case LossKind::PseudoHuber1:
      return x / std::hypot(1.0, x);
    case LossKind::PseudoHuber2:
      return std::tanh(x);
    case LossKind::SmoothedHuber1:
      return a <= 1.0 ? x - sgn(x) * 0.5 * x * x : 0.5 * sgn(x);
    case LossKind::SmoothedHuber2:
      return a <= kSqrt2 ? x - x * x * x / 6.0 : (2.0 * kSqrt2 / 3.0) * sgn(x);
  }
  throw std::invalid_argument("base_deriv: unknown loss kind");
}

double base_second(LossKind kind, double x) {
  const double a = std::abs(x);
  switch (kind) {
    case LossKind::Huber:
      // closed quadratic region: second derivative is 1 at |x| = 1
      return a <= 1.0 ? 1.0 : 0.0;
    case LossKind::PseudoHuber1: {
      const double h = std::hypot(1.0, x);
      return 1.0 / (h * h * h);
    }
    case LossKind::PseudoHuber2:
      return sech_sq(x);
    case LossKind::SmoothedHuber1:
      return a <= 1.0 ? 1.0 - a : 0.0;
    case LossKind::SmoothedHuber2:
      return a <= kSqrt2 ? 1.0 - 0.5 * x * x : 0.0;
  }
  throw std::invalid_argument("base_second: unknown loss kind");
}

LossConstants loss_constants(LossKind kind) {
  switch (kind) {
    case LossKind::Huber:
      return {1.0, 1.0, 1.0, 1.0};
    case LossKind::PseudoHuber1:
      return {1.0, 0.3535533905932738, 1.0, 0.45};  // floor = 2^{-3/2}
    case LossKind::PseudoHuber2:
      // Taylor remainder constant sup|l'''| / 2 with sup|l'''| = 4/(3 sqrt 3);
      // the numerically tight value of |l'(x) - x| / x^2 is 0.26498
      return {1.0, sech_sq(1.0), 1.0, 0.3849001794597505};
    case LossKind::SmoothedHuber1:
      return {0.5, 0.5, 0.5, 0.5};
    case LossKind::SmoothedHuber2:
      return {2.0 * kSqrt2 / 3.0, 0.5, 1.0, 1.0 / kSqrt2};
  }
  throw std::invalid_argument("loss_constants: unknown loss kind");
}

const char* to_string(LossKind kind) {
  switch (kind) {
    case LossKind::Huber: return "huber";
    case LossKind::PseudoHuber1: return "pseudo-huber-1";
    case LossKind::PseudoHuber2: return "pseudo-huber-2";
    case LossKind::SmoothedHuber1: return "smoothed-huber-1";
    case LossKind::SmoothedHuber2: return "smoothed-huber-2";
  }
  return "?";
}

LossKind loss_kind_from_string(const std::string& name) {
  if (name == "huber") return LossKind::Huber;
  if (name == "pseudo-huber-1") return LossKind::PseudoHuber1;
  if (name == "pseudo-huber-2") return LossKind::PseudoHuber2;
  if (name == "smoothed-huber-1") return LossKind::SmoothedHuber1;
  if (name == "smoothed-huber-2") return LossKind::SmoothedHuber2;
  throw std::invalid_argument("unknown loss kind: " + name);
}

}  // namespace irw
