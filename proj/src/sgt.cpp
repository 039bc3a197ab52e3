#include "irw/sgt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace irw {

namespace {

constexpr double kPi = 3.141592653589793;
constexpr double kCdfTol = 1e-8;

double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }
double beta_fn(double a, double b) { return std::exp(log_beta(a, b)); }

// Adaptive Simpson refinement that records every accepted panel boundary in
// left-to-right order, so the caller gets a partition with panel masses.
struct PanelSink {
  std::vector<double>* xs;
  std::vector<double>* masses;
};

template <typename F>
void adaptive_simpson(const F& f, double a, double fa, double b, double fb, double m, double fm,
                      double whole, double tol, int depth, PanelSink& sink) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) {
    const double refined = left + right + (left + right - whole) / 15.0;
    sink.xs->push_back(b);
    sink.masses->push_back(refined);
    return;
  }
  adaptive_simpson(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1, sink);
  adaptive_simpson(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1, sink);
}

template <typename F>
void integrate_panel(const F& f, double a, double b, double tol, PanelSink& sink) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  adaptive_simpson(f, a, fa, b, fb, m, fm, whole, tol, 40, sink);
}

}  // namespace

SgtSampler::SgtSampler(double mu, double sigma2, double skew, double p_shape, double q_shape)
    : mu_(mu), sigma2_(sigma2), skew_(skew), p_(p_shape), q_(q_shape) {
  if (!(sigma2 > 0.0)) throw std::invalid_argument("SgtSampler: sigma2 must be positive");
  if (!(skew > -1.0 && skew < 1.0)) throw std::invalid_argument("SgtSampler: skew must be in (-1, 1)");
  if (!(p_ > 0.0) || !(q_ > 0.0)) throw std::invalid_argument("SgtSampler: shapes must be positive");
  if (!(p_ * q_ > 2.0))
    throw std::invalid_argument("SgtSampler: p * q must exceed 2 for a finite variance");
  sigma_ = std::sqrt(sigma2);

  // Variance adjustment and mean shift so that E X = mu and Var X = sigma2.
  const double b1 = beta_fn(1.0 / p_, q_);
  const double b2 = beta_fn(2.0 / p_, q_ - 1.0 / p_);
  const double b3 = beta_fn(3.0 / p_, q_ - 2.0 / p_);
  const double inner =
      (3.0 * skew_ * skew_ + 1.0) * (b3 / b1) - 4.0 * skew_ * skew_ * (b2 / b1) * (b2 / b1);
  v_scale_ = std::pow(q_, -1.0 / p_) / std::sqrt(inner);
  m_shift_ = skew_ * v_scale_ * sigma_ * 2.0 * std::pow(q_, 1.0 / p_) * b2 / b1;
  log_norm_ = std::log(p_) -
              std::log(2.0 * v_scale_ * sigma_) - std::log(q_) / p_ - log_beta(1.0 / p_, q_);

  center_ = mu_;
  scale_ = sigma_;
  build_table();
}

double SgtSampler::density(double x) const {
  const double z = x - mu_ + m_shift_;
  const double side = 1.0 + skew_ * ((z >= 0.0) ? 1.0 : -1.0);
  const double base = std::abs(z) / (v_scale_ * sigma_ * side);
  const double t = std::pow(base, p_) / q_;
  return std::exp(log_norm_ - (1.0 / p_ + q_) * std::log1p(t));
}

double SgtSampler::transformed_density(double theta) const {
  const double c = std::cos(theta);
  if (c <= 0.0) return 0.0;
  const double x = center_ + scale_ * std::tan(theta);
  return density(x) * scale_ / (c * c);
}

void SgtSampler::build_table() {
  std::vector<double> xs{-0.5 * kPi};
  std::vector<double> masses;
  PanelSink sink{&xs, &masses};
  auto f = [this](double t) { return transformed_density(t); };

  // coarse panels concentrated around the body of the distribution
  const int coarse = 64;
  for (int i = 0; i < coarse; ++i) {
    const double a = -0.5 * kPi + kPi * double(i) / coarse;
    const double b = -0.5 * kPi + kPi * double(i + 1) / coarse;
    integrate_panel(f, a, b, kCdfTol / coarse, sink);
  }

  theta_ = std::move(xs);
  cum_.assign(theta_.size(), 0.0);
  for (std::size_t i = 1; i < theta_.size(); ++i) cum_[i] = cum_[i - 1] + masses[i - 1];
  const double total = cum_.back();
  if (!(std::abs(total - 1.0) < 1e-6))
    throw std::runtime_error("SgtSampler: density failed to integrate to one");
  for (double& c : cum_) c /= total;

  dens_.resize(theta_.size());
  for (std::size_t i = 0; i < theta_.size(); ++i) dens_[i] = transformed_density(theta_[i]) / total;
}

double SgtSampler::cdf(double x) const {
  const double theta = std::atan((x - center_) / scale_);
  if (theta <= theta_.front()) return 0.0;
  if (theta >= theta_.back()) return 1.0;
  const auto it = std::upper_bound(theta_.begin(), theta_.end(), theta);
  const std::size_t k = std::size_t(it - theta_.begin()) - 1;
  // cubic Hermite in theta using the exact density as the derivative
  const double h = theta_[k + 1] - theta_[k];
  const double s = (theta - theta_[k]) / h;
  const double s2 = s * s, s3 = s2 * s;
  const double value = cum_[k] * (2 * s3 - 3 * s2 + 1) + h * dens_[k] * (s3 - 2 * s2 + s) +
                       cum_[k + 1] * (-2 * s3 + 3 * s2) + h * dens_[k + 1] * (s3 - s2);
  return std::clamp(value, 0.0, 1.0);
}

double SgtSampler::quantile(double u) const {
  u = std::clamp(u, 1e-15, 1.0 - 1e-15);
  const auto it = std::upper_bound(cum_.begin(), cum_.end(), u);
  std::size_t k = std::size_t(it - cum_.begin());
  k = k == 0 ? 0 : k - 1;
  if (k + 1 >= cum_.size()) k = cum_.size() - 2;

  const double h = theta_[k + 1] - theta_[k];
  const double f0 = cum_[k], f1 = cum_[k + 1];
  const double d0 = h * dens_[k], d1 = h * dens_[k + 1];
  // invert the Hermite cubic by safeguarded Newton in s
  double lo = 0.0, hi = 1.0;
  double s = (f1 > f0) ? (u - f0) / (f1 - f0) : 0.5;
  for (int it_n = 0; it_n < 60; ++it_n) {
    const double s2 = s * s, s3 = s2 * s;
    const double val = f0 * (2 * s3 - 3 * s2 + 1) + d0 * (s3 - 2 * s2 + s) +
                       f1 * (-2 * s3 + 3 * s2) + d1 * (s3 - s2) - u;
    if (std::abs(val) < 1e-14) break;
    (val > 0.0 ? hi : lo) = s;
    const double slope = f0 * (6 * s2 - 6 * s) + d0 * (3 * s2 - 4 * s + 1) +
                         f1 * (6 * s - 6 * s2) + d1 * (3 * s2 - 2 * s);
    double next = slope > 0.0 ? s - val / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - s) < 1e-15) { s = next; break; }
    s = next;
  }
  return center_ + scale_ * std::tan(theta_[k] + s * h);
}

double SgtSampler::sample(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  return quantile(unif(rng));
}

}  // namespace irw
