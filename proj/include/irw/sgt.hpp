#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace irw {

// Skewed generalized t distribution, adjusted so that the mean is `mu` and
// the variance is `sigma2` for any admissible skew/shape combination.
// Sampling inverts a CDF tabulated once per parameter set by adaptive
// quadrature of the closed-form density (absolute tolerance 1e-8); the
// real line is mapped through x = center + scale * tan(theta) so the
// polynomial tails integrate on a bounded interval.
class SgtSampler {
 public:
  // skew in (-1, 1); p_shape > 0; requires p_shape * q_shape > 2 so the
  // variance exists.
  SgtSampler(double mu, double sigma2, double skew, double p_shape, double q_shape);

  double density(double x) const;
  double cdf(double x) const;
  double quantile(double u) const;
  double sample(std::mt19937_64& rng) const;

  double mean() const { return mu_; }
  double variance() const { return sigma2_; }

 private:
  double mu_, sigma2_, sigma_, skew_, p_, q_;
  double v_scale_;  // variance adjustment
  double m_shift_;  // mean-centering shift
  double log_norm_; // log of the density normalizing constant

  double center_, scale_;       // tan-transform parameters
  std::vector<double> theta_;   // increasing grid on (-pi/2, pi/2)
  std::vector<double> cum_;     // CDF at theta_, normalized to end at 1
  std::vector<double> dens_;    // d(CDF)/d(theta) at theta_

  double transformed_density(double theta) const;
  void build_table();
};

}  // namespace irw
