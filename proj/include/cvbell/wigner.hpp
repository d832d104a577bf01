#pragma once

// Direct evaluation of displaced-parity expectations from the Gaussian
// Wigner function. Independent of the closed forms in bell.hpp and valid
// for arbitrary (not only symmetric) zero-mean covariance matrices.

#include <complex>

#include <Eigen/Dense>

#include "cvbell/gaussian_state.hpp"

namespace cvbell {

struct PhasePoint {
  std::complex<double> alpha_a;
  std::complex<double> alpha_b;

  // (sqrt2 Re alpha_a, sqrt2 Im alpha_a, sqrt2 Re alpha_b, sqrt2 Im alpha_b)
  [[nodiscard]] Eigen::Vector4d quadratures() const;
};

// Parity expectation (pi^2/4) W(alpha_a, alpha_b), normalized so the value
// at the origin is 1 / (4 sqrt(det sigma)): exactly 1 for pure states.
class DisplacedParity {
 public:
  // Throws SingularState if sigma is not positive definite, is
  // ill-conditioned, or has det sigma < 1e-300.
  explicit DisplacedParity(const CovarianceMatrix& cm);

  [[nodiscard]] double at_origin() const { return origin_; }
  [[nodiscard]] double operator()(const PhasePoint& p) const;

  // One half of u^T sigma^{-1} u: the decay rate in I of the parity at the
  // displacement sqrt(I) * u.
  [[nodiscard]] double decay_rate(const Eigen::Vector4d& unit_quadratures) const;

 private:
  Eigen::Matrix4d inverse_;
  double origin_;
};

[[nodiscard]] double parity_expectation(const CovarianceMatrix& cm, const PhasePoint& p);

// <P(0,0)> + <P(sqrtI,0)> + <P(0,-sqrtI)> - <P(sqrtI,-sqrtI)> with sqrt(I) real.
[[nodiscard]] double bell_combination(const CovarianceMatrix& cm, double intensity);

struct NumericBellMax {
  double intensity;
  double value;
};

// Golden-section maximization of bell_combination over
// I in [0, 10 sqrt(det sigma_X)], sigma_X the (X_a, X_b) sub-block, to a
// bracket width of 1e-12.
[[nodiscard]] NumericBellMax bell_max_numeric(const CovarianceMatrix& cm);

}  // namespace cvbell
