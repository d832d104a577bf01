#pragma once

// Test-only generators and brute-force references. Nothing here calls into
// the routines it is used to check.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "cvbell/gaussian_state.hpp"

namespace cvbell::testing {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Symmetric physical standard form with n in [0.5, n_max] and
// 0 <= c < sqrt(n^2 - 1/4).
inline StandardForm random_symmetric(std::mt19937_64& rng, double n_max = 5.0) {
  const double n = uniform(rng, 0.5, n_max);
  const double c = uniform(rng, 0.0, 1.0) * std::sqrt(n * n - 0.25);
  return {n, n, c, -c};
}

inline Eigen::Matrix2d rotation(double theta) {
  Eigen::Matrix2d r;
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}

inline Eigen::Matrix4d local(const Eigen::Matrix2d& a, const Eigen::Matrix2d& b) {
  Eigen::Matrix4d s = Eigen::Matrix4d::Zero();
  s.topLeftCorner<2, 2>() = a;
  s.bottomRightCorner<2, 2>() = b;
  return s;
}

inline Eigen::Matrix4d beam_splitter(double angle) {
  Eigen::Matrix4d s = Eigen::Matrix4d::Zero();
  const double c = std::cos(angle);
  const double t = std::sin(angle);
  s.topLeftCorner<2, 2>() = c * Eigen::Matrix2d::Identity();
  s.topRightCorner<2, 2>() = t * Eigen::Matrix2d::Identity();
  s.bottomLeftCorner<2, 2>() = -t * Eigen::Matrix2d::Identity();
  s.bottomRightCorner<2, 2>() = c * Eigen::Matrix2d::Identity();
  return s;
}

inline Eigen::Matrix4d two_mode_squeezer(double r) {
  Eigen::Matrix4d s = Eigen::Matrix4d::Zero();
  const Eigen::Matrix2d z = Eigen::Vector2d(1.0, -1.0).asDiagonal();
  s.topLeftCorner<2, 2>() = std::cosh(r) * Eigen::Matrix2d::Identity();
  s.bottomRightCorner<2, 2>() = std::cosh(r) * Eigen::Matrix2d::Identity();
  s.topRightCorner<2, 2>() = std::sinh(r) * z;
  s.bottomLeftCorner<2, 2>() = std::sinh(r) * z;
  return s;
}

inline Eigen::Matrix2d squeezer(double r) {
  return Eigen::Vector2d(std::exp(r), std::exp(-r)).asDiagonal();
}

// Copies the upper triangle onto the lower one so the result is exactly
// symmetric as stored.
inline Eigen::Matrix4d symmetrized(const Eigen::Matrix4d& m) {
  Eigen::Matrix4d out = m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < r; ++c) out(r, c) = out(c, r);
  return out;
}

inline CovarianceMatrix congruence(const Eigen::Matrix4d& s, const CovarianceMatrix& cm) {
  return CovarianceMatrix(symmetrized(s * cm.entries() * s.transpose()));
}

// Williamson construction: thermal symplectic spectrum (nu1, nu2) >= 1/2
// dressed with random passive and active symplectics.
inline CovarianceMatrix random_physical(std::mt19937_64& rng) {
  const double nu1 = uniform(rng, 0.5, 2.0);
  const double nu2 = uniform(rng, 0.5, 2.0);
  const Eigen::Matrix4d thermal = Eigen::Vector4d(nu1, nu1, nu2, nu2).asDiagonal();
  const Eigen::Matrix4d s =
      local(rotation(uniform(rng, 0, 6.3)), rotation(uniform(rng, 0, 6.3))) *
      local(squeezer(uniform(rng, -0.6, 0.6)), squeezer(uniform(rng, -0.6, 0.6))) *
      two_mode_squeezer(uniform(rng, 0.0, 1.2)) * beam_splitter(uniform(rng, 0.0, 1.6)) *
      local(rotation(uniform(rng, 0, 6.3)), rotation(uniform(rng, 0, 6.3)));
  return CovarianceMatrix(symmetrized(s * thermal * s.transpose()));
}

// Two-mode symplectic form for the ordering (X_a, Y_a, X_b, Y_b).
inline Eigen::Matrix4d symplectic_form() {
  Eigen::Matrix4d omega = Eigen::Matrix4d::Zero();
  omega(0, 1) = omega(2, 3) = 1.0;
  omega(1, 0) = omega(3, 2) = -1.0;
  return omega;
}

// Smallest eigenvalue of sigma + (i/2) Omega; non-negative iff the matrix is
// a bona fide covariance matrix.
inline double uncertainty_min_eigenvalue(const Eigen::Matrix4d& sigma) {
  const Eigen::Matrix4cd h =
      sigma.cast<std::complex<double>>() +
      std::complex<double>(0.0, 0.5) * symplectic_form().cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

}  // namespace cvbell::testing
