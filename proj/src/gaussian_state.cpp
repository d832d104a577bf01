#include "cvbell/gaussian_state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "cvbell/error.hpp"

namespace cvbell {
namespace {

bool close(double a, double b, double scale, Tolerance tol) {
  return std::abs(a - b) <= tol.relative * scale;
}

void require_symmetric(const StandardForm& sf, Tolerance tol) {
  if (!sf.is_symmetric(tol)) {
    throw UnsupportedShape(fmt::format(
        "defined on the symmetric family only (got n={}, m={}, c1={}, c2={})", sf.n, sf.m,
        sf.c1, sf.c2));
  }
}

// Inverse square root of a 2x2 symmetric positive-definite block:
// sqrt(A) = (A + sqrt(det A) Id) / sqrt(tr A + 2 sqrt(det A)).
Eigen::Matrix2d inverse_sqrt(const Eigen::Matrix2d& a) {
  const double s = std::sqrt(a.determinant());
  const double t = std::sqrt(a.trace() + 2.0 * s);
  const Eigen::Matrix2d root = (a + s * Eigen::Matrix2d::Identity()) / t;
  return root.inverse();
}

bool block_positive_definite(const Eigen::Matrix2d& b) {
  return b(0, 0) > 0.0 && b.determinant() > 0.0;
}

// Singular values of a 2x2 matrix, largest first.
std::pair<double, double> singular_values(const Eigen::Matrix2d& g) {
  const double sum = std::hypot(g(0, 0) + g(1, 1), g(0, 1) - g(1, 0));
  const double diff = std::hypot(g(0, 0) - g(1, 1), g(0, 1) + g(1, 0));
  return {(sum + diff) / 2.0, std::abs(sum - diff) / 2.0};
}

}  // namespace

bool StandardForm::is_symmetric(Tolerance tol) const {
  const double scale = std::max({std::abs(n), std::abs(m), 1.0});
  return close(n, m, scale, tol) && close(c1, -c2, scale, tol);
}

CovarianceMatrix::CovarianceMatrix(const Matrix& entries) : entries_(entries) {
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      if (!std::isfinite(entries_(r, c))) {
        throw MalformedMatrix(fmt::format("entry ({}, {}) is not finite", r, c));
      }
      if (entries_(r, c) != entries_(c, r)) {
        throw MalformedMatrix(fmt::format("matrix is not symmetric: ({0}, {1}) = {2} but ({1}, {0}) = {3}",
                                          r, c, entries_(r, c), entries_(c, r)));
      }
    }
  }
}

CovarianceMatrix CovarianceMatrix::vacuum() {
  return CovarianceMatrix(Matrix::Identity() * kVacuumVariance);
}

CovarianceMatrix CovarianceMatrix::from_standard_form(const StandardForm& sf) {
  Matrix m = Matrix::Zero();
  m(0, 0) = m(1, 1) = sf.n;
  m(2, 2) = m(3, 3) = sf.m;
  m(0, 2) = m(2, 0) = sf.c1;
  m(1, 3) = m(3, 1) = sf.c2;
  return CovarianceMatrix(m);
}

SymplecticInvariants symplectic_invariants(const CovarianceMatrix& cm) {
  SymplecticInvariants inv;
  inv.i1 = cm.alpha().determinant();
  inv.i2 = cm.beta().determinant();
  inv.i3 = cm.gamma().determinant();
  inv.i4 = cm.determinant();
  inv.delta = inv.i1 + inv.i2 + 2.0 * inv.i3;

  const Eigen::LLT<Eigen::Matrix4d> llt(cm.entries());
  if (llt.info() == Eigen::Success) {
    // L^T Omega L is antisymmetric and similar to Omega sigma up to a factor i,
    // so (L^T Omega L)^T (L^T Omega L) is symmetric with eigenvalues d_-^2, d_-^2,
    // d_+^2, d_+^2. This stays well conditioned where d_- = d_+, unlike the
    // quadratic in the invariants.
    Eigen::Matrix4d omega = Eigen::Matrix4d::Zero();
    omega(0, 1) = omega(2, 3) = 1.0;
    omega(1, 0) = omega(3, 2) = -1.0;
    const Eigen::Matrix4d l = llt.matrixL();
    const Eigen::Matrix4d a = l.transpose() * omega * l;
    const Eigen::Vector4d ev =
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d>(a.transpose() * a, Eigen::EigenvaluesOnly)
            .eigenvalues();
    inv.d_minus = std::sqrt(std::max(0.0, 0.5 * (ev(0) + ev(1))));
    inv.d_plus = std::sqrt(std::max(0.0, 0.5 * (ev(2) + ev(3))));
    return inv;
  }

  // Not positive definite: fall back to the quadratic in the invariants.
  const double disc = inv.delta * inv.delta - 4.0 * inv.i4;
  if (disc < 0.0) {
    inv.d_minus = inv.d_plus = std::numeric_limits<double>::quiet_NaN();
    return inv;
  }
  const double root = std::sqrt(disc);
  inv.d_plus = std::sqrt((inv.delta + root) / 2.0);
  // (delta - root) / 2 rewritten as 2 i4 / (delta + root) to avoid cancellation.
  const double lower = inv.delta + root > 0.0 ? 2.0 * inv.i4 / (inv.delta + root)
                                              : std::numeric_limits<double>::quiet_NaN();
  inv.d_minus = lower >= 0.0 ? std::sqrt(lower) : std::numeric_limits<double>::quiet_NaN();
  return inv;
}

PhysicalityReport is_physical(const CovarianceMatrix& cm, Tolerance tol) {
  const SymplecticInvariants inv = symplectic_invariants(cm);
  PhysicalityReport report;
  report.positive_definite = cm.entries().llt().info() == Eigen::Success;
  report.d_minus = inv.d_minus;
  report.uncertainty_lhs = inv.delta;
  report.uncertainty_rhs = 4.0 * inv.i4 + 0.25;
  report.uncertainty_inequality_holds = report.uncertainty_lhs <= report.uncertainty_rhs;
  report.physical = report.positive_definite && std::isfinite(inv.d_minus) &&
                    inv.d_minus >= kVacuumVariance * (1.0 - tol.relative);
  return report;
}

double purity(const CovarianceMatrix& cm, Tolerance tol) {
  if (!is_physical(cm, tol).physical) {
    throw DomainError("purity is defined for physical states only");
  }
  const SymplecticInvariants inv = symplectic_invariants(cm);
  const double mu = 1.0 / (4.0 * inv.d_minus * inv.d_plus);
  if (std::abs(mu - 1.0) <= 2.0 * tol.relative) return 1.0;
  return mu;
}

StandardForm standard_form(const CovarianceMatrix& cm, Tolerance tol) {
  const Eigen::Matrix2d alpha = cm.alpha();
  const Eigen::Matrix2d beta = cm.beta();
  if (!block_positive_definite(alpha) || !block_positive_definite(beta)) {
    throw InconsistentInvariants("local blocks must be positive definite");
  }
  const SymplecticInvariants inv = symplectic_invariants(cm);

  StandardForm sf;
  sf.n = std::sqrt(inv.i1);
  sf.m = std::sqrt(inv.i2);

  // Local symplectics sqrt(n) alpha^{-1/2} and sqrt(m) beta^{-1/2} bring the
  // diagonal blocks to n Id and m Id; the remaining freedom is a pair of
  // local rotations, which diagonalize gamma to its singular values.
  const Eigen::Matrix2d normalized =
      std::sqrt(sf.n * sf.m) * inverse_sqrt(alpha) * cm.gamma() * inverse_sqrt(beta);
  const auto [largest, smallest] = singular_values(normalized);
  sf.c1 = largest;
  sf.c2 = inv.i3 > 0.0 ? smallest : -smallest;
  if (sf.c2 == 0.0) sf.c2 = 0.0;  // drop a negative zero

  const double nm = sf.n * sf.m;
  const double i4 = (nm - sf.c1 * sf.c1) * (nm - sf.c2 * sf.c2);
  const double scale = std::max(nm * nm, kPureDeterminant);
  if (std::abs(i4 - inv.i4) > std::max(tol.relative, 1e-10) * scale) {
    throw InconsistentInvariants(
        fmt::format("no standard form reproduces det sigma = {} (got {})", inv.i4, i4));
  }
  return sf;
}

StandardForm pure_symmetric_state(double n) {
  if (!(n >= kVacuumVariance)) {
    throw DomainError(fmt::format("pure symmetric state requires n >= 1/2 (got {})", n));
  }
  const double c = std::sqrt((n - 0.5) * (n + 0.5));
  return StandardForm{n, n, c, -c};
}

double single_mode_purity(const StandardForm& sf, Tolerance tol) {
  require_symmetric(sf, tol);
  return 1.0 / (2.0 * sf.n);
}

double correlation_coefficient(const StandardForm& sf, Tolerance tol) {
  require_symmetric(sf, tol);
  return sf.c1 / sf.n;
}

}  // namespace cvbell
